#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "core/complexio.hpp"
#include "core/error.hpp"
#include "core/expr.hpp"
#include "core/special_functions.hpp"
#include "core/util.hpp"

using namespace merodiff;

namespace {

constexpr double kPi = std::numbers::pi;

Expr parse(const std::string& s) { return parse_expression(s); }

Cplx value(const Expr& e, Cplx z) {
  const EvalOutcome r = eval(e, z);
  REQUIRE(r.ok());
  return r.value;
}

// Central finite difference, the independent oracle for derivative checks.
Cplx finite_difference(const Expr& e, Cplx z, double h) {
  return (value(e, z + Cplx(h, 0.0)) - value(e, z - Cplx(h, 0.0))) / (2.0 * h);
}

// Deterministic pseudo-random points in a disk.
std::vector<Cplx> random_points(std::size_t n, double radius, std::uint64_t seed) {
  std::uint64_t st = seed;
  std::vector<Cplx> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = uniform01(st) * 2.0 * kPi;
    const double r = radius * std::sqrt(uniform01(st));
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return pts;
}

}  // namespace

TEST_CASE("complex literal parsing and formatting") {
  CHECK(parse_complex("2") == Cplx(2, 0));
  CHECK(parse_complex("-1.5i") == Cplx(0, -1.5));
  CHECK(parse_complex("3+4i") == Cplx(3, 4));
  CHECK(parse_complex("3 - 4i") == Cplx(3, -4));
  CHECK(parse_complex("1e-3-2e5i") == Cplx(1e-3, -2e5));
  CHECK(parse_complex("i") == Cplx(0, 1));
  CHECK(parse_complex("-i") == Cplx(0, -1));
  CHECK_THROWS_AS(parse_complex("foo"), ParseError);
  for (Cplx z : {Cplx(1.25, -3.5), Cplx(0, 2), Cplx(-7, 0), Cplx(0, 0)}) {
    CHECK(parse_complex(format_complex(z)) == z);
    CHECK(parse_complex(format_complex_short(z)) == z);
  }
}

TEST_CASE("parse builds the expected shapes") {
  Expr e = parse("exp(z)");
  CHECK(e->kind == NodeKind::Exp);
  CHECK(e->a->kind == NodeKind::Var);

  e = parse("2*z + 3i");
  CHECK(e->kind == NodeKind::Add);
  CHECK(e->a->kind == NodeKind::Mul);
  CHECK(e->a->a->value == Cplx(2, 0));
  CHECK(e->a->b->kind == NodeKind::Var);
  CHECK(e->b->value == Cplx(0, 3));

  e = parse("tan(pi*z)");
  CHECK(e->kind == NodeKind::Tan);
  CHECK(e->a->kind == NodeKind::Mul);
  CHECK(e->a->a->value == Cplx(kPi, 0));

  CHECK_THROWS_AS(parse("2*"), ParseError);
  CHECK_THROWS_AS(parse("bogus(z)"), ParseError);
  CHECK_THROWS_AS(parse("(z"), ParseError);
  // error position is reported
  try {
    parse("z + qq");
    FAIL("expected ParseError");
  } catch (const ParseError& pe) {
    CHECK(pe.position() == 4);
  }
}

TEST_CASE("eval basics and flags") {
  CHECK(value(parse("exp(z)"), 0.0) == Cplx(1, 0));
  CHECK(std::abs(value(parse("gamma(z)"), 5.0) - Cplx(24, 0)) < 1e-10);

  const EvalOutcome pole = eval(parse("tan(pi*z)"), Cplx(0.5, 0.0));
  CHECK(pole.pole);

  const EvalOutcome div0 = eval(parse("1/z"), Cplx(0, 0));
  CHECK(div0.pole);

  const EvalOutcome big = eval(parse("exp(exp(z))"), Cplx(10, 0));
  CHECK(big.overflow);

  // gamma poles at nonpositive integers
  CHECK(eval(parse("gamma(z)"), Cplx(-3, 0)).pole);
  CHECK(eval(parse("digamma(z)"), Cplx(0, 0)).pole);
}

TEST_CASE("special function spot values") {
  CHECK(std::abs(complex_gamma(Cplx(0.5, 0)) - std::sqrt(kPi)) < 1e-12);
  // gamma(1+i) from standard tables
  const Cplx g1i = complex_gamma(Cplx(1, 1));
  CHECK(std::abs(g1i - Cplx(0.49801566811835607, -0.15494982830181069)) < 1e-12);
  // psi(1) = -EulerGamma
  CHECK(std::abs(complex_digamma(Cplx(1, 0)) - Cplx(-0.57721566490153286, 0)) < 1e-12);
  // psi'(1) = pi^2/6
  CHECK(std::abs(complex_polygamma(1, Cplx(1, 0)) - Cplx(kPi * kPi / 6.0, 0)) < 1e-11);
  // reflection zone
  CHECK(std::abs(complex_gamma(Cplx(-0.5, 0)) - (-2.0 * std::sqrt(kPi))) < 1e-11);
}

TEST_CASE("derivative matches finite differences") {
  // d/dz exp(2z) = 2 exp(2z)
  Expr f = parse("exp(2*z)");
  Expr df = derivative(f);
  for (Cplx z : {Cplx(0.3, 0.1), Cplx(-1, 0.5), Cplx(2, -1)}) {
    CHECK(std::abs(value(df, z) - 2.0 * value(f, z)) < 1e-12 * std::abs(value(f, z)));
    CHECK(std::abs(value(df, z) - finite_difference(f, z, 1e-5)) < 1e-7 * (1 + std::abs(value(df, z))));
  }

  // d/dz gamma(z) = gamma(z) digamma(z), checked against the FD oracle at 5
  Expr g = parse("gamma(z)");
  Expr dg = derivative(g);
  const Cplx at5 = value(dg, 5.0);
  const Cplx fd = finite_difference(g, 5.0, 1e-5);
  CHECK(std::abs(at5 - fd) < 1e-5 * std::abs(at5));
  CHECK(std::abs(at5 - value(g, 5.0) * complex_digamma(5.0)) < 1e-10 * std::abs(at5));

  // digamma differentiates through the polygamma ladder
  Expr dd = derivative(parse("digamma(z)"));
  CHECK(std::abs(value(dd, 3.0) - finite_difference(parse("digamma(z)"), 3.0, 1e-5)) < 1e-7);

  // constants
  CHECK(derivative(parse("42"))->value == Cplx(0, 0));

  // chain through pow with non-integer exponent
  Expr p = parse("pow(z, 2.5)");
  CHECK(std::abs(value(derivative(p), 2.0) - finite_difference(p, 2.0, 1e-6)) < 1e-6);
}

TEST_CASE("shift substitutes the variable") {
  CHECK(value(shift(parse("z^2"), 1.0), 2.0) == Cplx(9, 0));
  CHECK(std::abs(value(shift(parse("exp(z)"), 1.0), 0.0) - std::exp(1.0)) < 1e-15);

  // f(z) = exp(z ln5 / w) exp(2 pi i z / w), w a nonreal cube root of unity:
  // f(z + w) = 5 f(z)
  const Cplx omega = std::polar(1.0, 2.0 * kPi / 3.0);
  Expr zvar = make_var();
  Expr f = make_mul(
      make_unary(NodeKind::Exp, make_mul(zvar, make_const(std::log(5.0) / omega))),
      make_unary(NodeKind::Exp, make_mul(zvar, make_const(Cplx(0, 2.0 * kPi) / omega))));
  Expr fs = shift(f, omega);
  for (Cplx z : random_points(20, 5.0, 77)) {
    const Cplx lhs = value(fs, z);
    const Cplx rhs = 5.0 * value(f, z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("shift homomorphism: shift(shift(e,a),b) == shift(e,a+b)") {
  const std::vector<Expr> corpus = {
      parse("exp(z)*sin(z)"), parse("z^3 - 2*z + 1"), parse("cos(2*z)/(z+10)"),
      parse("exp(z^2/10)"),
  };
  const Cplx a(0.7, -0.2), b(-1.3, 0.4);
  for (const Expr& e : corpus) {
    Expr two_step = shift(shift(e, a), b);
    Expr one_step = shift(e, a + b);
    for (Cplx z : random_points(100, 3.0, 1234)) {
      const EvalOutcome u = eval(two_step, z), v = eval(one_step, z);
      if (!u.ok() || !v.ok()) continue;
      CHECK(std::abs(u.value - v.value) <= 1e-10 * (1.0 + std::abs(v.value)));
    }
  }
}

TEST_CASE("derivative is linear") {
  Expr e1 = parse("exp(z)*cos(z)");
  Expr e2 = parse("z^4/(z^2+4)");
  const Cplx a(2.0, 1.0), b(-0.5, 3.0);
  Expr combo = make_add(make_mul(make_const(a), e1), make_mul(make_const(b), e2));
  Expr lhs = derivative(combo);
  Expr rhs = make_add(make_mul(make_const(a), derivative(e1)),
                      make_mul(make_const(b), derivative(e2)));
  for (Cplx z : random_points(100, 3.0, 99)) {
    const EvalOutcome u = eval(lhs, z), v = eval(rhs, z);
    if (!u.ok() || !v.ok()) continue;
    CHECK(std::abs(u.value - v.value) <= 1e-10 * (1.0 + std::abs(v.value)));
  }
}

TEST_CASE("print -> parse round trip on a 50-expression corpus") {
  const std::vector<std::string> corpus = {
      "z", "i", "pi", "e", "42", "3.5", "2e-3", "1+2i", "-z", "z+1", "z-1", "2*z", "z/2",
      "z^2", "z^-2", "z^0.5", "sqrt(z)", "exp(z)", "log(z)", "sin(z)", "cos(z)", "tan(z)",
      "gamma(z)", "digamma(z)", "polygamma(1,z)", "polygamma(2,z+1)", "exp(2*z)",
      "tan(pi*z)", "2*z+3i", "(z+1)*(z-1)", "z^2-5*z+6", "1/(z-1)", "(z^2+1)/(z-1)",
      "exp(z*log(2))", "exp(2*pi*i*z)", "sin(2*pi*z)/(cos(2*pi*z)-1)", "z*exp(-z)",
      "exp(z)/(exp(2*pi*i*z)-1)", "pow(z,2.5)", "z^z", "exp(z^2)", "-(z+1)",
      "z--2", "z*(-3)", "(1-2i)*z^3", "gamma(z+1)-z*gamma(z)", "sin(z)^2",
      "1/z^2", "exp((z^2-1)/2)", "tan(pi*z)+z",
  };
  CHECK(corpus.size() == 50);
  for (const auto& text : corpus) {
    CAPTURE(text);
    Expr e = parse(text);
    const std::string printed = print_expression(e);
    CAPTURE(printed);
    Expr back = parse(printed);
    CHECK(structurally_equal(e, back));
    // and print is a fixpoint from the first print onward
    CHECK(print_expression(back) == printed);
    for (Cplx z : random_points(8, 2.0, 4321)) {
      const EvalOutcome u = eval(e, z), v = eval(back, z);
      REQUIRE(u.pole == v.pole);
      REQUIRE(u.overflow == v.overflow);
      if (u.ok()) CHECK(std::abs(u.value - v.value) <= 1e-12 * (1.0 + std::abs(u.value)));
    }
  }
}

TEST_CASE("principal branch: pow(rho, z/c) is exactly exp((z/c) log rho)") {
  const Cplx rho(2.0, 0.5), c(1.0, -0.7);
  Expr zc = make_div(make_var(), make_const(c));
  Expr via_pow = make_pow(make_const(rho), zc);
  Expr via_exp = make_unary(NodeKind::Exp, make_mul(zc, make_unary(NodeKind::Log, make_const(rho))));
  for (Cplx z : random_points(50, 6.0, 5)) {
    const Cplx u = value(via_pow, z), v = value(via_exp, z);
    CHECK(u == v);  // identical floating-point route, bit-for-bit
  }
}

TEST_CASE("division by literal zero is rejected at construction") {
  CHECK_THROWS_AS(make_div(make_var(), make_const(0.0)), Error);
  CHECK_THROWS_AS(parse("z/0"), Error);
}

TEST_CASE("log magnitude evaluation tracks huge growth") {
  // |exp(z^2)| at z = 200: log|f| = Re(z^2) = 40000
  Expr f = parse("exp(z^2)");
  const LogAbsOutcome r = log_magnitude(f, Cplx(200.0, 0.0));
  REQUIRE(r.ok());
  CHECK(r.log_abs == doctest::Approx(40000.0).epsilon(1e-12));

  // ratio of two huge magnitudes stays precise:
  // exp((z+1)^2)/exp(z^2) = exp(2z+1), log = 2*200+1
  Expr ratio = parse("exp((z+1)^2)/exp(z^2)");
  const LogAbsOutcome r2 = log_magnitude(ratio, Cplx(200.0, 0.0));
  REQUIRE(r2.ok());
  CHECK(r2.log_abs == doctest::Approx(401.0).epsilon(1e-10));

  // plain eval would overflow on the same input
  CHECK(eval(parse("exp((z+1)^2)"), Cplx(200.0, 0.0)).overflow);

  // scaled gamma via Stirling: log|gamma(200.5)| checked against lgamma
  const LogAbsOutcome g = log_magnitude(parse("gamma(z)"), Cplx(200.5, 0.0));
  CHECK(g.log_abs == doctest::Approx(std::lgamma(200.5)).epsilon(1e-12));
}
