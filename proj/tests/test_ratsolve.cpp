#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/ratsolve.hpp"
#include "core/sampling.hpp"
#include "core/util.hpp"

using namespace merodiff;

namespace {

RatPoly P(std::vector<long> coeffs) {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return RatPoly(std::move(c));
}

// (z+3) f(z+2) + (z+2)^2 f(z+1) + (z^2-1) f(z) = 2z^2+3z+4, solution z/(z+1).
PolynomialRecurrence worked_rational_example() {
  return PolynomialRecurrence({P({-1, 0, 1}), P({4, 4, 1}), P({3, 1})}, P({4, 3, 2}), Rat(1));
}

// ---- independent test-side solver (plain rational Gauss-Jordan) ------------

struct TinySystem {
  std::vector<std::vector<Rat>> M;
  std::vector<Rat> b;
};

// Returns one solution and a kernel basis, or nothing when inconsistent.
std::optional<std::pair<std::vector<Rat>, std::vector<std::vector<Rat>>>> tiny_solve(
    TinySystem sys) {
  const std::size_t rows = sys.M.size(), cols = rows ? sys.M[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && sys.M[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(sys.M[sel], sys.M[r]);
    std::swap(sys.b[sel], sys.b[r]);
    const Rat inv = Rat(1) / sys.M[r][c];
    for (auto& x : sys.M[r]) x *= inv;
    sys.b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sys.M[i][c] == 0) continue;
      const Rat k = sys.M[i][c];
      for (std::size_t j = 0; j < cols; ++j) sys.M[i][j] -= k * sys.M[r][j];
      sys.b[i] -= k * sys.b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sys.b[i] != 0) return std::nullopt;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Rat> part(cols, Rat(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) part[pivots[k]] = sys.b[k];
  std::vector<std::vector<Rat>> kernel;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = Rat(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -sys.M[k][c];
    kernel.push_back(std::move(v));
  }
  return std::make_pair(part, kernel);
}

// Solves for a polynomial numerator of degree <= dmax over a fixed
// denominator by matching coefficients; the brute-force oracle.
std::optional<std::pair<RatPoly, std::vector<RatPoly>>> numerators_over(
    const PolynomialRecurrence& rec, const RatPoly& den, int dmax) {
  const int n = rec.order();
  std::vector<RatPoly> shifted_den(n + 1);
  RatPoly common = RatPoly::constant(Rat(1));
  for (int j = 0; j <= n; ++j) {
    shifted_den[j] = den.taylor_shift(Rat(j));
    common = common * shifted_den[j];
  }
  std::vector<RatPoly> images(dmax + 1);
  int maxdeg = 0;
  const RatPoly rhsC = rec.rhs * common;
  maxdeg = rhsC.degree();
  for (int i = 0; i <= dmax; ++i) {
    RatPoly img;
    for (int j = 0; j <= n; ++j) {
      RatPoly zi = RatPoly::constant(Rat(1));
      for (int t = 0; t < i; ++t) zi = zi * P({j, 1});
      img = img + rec.coeffs[j] * zi * common.divrem(shifted_den[j]).first;
    }
    images[i] = img;
    maxdeg = std::max(maxdeg, img.degree());
  }
  TinySystem sys;
  sys.M.assign(static_cast<std::size_t>(maxdeg + 1), std::vector<Rat>(dmax + 1, Rat(0)));
  sys.b.assign(static_cast<std::size_t>(maxdeg + 1), Rat(0));
  for (int i = 0; i <= dmax; ++i)
    for (int d = 0; d <= images[i].degree(); ++d) sys.M[d][i] = images[i].coeff(d);
  for (int d = 0; d <= rhsC.degree(); ++d) sys.b[d] = rhsC.coeff(d);
  auto sol = tiny_solve(std::move(sys));
  if (!sol) return std::nullopt;
  std::vector<RatPoly> kernel;
  for (auto& v : sol->second) {
    RatPoly q(v);
    if (!q.is_zero()) kernel.push_back(q);
  }
  return std::make_pair(RatPoly(sol->first), kernel);
}

// rational function difference a - b, reduced
RationalFunction rf_sub(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num * b.den - b.num * a.den, a.den * b.den);
}

// membership of h in span{basis} over the rationals, checked exactly by
// clearing denominators and matching coefficients
bool in_span(const RationalFunction& h, const std::vector<RationalFunction>& basis) {
  if (h.is_zero()) return true;
  if (basis.empty()) return false;
  RatPoly common = h.den;
  for (const auto& b : basis) common = poly_lcm(common, b.den);
  const RatPoly hN = h.num * common.divrem(h.den).first;
  std::vector<RatPoly> bN;
  int maxdeg = hN.degree();
  for (const auto& b : basis) {
    bN.push_back(b.num * common.divrem(b.den).first);
    maxdeg = std::max(maxdeg, bN.back().degree());
  }
  TinySystem sys;
  sys.M.assign(static_cast<std::size_t>(maxdeg + 1), std::vector<Rat>(basis.size(), Rat(0)));
  sys.b.assign(static_cast<std::size_t>(maxdeg + 1), Rat(0));
  for (std::size_t i = 0; i < bN.size(); ++i)
    for (int d = 0; d <= bN[i].degree(); ++d) sys.M[d][i] = bN[i].coeff(d);
  for (int d = 0; d <= hN.degree(); ++d) sys.b[d] = hN.coeff(d);
  return tiny_solve(std::move(sys)).has_value();
}

}  // namespace

TEST_CASE("dispersion sets") {
  CHECK(dispersion_set(P({0, 1}), P({-3, 1})) == std::set<long>{3});
  CHECK(dispersion_set(P({-1, 0, 1}), P({0, 1})) == std::set<long>{1});
  CHECK(dispersion_set(P({1, 0, 1}), P({0, 1})).empty());
  // multiple alignments: p = z(z-5), q = z-5  ->  {0, 5}
  CHECK(dispersion_set(P({0, -5, 1}), P({-5, 1})) == std::set<long>{0, 5});
  CHECK_THROWS_AS(dispersion_set(RatPoly{}, P({1})), Error);
}

TEST_CASE("universal denominator") {
  SUBCASE("paper rational example: (z+1) divides u") {
    const RatPoly u = universal_denominator(worked_rational_example());
    CHECK(u == P({0, -1, 0, 1}));  // z^3 - z = (z+1) z (z-1)
    CHECK(u.divrem(P({1, 1})).second.is_zero());
  }
  SUBCASE("coprime leading/trailing at all shifts: u = 1") {
    const PolynomialRecurrence rec({P({1, 0, 1}), P({1})}, P({}), Rat(1));
    CHECK(universal_denominator(rec) == P({1}));
  }
  SUBCASE("first difference: u = 1") {
    const PolynomialRecurrence rec({P({-1}), P({1})}, P({}), Rat(1));
    CHECK(universal_denominator(rec) == P({1}));
  }
}

TEST_CASE("polynomial solutions") {
  SUBCASE("telescoping: f(z+1) - f(z) = 1") {
    const PolynomialRecurrence rec({P({-1}), P({1})}, P({1}), Rat(1));
    const PolySolutionSet s = polynomial_solutions(rec);
    REQUIRE(s.particular.has_value());
    // particular is z up to an additive constant from the kernel
    REQUIRE(s.basis.size() == 1);
    CHECK(s.basis[0].degree() == 0);
    const RatPoly diff = s.particular->taylor_shift(Rat(1)) - *s.particular;
    CHECK(diff == P({1}));
  }
  SUBCASE("f(z+1) - 2 f(z) = 0: only the zero polynomial") {
    const PolynomialRecurrence rec({P({-2}), P({1})}, P({}), Rat(1));
    const PolySolutionSet s = polynomial_solutions(rec);
    REQUIRE(s.particular.has_value());
    CHECK(s.particular->is_zero());
    CHECK(s.basis.empty());
  }
  SUBCASE("factorial growth: f(z+1) - z f(z) = 0 has no nonzero polynomial") {
    const PolynomialRecurrence rec({P({0, -1}), P({1})}, P({}), Rat(1));
    const PolySolutionSet s = polynomial_solutions(rec);
    REQUIRE(s.particular.has_value());
    CHECK(s.particular->is_zero());
    CHECK(s.basis.empty());
  }
}

TEST_CASE("rational solutions: worked second-order example") {
  const RationalSolutionSet s = rational_solutions(worked_rational_example());
  REQUIRE(s.particular.has_value());
  CHECK(s.particular->num == P({0, 1}));  // z
  CHECK(s.particular->den == P({1, 1}));  // z + 1
  CHECK(s.particular->to_pretty() == "z/(z+1)");
  CHECK(s.basis.empty());
  REQUIRE(s.certificate.has_value());
  CHECK(s.certificate->residual.is_zero());
  CHECK_FALSE(s.certificate->rhs_times_common.is_zero());
}

TEST_CASE("rational solutions: second-order equation with zero coefficient sum") {
  // f(z+2) + z^2 f(z+1) - (z^2+1) f(z) = 0: the transcendental solution is
  // tan(pi z), but constants solve it too since the coefficients sum to 0.
  const PolynomialRecurrence rec({P({-1, 0, -1}), P({0, 0, 1}), P({1})}, P({}), Rat(1));
  const RationalSolutionSet s = rational_solutions(rec);
  REQUIRE(s.particular.has_value());
  CHECK(s.particular->is_zero());
  REQUIRE(s.basis.size() == 1);
  CHECK(s.basis[0].num == P({1}));
  CHECK(s.basis[0].den.degree() == 0);
  CHECK(s.basis_certificates[0].residual.is_zero());

  // inhomogeneous variant with rhs z^2 + 2: f = z is a particular solution
  const PolynomialRecurrence inhom({P({-1, 0, -1}), P({0, 0, 1}), P({1})}, P({2, 0, 1}), Rat(1));
  const RationalSolutionSet t = rational_solutions(inhom);
  REQUIRE(t.particular.has_value());
  // particular may include a kernel offset; strip it using the basis
  const RationalFunction z_sol(P({0, 1}), P({1}));
  CHECK(in_span(rf_sub(*t.particular, z_sol), t.basis));
}

TEST_CASE("rational solutions: constants for the plain difference") {
  const PolynomialRecurrence rec({P({-1}), P({1})}, P({}), Rat(1));
  const RationalSolutionSet s = rational_solutions(rec);
  REQUIRE(s.basis.size() == 1);
  CHECK(s.basis[0].num == P({1}));
}

TEST_CASE("general step solves through the substitution z = eta w") {
  // step-2 version of the worked example; the solution becomes z/(z+2)
  const Rat half(1, 2);
  std::vector<RatPoly> coeffs = {
      P({-1, 0, 1}).scale_argument(half),  // (z/2)^2 - 1
      P({4, 4, 1}).scale_argument(half),   // (z/2+2)^2
      P({3, 1}).scale_argument(half),      // z/2 + 3
  };
  const PolynomialRecurrence rec(std::move(coeffs), P({4, 3, 2}).scale_argument(half), Rat(2));
  const RationalSolutionSet s = rational_solutions(rec);
  REQUIRE(s.particular.has_value());
  CHECK(s.particular->num == P({0, 1}));
  CHECK(s.particular->den == P({2, 1}));  // z + 2

  // numeric spot-check of the original eta-step equation
  int checked = 0;
  for (Cplx z : disk_samples(80, 4.0, 7)) {
    bool near_pole = false;
    for (int j = 0; j <= rec.order(); ++j) {
      const Cplx zj = z + 2.0 * j;
      if (std::abs(s.particular->den.eval(zj)) < 1e-3) near_pole = true;
    }
    if (near_pole) continue;
    Cplx lhs{0, 0};
    for (int j = 0; j <= rec.order(); ++j)
      lhs += rec.coeffs[j].eval(z) * s.particular->eval(z + 2.0 * j);
    const Cplx rhs = rec.rhs.eval(z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    if (++checked >= 50) break;
  }
  CHECK(checked >= 50);
}

TEST_CASE("every emitted solution passes exact substitution") {
  // randomized corpus with planted rational solutions f = p/q
  std::uint64_t st = 424242;
  int planted_found = 0;
  for (int iter = 0; iter < 20; ++iter) {
    CAPTURE(iter);
    // denominator from small integer roots, numerator random
    const long r1 = static_cast<long>(splitmix64(st) % 5) - 2;
    const long r2 = static_cast<long>(splitmix64(st) % 7) - 3;
    RatPoly q = P({-r1, 1});
    if (iter % 2 == 0) q = q * P({-r2, 1});
    std::vector<Rat> pc(1 + splitmix64(st) % 3);
    for (auto& x : pc) x = Rat(static_cast<long>(splitmix64(st) % 9) - 4);
    RatPoly p(pc);
    if (p.is_zero()) p = P({1});

    const int n = 1 + static_cast<int>(splitmix64(st) % 2);
    std::vector<RatPoly> b(n + 1);
    RatPoly rhs;
    for (int j = 0; j <= n; ++j) {
      std::vector<Rat> cc(1 + splitmix64(st) % 2);
      for (auto& x : cc) x = Rat(static_cast<long>(splitmix64(st) % 7) - 3);
      RatPoly cj(cc);
      if ((j == 0 || j == n) && cj.is_zero()) cj = P({1});
      b[j] = q.taylor_shift(Rat(j)) * cj;
      rhs = rhs + cj * p.taylor_shift(Rat(j));
    }
    if (b[0].is_zero() || b[n].is_zero()) continue;
    const PolynomialRecurrence rec(b, rhs, Rat(1));
    const RationalSolutionSet s = rational_solutions(rec);

    // internal exactness: certificates are zero residuals by construction
    if (s.certificate) CHECK(s.certificate->residual.is_zero());
    for (const auto& cert : s.basis_certificates) CHECK(cert.residual.is_zero());

    // the planted solution must lie inside the affine set
    const RationalFunction planted(p, q);
    const SubstitutionCertificate pc2 = substitution_certificate(rec, planted);
    REQUIRE(pc2.residual.is_zero());  // sanity of the construction itself
    if (rhs.is_zero()) {
      CHECK(in_span(planted, s.basis));
    } else {
      REQUIRE(s.particular.has_value());
      CHECK(in_span(rf_sub(planted, *s.particular), s.basis));
    }
    ++planted_found;
  }
  CHECK(planted_found >= 15);
}

TEST_CASE("brute force over factor-combination denominators finds nothing extra") {
  std::uint64_t st = 777;
  for (int iter = 0; iter < 6; ++iter) {
    CAPTURE(iter);
    // small recurrences, sometimes with planted solutions
    const long root = static_cast<long>(splitmix64(st) % 5) - 2;
    const RatPoly q = P({-root, 1});
    std::vector<RatPoly> b = {q * P({1}), q.taylor_shift(Rat(1)) * P({1, 1})};
    RatPoly rhs = iter % 2 == 0 ? P({1, 2}) : RatPoly{};
    const PolynomialRecurrence rec(b, rhs, Rat(1));
    const RationalSolutionSet s = rational_solutions(rec);

    // candidate denominators: products (degree <= 3) of shifted linear
    // factors of b_0 and b_n
    std::set<long> roots;
    for (int shift_by = -4; shift_by <= 4; ++shift_by) {
      for (const RatPoly& c : {rec.coeffs.front(), rec.coeffs.back()})
        for (long r : integer_roots(c.taylor_shift(Rat(shift_by)))) roots.insert(r);
    }
    std::vector<RatPoly> factors;
    for (long r : roots) factors.push_back(P({-r, 1}));
    std::vector<RatPoly> candidates = {P({1})};
    for (std::size_t a = 0; a < factors.size(); ++a)
      for (std::size_t bb = a; bb < factors.size(); ++bb) {
        candidates.push_back(factors[a] * factors[bb]);
        for (std::size_t c = bb; c < factors.size(); ++c)
          candidates.push_back(factors[a] * factors[bb] * factors[c]);
      }
    for (const auto& f : factors) candidates.push_back(f);

    for (const auto& den : candidates) {
      const auto found = numerators_over(rec, den, 3);
      if (!found) continue;
      // particular from brute force must live in the solver's affine set
      const RationalFunction bf(found->first, den);
      if (!rhs.is_zero()) {
        REQUIRE(s.particular.has_value());
        CHECK(in_span(rf_sub(bf, *s.particular), s.basis));
      } else {
        CHECK(in_span(bf, s.basis));
      }
      for (const auto& k : found->second) {
        CHECK(in_span(RationalFunction(k, den), s.basis));
      }
    }
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(PolynomialRecurrence({P({1})}, P({}), Rat(1)), Error);
  CHECK_THROWS_AS(PolynomialRecurrence({RatPoly{}, P({1})}, P({}), Rat(1)), Error);
  CHECK_THROWS_AS(PolynomialRecurrence({P({1}), P({1})}, P({}), Rat(0)), Error);
  CHECK_THROWS_AS(RationalFunction(P({1}), RatPoly{}), Error);
}

TEST_CASE("inconsistent systems report no polynomial solution") {
  // z f(z+1) - z f(z) = 1: the image of any polynomial vanishes at z = 0,
  // so the constant right side is unreachable.
  const PolynomialRecurrence rec({P({0, -1}), P({0, 1})}, P({1}), Rat(1));
  const PolySolutionSet s = polynomial_solutions(rec);
  CHECK_FALSE(s.particular.has_value());
  const RationalSolutionSet r = rational_solutions(rec);
  CHECK_FALSE(r.particular.has_value());
}
