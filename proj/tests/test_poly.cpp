#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "core/cpoly.hpp"
#include "core/error.hpp"
#include "core/ratpoly.hpp"
#include "core/util.hpp"

using namespace merodiff;

namespace {

RatPoly P(std::vector<long> coeffs) {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return RatPoly(std::move(c));
}

const RatPoly Z = RatPoly::variable();

RatPoly random_poly(std::uint64_t& st, int max_deg, long coeff_range) {
  const int deg = static_cast<int>(splitmix64(st) % (max_deg + 1));
  std::vector<Rat> c(deg + 1);
  for (auto& x : c) {
    const long num = static_cast<long>(splitmix64(st) % (2 * coeff_range + 1)) - coeff_range;
    const long den = 1 + static_cast<long>(splitmix64(st) % 3);
    x = Rat(num, den);
    x.canonicalize();
  }
  return RatPoly(std::move(c));
}

ComplexPoly expand_factors(const std::vector<std::pair<Cplx, int>>& factors) {
  std::vector<Cplx> c{Cplx(1.0, 0.0)};
  for (const auto& [root, mult] : factors) {
    for (int i = 0; i < mult; ++i) {
      std::vector<Cplx> next(c.size() + 1, Cplx(0.0, 0.0));
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= root * c[j];
      }
      c = std::move(next);
    }
  }
  return ComplexPoly(std::move(c));
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
  // gcd(z^2-1, z+1) = z+1
  CHECK(poly_gcd(P({-1, 0, 1}), P({1, 1})) == P({1, 1}));
  // shift_by_integer(z^2, 1) = z^2 + 2z + 1
  CHECK(P({0, 0, 1}).shift_by_integer(1) == P({1, 2, 1}));
  // divrem(z^2+3z+2, z+1) = (z+2, 0)
  const auto dr = P({2, 3, 1}).divrem(P({1, 1}));
  CHECK(dr.first == P({2, 1}));
  CHECK(dr.second.is_zero());
  CHECK_THROWS_AS(P({1}).divrem(RatPoly{}), Error);

  CHECK(P({1, 2}).eval(Rat(3)) == Rat(7));
  CHECK(P({0, 0, 1}).taylor_shift(Rat(1, 2)) == RatPoly({Rat(1, 4), Rat(1), Rat(1)}));
  CHECK(P({0, 1}).scale_argument(Rat(3)) == P({0, 3}));
  CHECK(P({6, 5, 1}).to_pretty() == "z^2+5*z+6");
  CHECK(P({0, 1}).to_pretty() == "z");
  CHECK((P({1, 1})).to_pretty() == "z+1");
  CHECK(P({-2, 0, 3}).to_pretty() == "3*z^2-2");
  CHECK(RatPoly::from_strings({"3/4", "-1", "2"}) ==
        RatPoly({Rat(3, 4), Rat(-1), Rat(2)}));
  CHECK_THROWS_AS(RatPoly::from_strings({"0.5"}), Error);
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
  std::uint64_t st = 20240817;
  for (int iter = 0; iter < 60; ++iter) {
    const RatPoly a = random_poly(st, 4, 6), b = random_poly(st, 4, 6), c = random_poly(st, 4, 6);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a - a == RatPoly{});
    if (!b.is_zero()) {
      const auto dr = a.divrem(b);
      CHECK(dr.first * b + dr.second == a);
      CHECK((dr.second.is_zero() || dr.second.degree() < b.degree()));
    }
  }
}

TEST_CASE("resultant values and the gcd criterion") {
  CHECK(resultant(P({-1, 1}), P({-1, 1})) == Rat(0));  // common root
  CHECK(resultant(P({0, 1}), P({-3, 1})) == Rat(-3));
  CHECK(resultant(P({-1, 0, 1}), P({0, 1})) == Rat(-1));

  std::uint64_t st = 555;
  int nontrivial = 0;
  for (int iter = 0; iter < 100; ++iter) {
    RatPoly a = random_poly(st, 3, 4), b = random_poly(st, 3, 4);
    if (a.is_zero() || b.is_zero()) continue;
    if (iter % 3 == 0) {
      // plant a common factor
      const RatPoly f = P({static_cast<long>(splitmix64(st) % 7) - 3, 1});
      a = a * f;
      b = b * f;
    }
    if (a.degree() < 1 && b.degree() < 1) continue;
    const bool res_zero = resultant(a, b) == 0;
    const bool gcd_nonconst = poly_gcd(a, b).degree() >= 1;
    CHECK(res_zero == gcd_nonconst);
    if (gcd_nonconst) ++nontrivial;
  }
  CHECK(nontrivial > 10);  // the corpus exercises both sides
}

TEST_CASE("integer roots") {
  auto roots = integer_roots(P({6, -5, 1}));  // z^2-5z+6
  CHECK(roots == std::vector<long>{2, 3});
  CHECK(integer_roots(P({1, 0, 1})).empty());   // z^2+1
  CHECK(integer_roots(P({-3, 2})).empty());     // 2z-3, root 3/2
  CHECK(integer_roots(P({0, 0, 1})) == std::vector<long>{0});
  // rational coefficients: (z-4)(z+7)/3
  const RatPoly p = (P({-4, 1}) * P({7, 1})).scaled(Rat(1, 3));
  CHECK(integer_roots(p) == std::vector<long>{-7, 4});
  // large roots beyond small-divisor enumeration still found numerically
  CHECK(integer_roots(P({-1000003, 1})) == std::vector<long>{1000003});
}

TEST_CASE("complex root finding: factorable examples") {
  // w^2-3w+2
  RootSet rs = find_roots(ComplexPoly(std::vector<Cplx>{Cplx(2, 0), Cplx(-3, 0), Cplx(1, 0)}));
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::abs(rs.roots[0].root - Cplx(1, 0)) < 1e-9);
  CHECK(std::abs(rs.roots[1].root - Cplx(2, 0)) < 1e-9);
  CHECK(rs.roots[0].multiplicity == 1);
  CHECK(rs.roots[1].multiplicity == 1);

  // w^2-2w+1 = (w-1)^2
  rs = find_roots(ComplexPoly(std::vector<Cplx>{Cplx(1, 0), Cplx(-2, 0), Cplx(1, 0)}));
  REQUIRE(rs.roots.size() == 1);
  CHECK(std::abs(rs.roots[0].root - Cplx(1, 0)) < 1e-7);
  CHECK(rs.roots[0].multiplicity == 2);

  // (w-1)^2 - 1 = w^2 - 2w: roots 0 and 2
  rs = find_roots(ComplexPoly(std::vector<Cplx>{Cplx(0, 0), Cplx(-2, 0), Cplx(1, 0)}));
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::abs(rs.roots[0].root) < 1e-12);
  CHECK(std::abs(rs.roots[1].root - Cplx(2, 0)) < 1e-9);

  CHECK_THROWS_AS(find_roots(ComplexPoly(std::vector<Cplx>{Cplx(3, 0)})), Error);
}

TEST_CASE("multiplicity stress: (w-1)^k for k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    CAPTURE(k);
    const RootSet rs = find_roots(expand_factors({{Cplx(1, 0), k}}));
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].multiplicity == k);
    CHECK(std::abs(rs.roots[0].root - Cplx(1, 0)) < 1e-7);
    CHECK_FALSE(rs.roots[0].near_degenerate);
  }
}

TEST_CASE("random factored polynomials: roots and multiplicities recover") {
  std::uint64_t st = 314159;
  for (int iter = 0; iter < 40; ++iter) {
    CAPTURE(iter);
    // 2..5 distinct roots, separation > 1e-3, degree <= 8
    std::vector<std::pair<Cplx, int>> factors;
    int total = 0;
    while (factors.size() < 2 + splitmix64(st) % 3) {
      const Cplx cand(4.0 * uniform01(st) - 2.0, 4.0 * uniform01(st) - 2.0);
      bool ok = true;
      for (auto& [r, m] : factors)
        if (std::abs(r - cand) < 5e-3) ok = false;
      if (!ok) continue;
      const int mult = 1 + static_cast<int>(splitmix64(st) % 3);
      if (total + mult > 8) break;
      factors.emplace_back(cand, mult);
      total += mult;
    }
    if (factors.size() < 2) continue;
    const ComplexPoly p = expand_factors(factors);
    const RootSet rs = find_roots(p);
    CHECK(rs.total_multiplicity() == p.degree());
    REQUIRE(rs.roots.size() == factors.size());
    std::vector<std::pair<Cplx, int>> sorted = factors;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) {
      if (std::abs(a.first) != std::abs(b.first)) return std::abs(a.first) < std::abs(b.first);
      return std::arg(a.first) < std::arg(b.first);
    });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      CHECK(std::abs(rs.roots[i].root - sorted[i].first) < 1e-7 * (1.0 + std::abs(sorted[i].first)));
      CHECK(rs.roots[i].multiplicity == sorted[i].second);
    }
    // residual contract for simple roots
    double norm = 0.0;
    for (Cplx c : p.c) norm = std::max(norm, std::abs(c));
    for (const auto& r : rs.roots)
      if (r.multiplicity == 1) CHECK(std::abs(p.eval(r.root)) <= 1e-8 * norm);
  }
}
