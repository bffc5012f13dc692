// Exact univariate polynomials over arbitrary-precision rationals.
//
// Coefficients ascend by degree and stay trimmed, so degree() is just the
// length. Everything here is exact; the only numerics are the optional
// double/complex evaluations used for cross-checks.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "core/complexio.hpp"
#include "core/cpoly.hpp"

namespace merodiff {

using Rat = mpq_class;

class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static RatPoly constant(Rat v) { return RatPoly(std::vector<Rat>{std::move(v)}); }
  static RatPoly variable() { return RatPoly({Rat(0), Rat(1)}); }
  // Coefficient strings like "3/4", "-2", ascending by degree.
  static RatPoly from_strings(const std::vector<std::string>& coeffs);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
  }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator-() const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  RatPoly scaled(const Rat& k) const;  // k * p

  // Exact division with remainder (quotient, remainder); divisor nonzero.
  std::pair<RatPoly, RatPoly> divrem(const RatPoly& divisor) const;

  Rat eval(const Rat& x) const;
  Cplx eval(Cplx z) const;
  RatPoly derivative() const;

  // p(z + h), exact (binomial expansion); h may be any rational.
  RatPoly taylor_shift(const Rat& h) const;
  RatPoly shift_by_integer(long k) const { return taylor_shift(Rat(k)); }
  // p(k * z)
  RatPoly scale_argument(const Rat& k) const;

  RatPoly monic() const;

  std::vector<std::string> to_strings() const;
  // Human form: "z^2-5*z+6", "1/2*z", "0".
  std::string to_pretty() const;

  ComplexPoly to_complex_poly() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// Monic gcd via the Euclidean algorithm (degrees here are small).
RatPoly poly_gcd(RatPoly a, RatPoly b);
RatPoly poly_lcm(const RatPoly& a, const RatPoly& b);

// Sylvester-determinant resultant, computed through the PRS recursion:
// resultant(z, z-3) = -3, resultant(z^2-1, z) = -1. Both inputs nonzero.
Rat resultant(const RatPoly& p, const RatPoly& q);

// All integer zeros, ascending. Candidates come from divisor enumeration of
// the trailing coefficient (when it fits 64 bits) plus numeric proposals;
// every candidate is verified by exact evaluation.
std::vector<long> integer_roots(const RatPoly& p);

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

}  // namespace merodiff
