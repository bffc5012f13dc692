// Complex numbers with an explicit power-of-two exponent, value = mant * 2^exp.
//
// The proximity integrals need log|f| for things like e^(z^2) on |z| = 200,
// whose magnitude (~e^40000) is far outside double range. Keeping the
// exponent separate makes multiply/divide exact in the exponent and keeps
// add/sub meaningful whenever the operands are within ~2^1000 of each other.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include "core/complexio.hpp"

namespace merodiff {

struct ScaledComplex {
  Cplx mant{0.0, 0.0};  // |mant| in [1, 2) unless the value is zero
  std::int64_t exp = 0;

  static ScaledComplex zero() { return {}; }

  static ScaledComplex from(Cplx v) {
    ScaledComplex s;
    s.mant = v;
    s.exp = 0;
    s.normalize();
    return s;
  }

  bool is_zero() const { return mant == Cplx(0.0, 0.0); }

  void normalize() {
    const double a = std::abs(mant);
    if (a == 0.0 || !std::isfinite(a)) {
      if (a == 0.0) exp = 0;
      return;
    }
    int e2 = 0;
    std::frexp(a, &e2);  // a = frac * 2^e2, frac in [0.5, 1)
    const int shift = e2 - 1;
    if (shift != 0) {
      mant *= std::ldexp(1.0, -shift);
      exp += shift;
    }
  }

  // Natural log of the magnitude; -inf for zero.
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant)) + static_cast<double>(exp) * 0.6931471805599453;
  }

  double arg() const { return std::arg(mant); }

  // Best-effort conversion; +-inf when the exponent exceeds double range.
  Cplx to_cplx() const {
    if (is_zero()) return {0.0, 0.0};
    if (exp > 1020) {
      const double inf = std::numeric_limits<double>::infinity();
      return {mant.real() > 0 ? inf : -inf, mant.imag() > 0 ? inf : -inf};
    }
    if (exp < -1060) return {0.0, 0.0};
    return mant * std::ldexp(1.0, static_cast<int>(exp));
  }
};

inline ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) return ScaledComplex::zero();
  ScaledComplex r{a.mant * b.mant, a.exp + b.exp};
  r.normalize();
  return r;
}

inline ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  ScaledComplex r{a.mant / b.mant, a.exp - b.exp};
  r.normalize();
  return r;
}

inline ScaledComplex operator-(const ScaledComplex& a) {
  return {-a.mant, a.exp};
}

inline ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ScaledComplex *hi = &a, *lo = &b;
  if (a.exp < b.exp) std::swap(hi, lo);
  const std::int64_t d = hi->exp - lo->exp;
  if (d > 128) return *hi;  // the small operand is below one ulp
  ScaledComplex r{hi->mant + lo->mant * std::ldexp(1.0, -static_cast<int>(d)), hi->exp};
  r.normalize();
  return r;
}

inline ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

// exp(w) for a plain complex argument (the exponent magnitude must fit a
// double, which covers everything evaluable in this toolkit).
inline ScaledComplex scaled_exp(Cplx w) {
  constexpr double kLog2e = 1.4426950408889634;  // 1/ln 2
  const double e2 = w.real() * kLog2e;
  if (std::abs(e2) > 9.0e18) {  // would overflow the int64 exponent
    return ScaledComplex{{std::numeric_limits<double>::quiet_NaN(), 0.0}, 0};
  }
  const double ip = std::floor(e2);
  const double frac = (w.real() - ip * 0.6931471805599453);  // in ~[0, ln 2)
  ScaledComplex r;
  r.mant = std::exp(frac) * Cplx(std::cos(w.imag()), std::sin(w.imag()));
  r.exp = static_cast<std::int64_t>(ip);
  r.normalize();
  return r;
}

// Principal log as a plain complex (always representable).
inline Cplx scaled_log(const ScaledComplex& v) { return {v.log_abs(), v.arg()}; }

}  // namespace merodiff
