// Exact rational and polynomial solutions of
//     sum_{j=0}^n b_j(z) f(z + j) = b(z)
// with polynomial coefficients: dispersion sets, the universal-denominator
// bound, degree-bounded undetermined coefficients over exact rationals, and
// substitution certificates. A general step eta reduces to step 1 through
// z = eta w, which keeps rational coefficients polynomial.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/ratpoly.hpp"

namespace merodiff {

struct PolynomialRecurrence {
  std::vector<RatPoly> coeffs;  // b_0..b_n ascending shift; b_0, b_n nonzero
  RatPoly rhs;                  // possibly zero
  Rat step{1};

  PolynomialRecurrence(std::vector<RatPoly> coefficients, RatPoly right_side, Rat step_size);
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct RationalFunction {
  RatPoly num, den;  // lowest terms, den monic (den = 1 for polynomials)

  RationalFunction() : num(), den(RatPoly::constant(Rat(1))) {}
  RationalFunction(RatPoly n, RatPoly d);  // reduces and normalizes

  bool is_zero() const { return num.is_zero(); }
  std::string to_pretty() const;
  Expr to_expr() const;
  Cplx eval(Cplx z) const { return num.eval(z) / den.eval(z); }
};

// { h >= 0 : deg gcd(p(z), q(z+h)) > 0 }, via integer roots of the resultant
// Res_z(p(z), q(z+h)) in h (built by interpolation), each candidate verified
// by an exact gcd.
std::set<long> dispersion_set(const RatPoly& p, const RatPoly& q);

// Abramov's bound: every rational solution of rec has denominator dividing
// the returned polynomial (monic; 1 when the dispersion of the trailing
// coefficient against the shifted leading coefficient is empty).
RatPoly universal_denominator(const PolynomialRecurrence& rec);

struct PolySolutionSet {
  std::optional<RatPoly> particular;  // absent when the system is inconsistent
  std::vector<RatPoly> basis;         // homogeneous kernel
  long degree_bound = -1;
  std::vector<std::string> notes;
};

PolySolutionSet polynomial_solutions(const PolynomialRecurrence& rec);

// Machine-checkable cleared-denominator identity for one solution num/den:
//   sum_j coeff_products[j] - rhs_times_common = residual  (== 0)
// where coeff_products[j] = b_j(z) * num(z+j) * (common(z)/den(z+j)) and
// common(z) = prod_j den(z+j).
struct SubstitutionCertificate {
  RatPoly numerator, denominator;
  std::vector<RatPoly> coeff_products;
  RatPoly rhs_times_common;
  RatPoly residual;  // zero polynomial for a verified solution
};

struct RationalSolutionSet {
  std::optional<RationalFunction> particular;
  std::vector<RationalFunction> basis;
  RatPoly universal_den;
  long degree_bound = -1;
  std::optional<SubstitutionCertificate> certificate;  // for the particular
  std::vector<SubstitutionCertificate> basis_certificates;
  Rat step{1};  // echo; solving used z = step * w when step != 1
  std::vector<std::string> notes;
};

RationalSolutionSet rational_solutions(const PolynomialRecurrence& rec);

// Dense polynomial as an expression tree (Horner form).
Expr poly_expr(const RatPoly& p);

// Exact residual of a candidate under the recurrence (zero polynomial iff
// the candidate solves it); also produces the certificate.
SubstitutionCertificate substitution_certificate(const PolynomialRecurrence& rec,
                                                 const RationalFunction& f);

}  // namespace merodiff
