// Linear difference operators with constant coefficients,
//     L(f)(z) = sum_{j=0}^{n} a_j f(z + j c),      a_n != 0, c != 0,
// the forward-difference specialization, mixed difference-differential
// application, characteristic polynomials and pointwise residual checks.
#pragma once

#include <span>
#include <vector>

#include "core/cpoly.hpp"
#include "core/expr.hpp"

namespace merodiff {

class LinearDifferenceOperator {
 public:
  // coeffs are a_0..a_n ascending; requires n >= 1, a_n != 0, shift != 0.
  LinearDifferenceOperator(Cplx shift, std::vector<Cplx> coeffs);

  Cplx shift() const { return shift_; }
  const std::vector<Cplx>& coefficients() const { return coeffs_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  Cplx coefficient_sum() const { return coefficient_sum_; }

 private:
  Cplx shift_;
  std::vector<Cplx> coeffs_;
  Cplx coefficient_sum_;
};

// b_k f^(k) + ... + b_1 f' + b_0 with the constant term additive.
struct LinearDifferentialOperator {
  std::vector<Cplx> coeffs;  // b_1..b_k ascending; requires k >= 1, b_k != 0
  Cplx b0{0.0, 0.0};

  LinearDifferentialOperator(std::vector<Cplx> b1_to_bk, Cplx constant);
  int order() const { return static_cast<int>(coeffs.size()); }
};

// Forward difference of order n: a_j = (-1)^(n-j) C(n,j); coefficient sum 0.
LinearDifferenceOperator delta_n(Cplx shift, int order);

Expr apply_difference(const LinearDifferenceOperator& op, const Expr& f);
Expr apply_differential(const LinearDifferentialOperator& lop, const Expr& f);
Expr apply_mixed(const LinearDifferenceOperator& dop, const LinearDifferentialOperator& lop,
                 const Expr& f);

// P(w) = sum a_j w^j - A.
ComplexPoly characteristic_poly(const LinearDifferenceOperator& op, Cplx A);

struct ResidualReport {
  std::size_t sample_count = 0;
  std::size_t used = 0;
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::vector<Cplx> skipped;  // pole-flagged or filtered sample points
};

// max |L(f)(z) - A f(z)| over non-pole samples; relative residuals use
// max(|A f(z)|, 1e-30). Throws when every sample is skipped.
ResidualReport residual(const LinearDifferenceOperator& op, const Expr& f, Cplx A,
                        std::span<const Cplx> samples);

// Same residual measurement against a prebuilt pair (lhs_expr, rhs_expr);
// used for mixed operators and polynomial-coefficient recurrences, where the
// natural scale is the largest term magnitude.
ResidualReport expression_residual(const Expr& lhs, const Expr& rhs,
                                   std::span<const Cplx> samples,
                                   std::span<const Expr> scale_terms);

// A := L(f)(z0) / f(z0); the "detect eigenvalue" helper.
Cplx estimate_eigenvalue(const LinearDifferenceOperator& op, const Expr& f, Cplx z0);

}  // namespace merodiff
