#include "core/diff_operator.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/util.hpp"

namespace merodiff {

LinearDifferenceOperator::LinearDifferenceOperator(Cplx shift, std::vector<Cplx> coeffs)
    : shift_(shift), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "difference operator needs order n >= 1");
  if (coeffs_.back() == Cplx(0.0, 0.0))
    throw Error(ErrorCode::InvalidArgument, "leading coefficient a_n must be nonzero");
  if (shift_ == Cplx(0.0, 0.0))
    throw Error(ErrorCode::InvalidArgument, "shift c must be nonzero");
  coefficient_sum_ = {0.0, 0.0};
  for (Cplx a : coeffs_) coefficient_sum_ += a;
}

LinearDifferentialOperator::LinearDifferentialOperator(std::vector<Cplx> b1_to_bk, Cplx constant)
    : coeffs(std::move(b1_to_bk)), b0(constant) {
  if (coeffs.empty())
    throw Error(ErrorCode::InvalidArgument, "differential operator needs order k >= 1");
  if (coeffs.back() == Cplx(0.0, 0.0))
    throw Error(ErrorCode::InvalidArgument, "leading coefficient b_k must be nonzero");
}

LinearDifferenceOperator delta_n(Cplx shift, int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "forward difference needs order >= 1");
  if (order > 60) throw Error(ErrorCode::InvalidArgument, "forward difference order too large");
  // signed binomials in exact integer arithmetic
  std::vector<double> binom(order + 1);
  binom[0] = 1.0;
  for (int i = 1; i <= order; ++i) {
    binom[i] = 1.0;
    for (int j = i - 1; j >= 1; --j) binom[j] += binom[j - 1];
  }
  std::vector<Cplx> a(order + 1);
  for (int j = 0; j <= order; ++j) {
    const double sign = ((order - j) % 2 == 0) ? 1.0 : -1.0;
    a[j] = Cplx(sign * binom[j], 0.0);
  }
  return LinearDifferenceOperator(shift, std::move(a));
}

Expr apply_difference(const LinearDifferenceOperator& op, const Expr& f) {
  Expr acc;
  const auto& a = op.coefficients();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == Cplx(0.0, 0.0)) continue;
    Expr term = make_mul(make_const(a[j]), shift(f, static_cast<double>(j) * op.shift()));
    acc = acc ? make_add(acc, term) : term;
  }
  return acc ? acc : make_const(0.0);
}

Expr apply_differential(const LinearDifferentialOperator& lop, const Expr& f) {
  Expr acc;
  Expr d = f;
  for (std::size_t j = 0; j < lop.coeffs.size(); ++j) {
    d = derivative(d);
    if (lop.coeffs[j] == Cplx(0.0, 0.0)) continue;
    Expr term = make_mul(make_const(lop.coeffs[j]), d);
    acc = acc ? make_add(acc, term) : term;
  }
  if (!acc) acc = make_const(0.0);
  if (lop.b0 != Cplx(0.0, 0.0)) acc = make_add(acc, make_const(lop.b0));
  return acc;
}

Expr apply_mixed(const LinearDifferenceOperator& dop, const LinearDifferentialOperator& lop,
                 const Expr& f) {
  return make_add(apply_difference(dop, f), apply_differential(lop, f));
}

ComplexPoly characteristic_poly(const LinearDifferenceOperator& op, Cplx A) {
  std::vector<Cplx> c = op.coefficients();
  c[0] -= A;
  return ComplexPoly(std::move(c));
}

namespace {

ResidualReport measure(const Expr& lhs, const Expr& rhs, std::span<const Cplx> samples,
                       const std::vector<Expr>& scale_terms) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "residual needs samples");
  ResidualReport rep;
  rep.sample_count = samples.size();

  struct Point {
    bool skip = true;
    double abs_res = 0.0;
    double rel_res = 0.0;
  };
  const std::vector<Point> points = parallel_map<Point>(samples.size(), [&](std::size_t i) {
    const Cplx z = samples[i];
    Point p;
    const EvalOutcome l = eval(lhs, z);
    const EvalOutcome r = eval(rhs, z);
    if (!l.ok() || !r.ok()) return p;
    double scale = std::abs(r.value);
    for (const Expr& t : scale_terms) {
      const EvalOutcome tv = eval(t, z);
      if (!tv.ok()) return p;
      scale = std::max(scale, std::abs(tv.value));
    }
    p.skip = false;
    p.abs_res = std::abs(l.value - r.value);
    p.rel_res = p.abs_res / std::max(scale, 1e-30);
    return p;
  });

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].skip) {
      rep.skipped.push_back(samples[i]);
      continue;
    }
    rep.max_abs = std::max(rep.max_abs, points[i].abs_res);
    rep.max_rel = std::max(rep.max_rel, points[i].rel_res);
    ++rep.used;
  }
  if (rep.used == 0)
    throw Error(ErrorCode::Numeric, "all residual samples were pole-flagged or filtered");
  return rep;
}

}  // namespace

ResidualReport residual(const LinearDifferenceOperator& op, const Expr& f, Cplx A,
                        std::span<const Cplx> samples) {
  const Expr lhs = apply_difference(op, f);
  const Expr rhs = make_mul(make_const(A), f);
  // relative scale is |A f(z)| alone for operator checks
  return measure(lhs, rhs, samples, {});
}

ResidualReport expression_residual(const Expr& lhs, const Expr& rhs,
                                   std::span<const Cplx> samples,
                                   std::span<const Expr> scale_terms) {
  std::vector<Expr> terms(scale_terms.begin(), scale_terms.end());
  return measure(lhs, rhs, samples, terms);
}

Cplx estimate_eigenvalue(const LinearDifferenceOperator& op, const Expr& f, Cplx z0) {
  const Expr lf = apply_difference(op, f);
  const EvalOutcome num = eval(lf, z0);
  const EvalOutcome den = eval(f, z0);
  if (!num.ok() || !den.ok() || std::abs(den.value) < kPoleEpsilon)
    throw Error(ErrorCode::Numeric, "eigenvalue probe hit a pole or zero of f; pick another z0");
  return num.value / den.value;
}

}  // namespace merodiff
