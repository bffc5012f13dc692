// Evaluation of expression trees.
//
// Two number policies share one tree walk: PlainPolicy (complex<double> with
// the pole-epsilon / overflow-cap contract) and ScaledPolicy (ScaledComplex,
// used by the radial quadratures where |f| leaves double range). Pow with a
// non-constant or non-integer exponent is evaluated as exp(b*log a) through
// the same policy calls the Exp/Log nodes use, so both routes agree exactly.
#include <cmath>
#include <numbers>

#include "core/expr.hpp"
#include "core/scaled_complex.hpp"
#include "core/special_functions.hpp"

namespace merodiff {

namespace {

struct Flags {
  bool pole = false;
  bool overflow = false;
  bool bad() const { return pole || overflow; }
};

inline bool finite(Cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// ---------------------------------------------------------------------------
struct PlainPolicy {
  using V = Cplx;
  static V from_const(Cplx c, Flags&) { return c; }
  static V check(V v, Flags& fl) {
    if (!finite(v) || std::abs(v.real()) > kOverflowCap || std::abs(v.imag()) > kOverflowCap)
      fl.overflow = true;
    return v;
  }
  static V add(V a, V b, Flags& fl) { return check(a + b, fl); }
  static V sub(V a, V b, Flags& fl) { return check(a - b, fl); }
  static V mul(V a, V b, Flags& fl) { return check(a * b, fl); }
  static V div(V a, V b, Flags& fl) {
    if (std::abs(b) < kPoleEpsilon) {
      fl.pole = true;
      return {0.0, 0.0};
    }
    return check(a / b, fl);
  }
  static V neg(V a, Flags&) { return -a; }
  static V exp_(V a, Flags& fl) {
    if (a.real() > 690.0) {
      fl.overflow = true;
      return {0.0, 0.0};
    }
    return check(std::exp(a), fl);
  }
  static V log_(V a, Flags& fl) {
    if (a == Cplx(0.0, 0.0)) {
      fl.pole = true;
      return {0.0, 0.0};
    }
    return check(std::log(a), fl);
  }
  static V sin_(V a, Flags& fl) {
    if (std::abs(a.imag()) > 690.0) {
      fl.overflow = true;
      return {0.0, 0.0};
    }
    return check(std::sin(a), fl);
  }
  static V cos_(V a, Flags& fl) {
    if (std::abs(a.imag()) > 690.0) {
      fl.overflow = true;
      return {0.0, 0.0};
    }
    return check(std::cos(a), fl);
  }
  static V tan_(V a, Flags& fl) {
    if (std::abs(a.imag()) > 345.0) return {0.0, a.imag() > 0 ? 1.0 : -1.0};
    const V s = std::sin(a), c = std::cos(a);
    return div(s, c, fl);
  }
  static V gamma_(V a, Flags& fl) {
    if (near_gamma_pole(a, kPoleEpsilon)) {
      fl.pole = true;
      return {0.0, 0.0};
    }
    return check(complex_gamma(a), fl);
  }
  static V digamma_(V a, Flags& fl) {
    if (near_gamma_pole(a, kPoleEpsilon)) {
      fl.pole = true;
      return {0.0, 0.0};
    }
    return check(complex_digamma(a), fl);
  }
  static V polygamma_(int m, V a, Flags& fl) {
    if (near_gamma_pole(a, kPoleEpsilon)) {
      fl.pole = true;
      return {0.0, 0.0};
    }
    return check(complex_polygamma(m, a), fl);
  }
  static bool is_zero(V a) { return a == Cplx(0.0, 0.0); }
  static Cplx to_plain_value(V a, Flags&) { return a; }
};

// ---------------------------------------------------------------------------
struct ScaledPolicy {
  using V = ScaledComplex;
  static constexpr std::int64_t kExpCap = std::int64_t(1) << 58;

  static V from_const(Cplx c, Flags&) { return ScaledComplex::from(c); }
  static V check(V v, Flags& fl) {
    if (!finite(v.mant) || std::llabs(v.exp) > kExpCap) fl.overflow = true;
    return v;
  }
  static V add(V a, V b, Flags& fl) { return check(a + b, fl); }
  static V sub(V a, V b, Flags& fl) { return check(a - b, fl); }
  static V mul(V a, V b, Flags& fl) { return check(a * b, fl); }
  static V div(V a, V b, Flags& fl) {
    if (b.is_zero()) {
      fl.pole = true;
      return {};
    }
    return check(a / b, fl);
  }
  static V neg(V a, Flags&) { return -a; }
  static Cplx plain_or_flag(V a, Flags& fl) {
    const Cplx v = a.to_cplx();
    if (!finite(v)) fl.overflow = true;
    return v;
  }
  static V exp_(V a, Flags& fl) {
    const Cplx w = plain_or_flag(a, fl);
    if (fl.bad()) return {};
    return check(scaled_exp(w), fl);
  }
  static V log_(V a, Flags& fl) {
    if (a.is_zero()) {
      fl.pole = true;
      return {};
    }
    return from_const(scaled_log(a), fl);
  }
  static V sin_cos(V a, Flags& fl, bool want_sin) {
    const Cplx w = plain_or_flag(a, fl);
    if (fl.bad()) return {};
    if (std::abs(w.imag()) <= 300.0) {
      return from_const(want_sin ? std::sin(w) : std::cos(w), fl);
    }
    const Cplx iw{-w.imag(), w.real()};
    const ScaledComplex ep = scaled_exp(iw), em = scaled_exp(-iw);
    if (want_sin) {
      // (e^{iw} - e^{-iw}) / 2i
      ScaledComplex d = ep - em;
      d.mant /= Cplx(0.0, 2.0);
      d.normalize();
      return check(d, fl);
    }
    ScaledComplex s = ep + em;
    s.mant /= 2.0;
    s.normalize();
    return check(s, fl);
  }
  static V sin_(V a, Flags& fl) { return sin_cos(a, fl, true); }
  static V cos_(V a, Flags& fl) { return sin_cos(a, fl, false); }
  static V tan_(V a, Flags& fl) {
    const V s = sin_(a, fl), c = cos_(a, fl);
    if (fl.bad()) return {};
    return div(s, c, fl);
  }
  static V gamma_(V a, Flags& fl) {
    const Cplx w = plain_or_flag(a, fl);
    if (fl.bad()) return {};
    if (near_gamma_pole(w, kPoleEpsilon)) {
      fl.pole = true;
      return {};
    }
    if (w.real() >= 0.5) {
      if (std::abs(w) < 140.0) return from_const(complex_gamma(w), fl);
      return check(scaled_exp_of(log_gamma_positive(w), fl), fl);
    }
    // reflection in scaled arithmetic
    const Cplx pi{std::numbers::pi, 0.0};
    V s = sin_(from_const(pi * w, fl), fl);
    V g1 = gamma_(from_const(1.0 - w, fl), fl);
    if (fl.bad()) return {};
    return div(from_const(pi, fl), mul(s, g1, fl), fl);
  }
  static V scaled_exp_of(Cplx logval, Flags& fl) {
    if (!finite(logval)) {
      fl.overflow = true;
      return {};
    }
    return scaled_exp(logval);
  }
  static V digamma_(V a, Flags& fl) { return polygamma_(0, a, fl); }
  static V polygamma_(int m, V a, Flags& fl) {
    const Cplx w = plain_or_flag(a, fl);
    if (fl.bad()) return {};
    if (near_gamma_pole(w, kPoleEpsilon)) {
      fl.pole = true;
      return {};
    }
    return from_const(complex_polygamma(m, w), fl);
  }
  static bool is_zero(V a) { return a.is_zero(); }
  static Cplx to_plain_value(V a, Flags& fl) { return plain_or_flag(a, fl); }
};

// ---------------------------------------------------------------------------
template <class P>
typename P::V eval_node(const ExprNode& e, typename P::V z, Flags& fl) {
  using V = typename P::V;
  if (fl.bad()) return {};
  switch (e.kind) {
    case NodeKind::Const: return P::from_const(e.value, fl);
    case NodeKind::Var: return z;
    case NodeKind::Add: return P::add(eval_node<P>(*e.a, z, fl), eval_node<P>(*e.b, z, fl), fl);
    case NodeKind::Sub: return P::sub(eval_node<P>(*e.a, z, fl), eval_node<P>(*e.b, z, fl), fl);
    case NodeKind::Mul: return P::mul(eval_node<P>(*e.a, z, fl), eval_node<P>(*e.b, z, fl), fl);
    case NodeKind::Div: return P::div(eval_node<P>(*e.a, z, fl), eval_node<P>(*e.b, z, fl), fl);
    case NodeKind::Neg: return P::neg(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Pow: {
      V base = eval_node<P>(*e.a, z, fl);
      if (fl.bad()) return {};
      // constant integer exponents: repeated multiplication, exact at 0
      if (e.b->kind == NodeKind::Const) {
        const Cplx c = e.b->value;
        if (c.imag() == 0.0 && c.real() == std::floor(c.real()) && std::abs(c.real()) <= 1024.0) {
          long k = static_cast<long>(c.real());
          if (k == 0) return P::from_const(1.0, fl);
          const bool inv = k < 0;
          k = std::labs(k);
          V acc = P::from_const(1.0, fl);
          V sq = base;
          while (k > 0) {
            if (k & 1) acc = P::mul(acc, sq, fl);
            k >>= 1;
            if (k) sq = P::mul(sq, sq, fl);
          }
          if (inv) return P::div(P::from_const(1.0, fl), acc, fl);
          return acc;
        }
      }
      V expo = eval_node<P>(*e.b, z, fl);
      if (fl.bad()) return {};
      if (P::is_zero(base)) {
        // 0^w: 0 for Re w > 0, 1 for w = 0, singular otherwise.
        const Cplx w = P::to_plain_value(expo, fl);
        if (w == Cplx(0.0, 0.0)) return P::from_const(1.0, fl);
        if (w.real() > 0.0) return {};
        fl.pole = true;
        return {};
      }
      return P::exp_(P::mul(expo, P::log_(base, fl), fl), fl);
    }
    case NodeKind::Exp: return P::exp_(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Log: return P::log_(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Sin: return P::sin_(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Cos: return P::cos_(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Tan: return P::tan_(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Gamma: return P::gamma_(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Digamma: return P::digamma_(eval_node<P>(*e.a, z, fl), fl);
    case NodeKind::Polygamma: return P::polygamma_(e.order, eval_node<P>(*e.a, z, fl), fl);
  }
  return {};
}

}  // namespace

EvalOutcome eval(const Expr& e, Cplx z) {
  Flags fl;
  const Cplx v = eval_node<PlainPolicy>(*e, z, fl);
  EvalOutcome out;
  out.value = v;
  out.pole = fl.pole;
  out.overflow = fl.overflow;
  if (!fl.bad() &&
      (!finite(v) || std::abs(v.real()) > kOverflowCap || std::abs(v.imag()) > kOverflowCap)) {
    out.overflow = true;
  }
  return out;
}

namespace {

// First-order rounding-error propagation alongside the plain value. The
// bound tracks E(g) such that the computed value differs from the exact one
// by about eps * E(g); Add/Sub accumulate magnitudes, which is what exposes
// catastrophic cancellation.
struct BoundVal {
  Cplx v{0.0, 0.0};
  double b = 0.0;
};

BoundVal eval_bound_node(const ExprNode& e, Cplx z, Flags& fl) {
  if (fl.bad()) return {};
  auto lift = [&](Cplx value, double in_bound, double deriv_mag) -> BoundVal {
    return {value, deriv_mag * in_bound + std::abs(value)};
  };
  switch (e.kind) {
    case NodeKind::Const: return {e.value, std::abs(e.value)};
    case NodeKind::Var: return {z, std::abs(z)};
    case NodeKind::Add: {
      const BoundVal a = eval_bound_node(*e.a, z, fl), b = eval_bound_node(*e.b, z, fl);
      return {PlainPolicy::add(a.v, b.v, fl), a.b + b.b};
    }
    case NodeKind::Sub: {
      const BoundVal a = eval_bound_node(*e.a, z, fl), b = eval_bound_node(*e.b, z, fl);
      return {PlainPolicy::sub(a.v, b.v, fl), a.b + b.b};
    }
    case NodeKind::Mul: {
      const BoundVal a = eval_bound_node(*e.a, z, fl), b = eval_bound_node(*e.b, z, fl);
      return {PlainPolicy::mul(a.v, b.v, fl), a.b * std::abs(b.v) + b.b * std::abs(a.v) +
                                                  std::abs(a.v) * std::abs(b.v)};
    }
    case NodeKind::Div: {
      const BoundVal a = eval_bound_node(*e.a, z, fl), b = eval_bound_node(*e.b, z, fl);
      const Cplx v = PlainPolicy::div(a.v, b.v, fl);
      if (fl.bad()) return {};
      const double ab = std::abs(b.v);
      return {v, a.b / ab + std::abs(v) * (b.b / ab + 1.0)};
    }
    case NodeKind::Neg: {
      const BoundVal a = eval_bound_node(*e.a, z, fl);
      return {-a.v, a.b};
    }
    default: {
      // function nodes: evaluate value and the derivative magnitude at the
      // argument, then propagate first-order
      const BoundVal a = eval_bound_node(*e.a, z, fl);
      if (fl.bad()) return {};
      Flags sub;
      Cplx v, dv;
      switch (e.kind) {
        case NodeKind::Exp:
          v = PlainPolicy::exp_(a.v, fl);
          dv = v;
          break;
        case NodeKind::Log:
          v = PlainPolicy::log_(a.v, fl);
          dv = fl.bad() ? Cplx{} : 1.0 / a.v;
          break;
        case NodeKind::Sin:
          v = PlainPolicy::sin_(a.v, fl);
          dv = PlainPolicy::cos_(a.v, sub);
          break;
        case NodeKind::Cos:
          v = PlainPolicy::cos_(a.v, fl);
          dv = -PlainPolicy::sin_(a.v, sub);
          break;
        case NodeKind::Tan:
          v = PlainPolicy::tan_(a.v, fl);
          dv = 1.0 + v * v;
          break;
        case NodeKind::Gamma:
          v = PlainPolicy::gamma_(a.v, fl);
          dv = fl.bad() ? Cplx{} : v * complex_digamma(a.v);
          break;
        case NodeKind::Digamma:
          v = PlainPolicy::digamma_(a.v, fl);
          dv = fl.bad() ? Cplx{} : complex_polygamma(1, a.v);
          break;
        case NodeKind::Polygamma:
          v = PlainPolicy::polygamma_(e.order, a.v, fl);
          dv = fl.bad() ? Cplx{} : complex_polygamma(e.order + 1, a.v);
          break;
        case NodeKind::Pow: {
          // a^b via exp(b log a); bound through the same chain
          const BoundVal bb = eval_bound_node(*e.b, z, fl);
          if (fl.bad()) return {};
          if (a.v == Cplx(0.0, 0.0)) {
            const Cplx plain = eval_node<PlainPolicy>(e, z, fl);
            return {plain, std::abs(plain)};
          }
          const Cplx lg = PlainPolicy::log_(a.v, fl);
          const Cplx prod = PlainPolicy::mul(bb.v, lg, fl);
          const Cplx val = PlainPolicy::exp_(prod, fl);
          if (fl.bad()) return {};
          const double prod_bound =
              bb.b * std::abs(lg) + (a.b / std::abs(a.v)) * std::abs(bb.v) + std::abs(prod);
          return lift(val, prod_bound, std::abs(val));
        }
        default:
          fl.overflow = true;
          return {};
      }
      if (fl.bad()) return {};
      if (!finite(dv)) dv = {0.0, 0.0};
      return lift(v, a.b, std::abs(dv));
    }
  }
}

}  // namespace

ConditionedEval eval_conditioned(const Expr& e, Cplx z) {
  Flags fl;
  const BoundVal r = eval_bound_node(*e, z, fl);
  ConditionedEval out;
  out.value = r.v;
  out.error_bound = r.b;
  out.pole = fl.pole;
  out.overflow = fl.overflow;
  if (!fl.bad() && (!finite(r.v) || std::abs(r.v.real()) > kOverflowCap ||
                    std::abs(r.v.imag()) > kOverflowCap)) {
    out.overflow = true;
  }
  return out;
}

LogAbsOutcome log_magnitude(const Expr& e, Cplx z) {
  Flags fl;
  const ScaledComplex v = eval_node<ScaledPolicy>(*e, ScaledComplex::from(z), fl);
  LogAbsOutcome out;
  out.pole = fl.pole;
  out.overflow = fl.overflow;
  if (!fl.bad()) {
    out.log_abs = v.log_abs();
    out.arg = v.arg();
  }
  return out;
}

}  // namespace merodiff
