#include "core/expr.hpp"

#include <cmath>

#include "core/error.hpp"

namespace merodiff {

namespace {

Expr node(NodeKind k, Expr a = nullptr, Expr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_const(const Expr& e) { return e->kind == NodeKind::Const; }
bool is_zero_const(const Expr& e) { return is_const(e) && e->value == Cplx(0.0, 0.0); }

// Constant subtrees fold at construction, but only when evaluation raises no
// flag; gamma(-3) or 1/1e-13 keep their nodes so the pole/overflow contract
// survives.
Expr fold_if_clean(Expr n) {
  const EvalOutcome r = eval(n, Cplx(0.0, 0.0));
  if (r.ok()) return make_const(r.value);
  return n;
}

}  // namespace

Expr make_const(Cplx v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Const;
  n->value = v;
  return n;
}

Expr make_var() { return node(NodeKind::Var); }

Expr make_add(Expr a, Expr b) {
  const bool fold = is_const(a) && is_const(b);
  Expr n = node(NodeKind::Add, std::move(a), std::move(b));
  return fold ? fold_if_clean(std::move(n)) : n;
}

Expr make_sub(Expr a, Expr b) {
  const bool fold = is_const(a) && is_const(b);
  Expr n = node(NodeKind::Sub, std::move(a), std::move(b));
  return fold ? fold_if_clean(std::move(n)) : n;
}

Expr make_mul(Expr a, Expr b) {
  const bool fold = is_const(a) && is_const(b);
  Expr n = node(NodeKind::Mul, std::move(a), std::move(b));
  return fold ? fold_if_clean(std::move(n)) : n;
}

Expr make_div(Expr a, Expr b) {
  if (is_zero_const(b)) throw Error(ErrorCode::InvalidArgument, "division by the zero constant");
  const bool fold = is_const(a) && is_const(b);
  Expr n = node(NodeKind::Div, std::move(a), std::move(b));
  return fold ? fold_if_clean(std::move(n)) : n;
}

Expr make_neg(Expr a) {
  if (is_const(a)) return make_const(-a->value);
  return node(NodeKind::Neg, std::move(a));
}

Expr make_pow(Expr base, Expr exponent) {
  const bool fold = is_const(base) && is_const(exponent);
  Expr n = node(NodeKind::Pow, std::move(base), std::move(exponent));
  return fold ? fold_if_clean(std::move(n)) : n;
}

Expr make_unary(NodeKind kind, Expr a) {
  switch (kind) {
    case NodeKind::Exp:
    case NodeKind::Log:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Tan:
    case NodeKind::Gamma:
    case NodeKind::Digamma: {
      const bool fold = is_const(a);
      Expr n = node(kind, std::move(a));
      return fold ? fold_if_clean(std::move(n)) : n;
    }
    default:
      throw Error(ErrorCode::Internal, "make_unary: not a unary function kind");
  }
}

Expr make_polygamma(int order, Expr a) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "polygamma order must be >= 1");
  const bool fold = is_const(a);
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Polygamma;
  n->order = order;
  n->a = std::move(a);
  Expr e = n;
  return fold ? fold_if_clean(std::move(e)) : e;
}

// ---- derivative -------------------------------------------------------------

Expr derivative(const Expr& e) {
  const Expr one = make_const(1.0);
  switch (e->kind) {
    case NodeKind::Const: return make_const(0.0);
    case NodeKind::Var: return one;
    case NodeKind::Add: return make_add(derivative(e->a), derivative(e->b));
    case NodeKind::Sub: return make_sub(derivative(e->a), derivative(e->b));
    case NodeKind::Mul:
      return make_add(make_mul(derivative(e->a), e->b), make_mul(e->a, derivative(e->b)));
    case NodeKind::Div:
      // (a/b)' = a'/b - a b'/b^2
      return make_sub(make_div(derivative(e->a), e->b),
                      make_div(make_mul(e->a, derivative(e->b)), make_mul(e->b, e->b)));
    case NodeKind::Neg: return make_neg(derivative(e->a));
    case NodeKind::Pow: {
      if (e->b->kind == NodeKind::Const) {
        // d a^c = c a^(c-1) a'   (exact along the same principal branch)
        const Cplx c = e->b->value;
        if (c == Cplx(0.0, 0.0)) return make_const(0.0);
        return make_mul(make_const(c),
                        make_mul(make_pow(e->a, make_const(c - 1.0)), derivative(e->a)));
      }
      // d a^b = a^b (b' log a + b a'/a)
      Expr term1 = make_mul(derivative(e->b), make_unary(NodeKind::Log, e->a));
      Expr term2 = make_div(make_mul(e->b, derivative(e->a)), e->a);
      return make_mul(e, make_add(term1, term2));
    }
    case NodeKind::Exp: return make_mul(e, derivative(e->a));
    case NodeKind::Log: return make_div(derivative(e->a), e->a);
    case NodeKind::Sin: return make_mul(make_unary(NodeKind::Cos, e->a), derivative(e->a));
    case NodeKind::Cos:
      return make_neg(make_mul(make_unary(NodeKind::Sin, e->a), derivative(e->a)));
    case NodeKind::Tan: {
      // tan' = 1 + tan^2
      Expr t = make_unary(NodeKind::Tan, e->a);
      return make_mul(make_add(one, make_mul(t, t)), derivative(e->a));
    }
    case NodeKind::Gamma:
      return make_mul(make_mul(e, make_unary(NodeKind::Digamma, e->a)), derivative(e->a));
    case NodeKind::Digamma: return make_mul(make_polygamma(1, e->a), derivative(e->a));
    case NodeKind::Polygamma:
      return make_mul(make_polygamma(e->order + 1, e->a), derivative(e->a));
  }
  throw Error(ErrorCode::Internal, "derivative: unhandled node kind");
}

// ---- shift ------------------------------------------------------------------

Expr shift(const Expr& e, Cplx delta) {
  if (delta == Cplx(0.0, 0.0)) return e;
  switch (e->kind) {
    case NodeKind::Const: return e;
    case NodeKind::Var: return make_add(make_var(), make_const(delta));
    case NodeKind::Neg: return make_neg(shift(e->a, delta));
    case NodeKind::Add: return make_add(shift(e->a, delta), shift(e->b, delta));
    case NodeKind::Sub: return make_sub(shift(e->a, delta), shift(e->b, delta));
    case NodeKind::Mul: return make_mul(shift(e->a, delta), shift(e->b, delta));
    case NodeKind::Div: return make_div(shift(e->a, delta), shift(e->b, delta));
    case NodeKind::Pow: return make_pow(shift(e->a, delta), shift(e->b, delta));
    case NodeKind::Polygamma: return make_polygamma(e->order, shift(e->a, delta));
    default: return make_unary(e->kind, shift(e->a, delta));
  }
}

Expr subtract_constant(const Expr& f, Cplx a) {
  if (a == Cplx(0.0, 0.0)) return f;
  if (f->kind == NodeKind::Const) return make_const(f->value - a);
  if (f->kind == NodeKind::Add) {
    if (f->b->kind == NodeKind::Const) {
      const Cplx c = f->b->value - a;
      return c == Cplx(0.0, 0.0) ? f->a : make_add(f->a, make_const(c));
    }
    if (f->a->kind == NodeKind::Const) {
      const Cplx c = f->a->value - a;
      return c == Cplx(0.0, 0.0) ? f->b : make_add(make_const(c), f->b);
    }
  }
  if (f->kind == NodeKind::Sub && f->b->kind == NodeKind::Const) {
    const Cplx c = f->b->value + a;
    return c == Cplx(0.0, 0.0) ? f->a : make_sub(f->a, make_const(c));
  }
  return make_sub(f, make_const(a));
}

// ---- structure --------------------------------------------------------------

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Const: return a->value == b->value;
    case NodeKind::Var: return true;
    case NodeKind::Polygamma:
      return a->order == b->order && structurally_equal(a->a, b->a);
    default:
      if (a->b || b->b) {
        if (!a->b || !b->b) return false;
        return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
      }
      return structurally_equal(a->a, b->a);
  }
}

namespace {

bool const_nonneg_int(const Expr& e) {
  if (e->kind != NodeKind::Const) return false;
  const Cplx v = e->value;
  return v.imag() == 0.0 && v.real() >= 0.0 && v.real() == std::floor(v.real()) &&
         v.real() <= 1e9;
}

}  // namespace

bool is_entire(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Const:
    case NodeKind::Var: return true;
    case NodeKind::Div:
      return e->b->kind == NodeKind::Const && is_entire(e->a);
    case NodeKind::Tan:
    case NodeKind::Gamma:
    case NodeKind::Digamma:
    case NodeKind::Polygamma: return false;
    case NodeKind::Log: return false;  // branch cut
    case NodeKind::Pow:
      // const^f is exp(f log const): entire. f^(nonneg int) is entire.
      if (e->a->kind == NodeKind::Const && e->a->value != Cplx(0.0, 0.0)) return is_entire(e->b);
      return const_nonneg_int(e->b) && is_entire(e->a);
    case NodeKind::Neg:
    case NodeKind::Exp:
    case NodeKind::Sin:
    case NodeKind::Cos: return is_entire(e->a);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul: return is_entire(e->a) && is_entire(e->b);
  }
  return false;
}

namespace {

bool rationalizable_impl(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Const:
    case NodeKind::Var: return true;
    case NodeKind::Gamma:
    case NodeKind::Digamma:
    case NodeKind::Polygamma:
    case NodeKind::Log: return false;
    // exp/sin/cos/tan of a non-entire argument would carry essential
    // singularities, which the num/den split cannot represent.
    case NodeKind::Exp:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Tan: return is_entire(e->a);
    case NodeKind::Div: return rationalizable_impl(e->a) && rationalizable_impl(e->b);
    case NodeKind::Pow: {
      if (e->a->kind == NodeKind::Const && e->a->value != Cplx(0.0, 0.0))
        return is_entire(e->b);
      // integer exponents only (negative allowed: handled as reciprocal)
      if (e->b->kind != NodeKind::Const) return false;
      const Cplx v = e->b->value;
      const bool integral =
          v.imag() == 0.0 && v.real() == std::floor(v.real()) && std::abs(v.real()) <= 1e9;
      return integral && rationalizable_impl(e->a);
    }
    case NodeKind::Neg: return rationalizable_impl(e->a);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul: return rationalizable_impl(e->a) && rationalizable_impl(e->b);
  }
  return false;
}

RationalSplit split(const Expr& e);

RationalSplit split_pow_int(const RationalSplit& base, long k) {
  const Expr one = make_const(1.0);
  Expr n = one, d = one;
  const long a = std::labs(k);
  for (long i = 0; i < a; ++i) {
    n = make_mul(n, base.num);
    d = make_mul(d, base.den);
  }
  if (k < 0) std::swap(n, d);
  return {n, d};
}

RationalSplit split(const Expr& e) {
  const Expr one = make_const(1.0);
  switch (e->kind) {
    case NodeKind::Const:
    case NodeKind::Var: return {e, one};
    case NodeKind::Neg: {
      auto s = split(e->a);
      return {make_neg(s.num), s.den};
    }
    case NodeKind::Add:
    case NodeKind::Sub: {
      auto l = split(e->a), r = split(e->b);
      Expr n1 = make_mul(l.num, r.den), n2 = make_mul(r.num, l.den);
      Expr n = e->kind == NodeKind::Add ? make_add(n1, n2) : make_sub(n1, n2);
      return {n, make_mul(l.den, r.den)};
    }
    case NodeKind::Mul: {
      auto l = split(e->a), r = split(e->b);
      return {make_mul(l.num, r.num), make_mul(l.den, r.den)};
    }
    case NodeKind::Div: {
      auto l = split(e->a), r = split(e->b);
      return {make_mul(l.num, r.den), make_mul(l.den, r.num)};
    }
    case NodeKind::Tan:
      return {make_unary(NodeKind::Sin, e->a), make_unary(NodeKind::Cos, e->a)};
    case NodeKind::Pow: {
      if (e->a->kind == NodeKind::Const) return {e, one};
      const long k = static_cast<long>(e->b->value.real());
      return split_pow_int(split(e->a), k);
    }
    default: return {e, one};
  }
}

}  // namespace

bool is_rationalizable(const Expr& e) { return rationalizable_impl(e); }

RationalSplit rationalize(const Expr& e) {
  if (!is_rationalizable(e))
    throw Error(ErrorCode::InvalidArgument, "expression does not split into numerator/denominator");
  return split(e);
}

}  // namespace merodiff
