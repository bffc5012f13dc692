// Expression trees in one complex variable z.
//
// Nodes are immutable and shared; every operation below returns a fresh tree.
// Builders fold constant subtrees but never rewrite algebraically, so a
// printed expression reparses to the same shape.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/complexio.hpp"

namespace merodiff {

enum class NodeKind {
  Const,
  Var,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,       // principal branch for non-integer exponents
  Exp,
  Log,       // principal branch
  Sin,
  Cos,
  Tan,
  Gamma,
  Digamma,
  Polygamma,  // psi^(m), m >= 1; keeps differentiation closed
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  Cplx value{0.0, 0.0};  // Const only
  int order = 0;         // Polygamma only
  Expr a, b;             // children (b only for binary kinds)
};

// ---- constructors ----------------------------------------------------------
Expr make_const(Cplx v);
Expr make_var();
Expr make_add(Expr a, Expr b);
Expr make_sub(Expr a, Expr b);
Expr make_mul(Expr a, Expr b);
Expr make_div(Expr a, Expr b);  // throws if b is the literal zero constant
Expr make_neg(Expr a);
Expr make_pow(Expr base, Expr exponent);
Expr make_unary(NodeKind kind, Expr a);           // Exp..Digamma
Expr make_polygamma(int order, Expr a);           // order >= 1

// ---- evaluation ------------------------------------------------------------
struct EvalOutcome {
  Cplx value{0.0, 0.0};
  bool pole = false;      // division denominator under pole-epsilon, or gamma pole
  bool overflow = false;  // |value| above the overflow cap somewhere in the tree
  bool ok() const { return !pole && !overflow; }
};

inline constexpr double kPoleEpsilon = 1e-12;
inline constexpr double kOverflowCap = 1e300;

EvalOutcome eval(const Expr& e, Cplx z);

// Magnitude-oriented evaluation through the big-exponent representation;
// log_abs is the natural log of |f(z)| (-inf at a zero). pole marks an exact
// singular hit, not a near-miss.
struct LogAbsOutcome {
  double log_abs = 0.0;
  double arg = 0.0;
  bool pole = false;
  bool overflow = false;
  bool ok() const { return !pole && !overflow; }
};
LogAbsOutcome log_magnitude(const Expr& e, Cplx z);

// Evaluation with a first-order running error bound: the rounding error of
// `value` is about machine-eps * error_bound. Contour walks use it to refuse
// samples whose value is cancellation noise (e.g. (2 e^z + 1) - 1 deep in
// the left half plane).
struct ConditionedEval {
  Cplx value{0.0, 0.0};
  double error_bound = 0.0;
  bool pole = false;
  bool overflow = false;
  bool ok() const { return !pole && !overflow; }
};
ConditionedEval eval_conditioned(const Expr& e, Cplx z);

// ---- transforms ------------------------------------------------------------
Expr derivative(const Expr& e);
Expr shift(const Expr& e, Cplx delta);  // z -> z + delta

// f - a with the constant folded into an existing additive constant of f
// when one sits on the outermost sum, so that (2 e^z + 1) - 1 becomes
// 2 e^z instead of a catastrophically cancelling tree.
Expr subtract_constant(const Expr& f, Cplx a);

// ---- text ------------------------------------------------------------------
// Grammar: numbers (12, 3.5, 2e-3) with optional imaginary suffix i;
// constants pi, e, i; variable z; + - * / ^ with ^ right-associative;
// functions exp log sin cos tan gamma digamma sqrt pow(a,b) polygamma(m,x);
// parentheses; whitespace insignificant.
Expr parse_expression(const std::string& text);
std::string print_expression(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// True when no subtree can produce a pole or branch point: no Div, Tan,
// Gamma-family, and no Pow except (const base)^anything or base^(const
// nonnegative integer).
bool is_entire(const Expr& e);

// True when the only pole sources are Div/Tan (no Gamma family, no branch
// cuts), so the tree splits exactly into numerator/denominator.
bool is_rationalizable(const Expr& e);

// Splits e = num/den with num, den pole-free (requires is_rationalizable).
struct RationalSplit {
  Expr num, den;
};
RationalSplit rationalize(const Expr& e);

}  // namespace merodiff
