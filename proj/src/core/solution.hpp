// Construction and verification of eigen-solutions of L(f) = A f.
//
// Each characteristic root rho != 0 of multiplicity N contributes terms
// z^m rho^(z/c) pi(z), m = 0..N-1, with pi a period-c coefficient function
// drawn from a small atom library. rho^(z/c) takes the principal branch;
// alternate branches differ by exp(2 pi i k z / c), itself period-c, so the
// represented solution set is branch-independent.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/diff_operator.hpp"
#include "core/expr.hpp"

namespace merodiff {

struct PeriodicAtom {
  enum class Kind { Constant, ExpHarmonic, Sin, Cos, Tan, RationalInQ };

  Kind kind = Kind::Constant;
  Cplx period{1.0, 0.0};
  Cplx constant{1.0, 0.0};  // Constant
  long harmonic = 1;        // ExpHarmonic: exp(2 pi i k z / c)
  ComplexPoly num, den;     // RationalInQ in q = exp(2 pi i z / c)

  static PeriodicAtom make_constant(Cplx kappa, Cplx period);
  static PeriodicAtom exp_harmonic(long k, Cplx period);
  static PeriodicAtom trig(Kind which, Cplx period);  // Sin, Cos or Tan
  static PeriodicAtom rational_in_q(ComplexPoly num, ComplexPoly den, Cplx period);

  Expr to_expr() const;
  // Poles inside |z| <= radius (empty for pole-free kinds).
  std::vector<Cplx> poles_in_disk(double radius) const;
  // Numerical periodicity gate: atom(z+period) == atom(z) at `count` points.
  bool check_periodicity(int count = 50, double tol = 1e-10, std::uint64_t seed = 0) const;
  std::string describe() const;
};

struct SolutionTerm {
  Cplx root;         // rho != 0
  int power = 0;     // m < multiplicity of rho
  PeriodicAtom atom;
};

struct GeneralSolution {
  std::vector<SolutionTerm> terms;
  RootSet roots;
  std::optional<LinearDifferenceOperator> op;  // operator echo
  Cplx eigenvalue{0.0, 0.0};
  bool generic_mode = false;
  std::string branch_note = "principal";
  std::vector<std::string> diagnostics;
};

// Roots with multiplicities from the characteristic polynomial; zero roots
// contribute no term and are reported in diagnostics. atoms are cycled over
// the nonzero roots (default: constant 1). A = 0 requires generic_mode.
GeneralSolution build_general_solution(const LinearDifferenceOperator& op, Cplx A,
                                       std::span<const PeriodicAtom> atoms = {},
                                       bool generic_mode = false);

Expr to_expr(const GeneralSolution& gs);

struct VerifyOptions {
  std::size_t samples = 100;
  double radius = 5.0;
  std::uint64_t seed = 0;
  double pole_clearance = 1e-3;
};

// Residual of L(to_expr(gs)) against A*to_expr(gs); samples near atom poles
// (for any shifted argument z + j c) are skipped and reported.
ResidualReport verify_general_solution(const GeneralSolution& gs, const VerifyOptions& = {});

// Quadratic characteristic a2 w^2 + a1 w + (a0 - B): closed-form roots plus
// the degenerate-discriminant classification.
struct QuadraticRoots {
  bool double_root = false;
  bool near_degenerate = false;  // |disc| small but not held to be exactly 0
  Cplx r1, r2;                   // r1 == r2 when double_root
  Cplx discriminant;             // a1^2 + 4 a2 B - 4 a2 a0
};
QuadraticRoots quadratic_roots(Cplx a2, Cplx a1, Cplx a0, Cplx B);

}  // namespace merodiff
