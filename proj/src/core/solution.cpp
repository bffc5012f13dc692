#include "core/solution.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/sampling.hpp"
#include "core/util.hpp"

namespace merodiff {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PeriodicAtom PeriodicAtom::make_constant(Cplx kappa, Cplx period) {
  PeriodicAtom a;
  a.kind = Kind::Constant;
  a.constant = kappa;
  a.period = period;
  return a;
}

PeriodicAtom PeriodicAtom::exp_harmonic(long k, Cplx period) {
  PeriodicAtom a;
  a.kind = Kind::ExpHarmonic;
  a.harmonic = k;
  a.period = period;
  return a;
}

PeriodicAtom PeriodicAtom::trig(Kind which, Cplx period) {
  if (which != Kind::Sin && which != Kind::Cos && which != Kind::Tan)
    throw Error(ErrorCode::InvalidArgument, "trig atom must be sin, cos or tan");
  PeriodicAtom a;
  a.kind = which;
  a.period = period;
  return a;
}

PeriodicAtom PeriodicAtom::rational_in_q(ComplexPoly num, ComplexPoly den, Cplx period) {
  if (den.is_zero())
    throw Error(ErrorCode::InvalidArgument, "rational atom needs a nonzero denominator");
  PeriodicAtom a;
  a.kind = Kind::RationalInQ;
  a.num = std::move(num);
  a.den = std::move(den);
  a.period = period;
  return a;
}

namespace {

Expr poly_in_q_expr(const ComplexPoly& p, const Expr& q) {
  if (p.is_zero()) return make_const(0.0);
  Expr acc = make_const(p.c.back());
  for (std::size_t i = p.c.size() - 1; i-- > 0;) {
    acc = make_add(make_mul(acc, q), make_const(p.c[i]));
  }
  return acc;
}

}  // namespace

Expr PeriodicAtom::to_expr() const {
  Expr zv = make_var();
  const Cplx wreal = kTwoPi / period;       // 2 pi / c
  const Cplx wimag = Cplx(0.0, kTwoPi) / period;  // 2 pi i / c
  switch (kind) {
    case Kind::Constant: return make_const(constant);
    case Kind::ExpHarmonic:
      return make_unary(NodeKind::Exp,
                        make_mul(make_const(wimag * static_cast<double>(harmonic)), zv));
    case Kind::Sin: return make_unary(NodeKind::Sin, make_mul(make_const(wreal), zv));
    case Kind::Cos: return make_unary(NodeKind::Cos, make_mul(make_const(wreal), zv));
    case Kind::Tan: return make_unary(NodeKind::Tan, make_mul(make_const(wreal), zv));
    case Kind::RationalInQ: {
      Expr q = make_unary(NodeKind::Exp, make_mul(make_const(wimag), zv));
      Expr n = poly_in_q_expr(num, q);
      Expr d = poly_in_q_expr(den, q);
      return make_div(n, d);
    }
  }
  throw Error(ErrorCode::Internal, "atom kind");
}

std::vector<Cplx> PeriodicAtom::poles_in_disk(double radius) const {
  std::vector<Cplx> poles;
  auto lattice = [&](Cplx base) {
    // base + k * period, all k with the point inside the disk
    const long range = static_cast<long>(radius / std::abs(period)) + 2;
    for (long k = -range; k <= range; ++k) {
      const Cplx z = base + static_cast<double>(k) * period;
      if (std::abs(z) <= radius + 1e-9) poles.push_back(z);
    }
  };
  switch (kind) {
    case Kind::Tan: {
      // tan(2 pi z / c) poles at z = c (1/4 + k/2)
      lattice(period * 0.25);
      lattice(period * 0.75);
      break;
    }
    case Kind::RationalInQ: {
      ComplexPoly d = den;
      d.trim();
      if (d.degree() < 1) break;
      const RootSet rs = find_roots(d, 1e-8);
      for (const auto& r : rs.roots) {
        if (r.root == Cplx(0.0, 0.0) || std::abs(r.root) < 1e-300) continue;  // q = 0 unreachable
        // q0 = exp(2 pi i z / c)  =>  z = c (log|q0| + i arg q0 + 2 pi i k) / (2 pi i)
        const Cplx logq0 = std::log(r.root);
        lattice(period * logq0 / Cplx(0.0, kTwoPi));
      }
      break;
    }
    default: break;
  }
  return poles;
}

bool PeriodicAtom::check_periodicity(int count, double tol, std::uint64_t seed) const {
  const Expr e = to_expr();
  std::uint64_t st = seed + 12345;
  int checked = 0;
  int attempts = 0;
  while (checked < count && attempts < count * 20) {
    ++attempts;
    const Cplx z{8.0 * uniform01(st) - 4.0, 8.0 * uniform01(st) - 4.0};
    const EvalOutcome a = eval(e, z);
    const EvalOutcome b = eval(e, z + period);
    if (!a.ok() || !b.ok()) continue;
    const double scale = std::max({std::abs(a.value), std::abs(b.value), 1e-30});
    if (std::abs(a.value - b.value) > tol * scale) return false;
    ++checked;
  }
  return checked >= count / 2;
}

std::string PeriodicAtom::describe() const {
  switch (kind) {
    case Kind::Constant: return "constant " + format_complex_short(constant);
    case Kind::ExpHarmonic: return "exp(2*pi*i*" + std::to_string(harmonic) + "*z/c)";
    case Kind::Sin: return "sin(2*pi*z/c)";
    case Kind::Cos: return "cos(2*pi*z/c)";
    case Kind::Tan: return "tan(2*pi*z/c)";
    case Kind::RationalInQ: return "rational in q = exp(2*pi*i*z/c)";
  }
  return "?";
}

GeneralSolution build_general_solution(const LinearDifferenceOperator& op, Cplx A,
                                       std::span<const PeriodicAtom> atoms, bool generic_mode) {
  GeneralSolution gs;
  gs.op = op;
  gs.eigenvalue = A;
  gs.generic_mode = generic_mode;
  if (A == Cplx(0.0, 0.0)) {
    if (!generic_mode)
      throw Error(ErrorCode::InvalidArgument,
                  "eigenvalue A = 0 admits no growth-ratio terms; pass generic mode to solve "
                  "the plain recurrence");
    gs.diagnostics.push_back("generic-solver mode: A = 0, solving sum a_j f(z+jc) = 0 directly");
  }

  const ComplexPoly P = characteristic_poly(op, A);
  if (P.degree() < 1)
    throw Error(ErrorCode::InvalidArgument, "characteristic polynomial is constant");
  gs.roots = find_roots(P);
  if (!gs.roots.converged)
    for (const auto& d : gs.roots.diagnostics) gs.diagnostics.push_back(d);

  std::size_t atom_index = 0;
  auto next_atom = [&](int root_index) -> PeriodicAtom {
    if (atoms.empty()) return PeriodicAtom::make_constant(Cplx(1.0, 0.0), op.shift());
    PeriodicAtom a = atoms[atom_index % atoms.size()];
    ++atom_index;
    a.period = op.shift();
    (void)root_index;
    return a;
  };

  int produced = 0;
  for (std::size_t i = 0; i < gs.roots.roots.size(); ++i) {
    const RootCluster& rc = gs.roots.roots[i];
    if (std::abs(rc.root) < 1e-12) {
      gs.diagnostics.push_back(
          "characteristic root 0 (multiplicity " + std::to_string(rc.multiplicity) +
          ") contributes no term: 0^(z/c) is undefined");
      continue;
    }
    const PeriodicAtom atom = next_atom(static_cast<int>(i));
    if (!atom.check_periodicity())
      throw Error(ErrorCode::Numeric,
                  "atom failed the periodicity gate: " + atom.describe());
    for (int m = 0; m < rc.multiplicity; ++m) {
      gs.terms.push_back(SolutionTerm{rc.root, m, atom});
    }
    ++produced;
  }
  if (produced == 0)
    throw Error(ErrorCode::Numeric, "all characteristic roots are zero; no terms to build");
  return gs;
}

Expr to_expr(const GeneralSolution& gs) {
  if (gs.terms.empty()) return make_const(0.0);
  const Cplx c = gs.op ? gs.op->shift() : gs.terms.front().atom.period;
  Expr acc;
  Expr zv = make_var();
  for (const SolutionTerm& t : gs.terms) {
    // z^m * exp((z/c) Log rho) * atom(z)
    Expr growth = make_unary(
        NodeKind::Exp, make_mul(make_div(zv, make_const(c)),
                                make_unary(NodeKind::Log, make_const(t.root))));
    Expr term = growth;
    if (t.power > 0)
      term = make_mul(make_pow(zv, make_const(static_cast<double>(t.power))), term);
    term = make_mul(term, t.atom.to_expr());
    acc = acc ? make_add(acc, term) : term;
  }
  return acc;
}

ResidualReport verify_general_solution(const GeneralSolution& gs, const VerifyOptions& opt) {
  if (!gs.op)
    throw Error(ErrorCode::InvalidArgument, "solution carries no operator to verify against");
  const LinearDifferenceOperator& op = *gs.op;
  const Expr f = to_expr(gs);

  // Pole set of all atoms, extended so shifted arguments z + j c clear it too.
  const double reach = opt.radius + (op.order() + 1) * std::abs(op.shift());
  std::vector<Cplx> poles;
  for (const SolutionTerm& t : gs.terms) {
    const auto ps = t.atom.poles_in_disk(reach);
    poles.insert(poles.end(), ps.begin(), ps.end());
  }

  std::vector<Cplx> samples;
  for (Cplx z : disk_samples(opt.samples, opt.radius, opt.seed)) {
    bool clear = true;
    for (int j = 0; j <= op.order() && clear; ++j) {
      const Cplx zj = z + static_cast<double>(j) * op.shift();
      for (const Cplx p : poles) {
        if (std::abs(zj - p) < opt.pole_clearance) {
          clear = false;
          break;
        }
      }
    }
    if (clear) samples.push_back(z);
  }
  if (samples.empty())
    throw Error(ErrorCode::Numeric, "every sample sits near an atom pole; shrink pole_clearance");

  if (gs.eigenvalue != Cplx(0.0, 0.0)) return residual(op, f, gs.eigenvalue, samples);

  // A = 0: scale by the individual operator terms instead of |A f| = 0.
  const Expr lhs = apply_difference(op, f);
  std::vector<Expr> scale_terms;
  for (int j = 0; j <= op.order(); ++j) {
    scale_terms.push_back(make_mul(make_const(op.coefficients()[j]),
                                   shift(f, static_cast<double>(j) * op.shift())));
  }
  return expression_residual(lhs, make_const(0.0), samples, scale_terms);
}

QuadraticRoots quadratic_roots(Cplx a2, Cplx a1, Cplx a0, Cplx B) {
  if (a2 == Cplx(0.0, 0.0))
    throw Error(ErrorCode::InvalidArgument, "quadratic case requires a2 != 0");
  QuadraticRoots out;
  out.discriminant = a1 * a1 + 4.0 * a2 * B - 4.0 * a2 * a0;
  const double scale =
      std::norm(a1) + 4.0 * std::abs(a2) * (std::abs(a0) + std::abs(B)) + 1e-300;
  const double mag = std::abs(out.discriminant);
  if (mag <= 1e-12 * scale) {
    out.double_root = true;
    out.r1 = out.r2 = -a1 / (2.0 * a2);
    return out;
  }
  out.near_degenerate = mag <= 1e-6 * scale;
  // stable quadratic formula on a2 w^2 + a1 w + (a0 - B)
  const Cplx s = std::sqrt(out.discriminant);
  const Cplx q = std::abs(-a1 + s) >= std::abs(-a1 - s) ? (-a1 + s) * 0.5 : (-a1 - s) * 0.5;
  out.r1 = q / a2;
  out.r2 = (a0 - B) / q;
  if (std::abs(out.r1) > std::abs(out.r2)) std::swap(out.r1, out.r2);
  return out;
}

}  // namespace merodiff
