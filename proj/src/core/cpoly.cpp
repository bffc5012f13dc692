// Polynomial root finding.
//
// Aberth-Ehrlich converges fast for simple roots but smears an m-fold root
// into a cluster of radius ~eps^(1/m), which at double precision is far wider
// than any fixed clustering tolerance (e.g. ~6e-4 for m = 5). So clustering
// is adaptive: components that fail a root-validity test are merged with
// their nearest neighbour and re-polished on p^(m-1) until the derivative
// pattern of an m-fold root is confirmed, or the attempt is flagged
// near-degenerate.
#include "core/cpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace merodiff {

namespace {

constexpr int kMaxAberthIters = 500;

struct Component {
  std::vector<Cplx> members;
  Cplx refined{0.0, 0.0};
  int multiplicity = 0;
  bool valid = false;

  Cplx centroid() const {
    Cplx s{0.0, 0.0};
    for (Cplx m : members) s += m;
    return s / static_cast<double>(members.size());
  }
  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        d = std::max(d, std::abs(members[i] - members[j]));
    return d;
  }
};

// Termwise absolute bound on |p^(j)(z)|; the natural local noise scale.
double deriv_bound(const ComplexPoly& p, int j, double az) {
  double s = 0.0;
  for (std::size_t i = static_cast<std::size_t>(j); i < p.c.size(); ++i) {
    double fall = 1.0;
    for (int t = 0; t < j; ++t) fall *= static_cast<double>(i - t);
    s += std::abs(p.c[i]) * fall * std::pow(std::max(1.0, az), static_cast<double>(i) - j);
  }
  return s;
}

std::vector<Cplx> aberth(const ComplexPoly& p, bool& converged) {
  const int n = p.degree();
  const ComplexPoly dp = p.derivative();
  // Cauchy bound for the initial circle; fixed angular offset keeps runs
  // reproducible and off the axes.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p.c[i] / p.c[n]));
  const double r0 = 1.0 + bound;
  std::vector<Cplx> w(n);
  std::vector<bool> frozen(n, false);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n + 0.4;
    w[k] = r0 * Cplx(std::cos(th), std::sin(th));
  }

  converged = false;
  for (int iter = 0; iter < kMaxAberthIters && !converged; ++iter) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      const Cplx pv = p.eval(w[i]);
      // An approximation is done when its residual reaches rounding noise
      // (the best any point iteration can do near a multiple root).
      if (std::abs(pv) <= 4.0 * 2.220446049250313e-16 * deriv_bound(p, 0, std::abs(w[i]))) {
        frozen[i] = true;
        continue;
      }
      const Cplx dv = dp.eval(w[i]);
      Cplx newton = dv == Cplx(0.0, 0.0) ? Cplx(0.0, 0.0) : pv / dv;
      if (newton == Cplx(0.0, 0.0)) {
        // p' vanished away from a root: nudge deterministically
        w[i] += Cplx(1e-8, 1e-8) * (1.0 + std::abs(w[i]));
        converged = false;
        continue;
      }
      Cplx s{0.0, 0.0};
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (w[i] - w[j]);
      const Cplx denom = 1.0 - newton * s;
      const Cplx step = denom == Cplx(0.0, 0.0) ? newton : newton / denom;
      w[i] -= step;
      if (std::abs(step) > 1e-14 * (1.0 + std::abs(w[i]))) converged = false;
    }
  }
  return w;
}

// Newton refinement on q (some derivative of p), from z0.
Cplx newton_refine(const ComplexPoly& q, Cplx z0, int iters) {
  const ComplexPoly dq = q.derivative();
  Cplx z = z0;
  for (int i = 0; i < iters; ++i) {
    const Cplx qv = q.eval(z);
    const Cplx dv = dq.eval(z);
    if (dv == Cplx(0.0, 0.0)) break;
    const Cplx step = qv / dv;
    z -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

double eps_noise(const ComplexPoly& p, int j, double az) {
  return 64.0 * 2.220446049250313e-16 * deriv_bound(p, j, az);
}

// Derivative-magnitude confirmation for candidate (z*, m): Taylor terms
// |p^(j)(z*)|/j! rho^j for j < m must vanish against the m-th (relative
// threshold 1e-4) or sit at rounding noise, and the m-th must rise above
// noise.
bool candidate_valid(const std::vector<ComplexPoly>& derivs, Cplx z, int m, double rho) {
  const ComplexPoly& p = derivs[0];
  const double az = std::abs(z);
  if (m >= static_cast<int>(derivs.size())) return false;
  double fact = 1.0;
  std::vector<double> taylor(m + 1), noise(m + 1);
  double rpow = 1.0;
  for (int j = 0; j <= m; ++j) {
    if (j > 1) fact *= j;
    taylor[j] = std::abs(derivs[j].eval(z)) / fact * rpow;
    noise[j] = eps_noise(p, j, az) / fact * rpow;
    rpow *= rho;
  }
  if (taylor[m] <= noise[m]) return false;  // m-th derivative lost in noise
  for (int j = 0; j < m; ++j) {
    if (taylor[j] > 1e-4 * taylor[m] && taylor[j] > noise[j]) return false;
  }
  return true;
}

}  // namespace

RootSet find_roots(const ComplexPoly& p_in, double cluster_tol) {
  ComplexPoly p = p_in;
  p.trim();
  if (p.degree() < 1)
    throw Error(ErrorCode::InvalidArgument, "root finding requires degree >= 1");

  RootSet out;

  // Exact zero roots come off first.
  int zero_mult = 0;
  while (!p.c.empty() && p.c.front() == Cplx(0.0, 0.0)) {
    p.c.erase(p.c.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.push_back({Cplx(0.0, 0.0), zero_mult, false});

  if (p.degree() >= 1) {
    // Scale coefficients to tame magnitudes; roots are unchanged.
    double maxc = 0.0;
    for (Cplx v : p.c) maxc = std::max(maxc, std::abs(v));
    for (Cplx& v : p.c) v /= maxc;

    bool conv = false;
    std::vector<Cplx> approx = aberth(p, conv);
    if (!conv) {
      out.converged = false;
      out.diagnostics.push_back("simultaneous iteration did not reach tolerance; results are best-effort");
    }

    std::vector<ComplexPoly> derivs;
    derivs.push_back(p);
    for (int j = 0; j < p.degree(); ++j) derivs.push_back(derivs.back().derivative());

    // Single-link clustering. Two approximations join when they are close AND
    // the polynomial at their midpoint is at rounding-noise level: a genuine
    // m-fold root smears into a blur of radius ~eps^(1/m) whose interior
    // evaluates to noise, whereas the midpoint of two distinct roots d apart
    // evaluates to ~ (d/2)^2 * |rest|, far above noise for separations the
    // finder is expected to resolve.
    const double merge_cap = std::max(1e-2, 10.0 * cluster_tol);
    auto mergeable = [&](Cplx a, Cplx b) {
      const double d = std::abs(a - b);
      if (d <= cluster_tol) return true;
      if (d > merge_cap) return false;
      const Cplx mid = 0.5 * (a + b);
      return std::abs(p.eval(mid)) <= 4.0 * eps_noise(p, 0, std::abs(mid));
    };

    std::vector<Component> comps;
    std::vector<bool> used(approx.size(), false);
    for (std::size_t i = 0; i < approx.size(); ++i) {
      if (used[i]) continue;
      Component c;
      std::vector<std::size_t> stack{i};
      used[i] = true;
      while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        c.members.push_back(approx[k]);
        for (std::size_t j = 0; j < approx.size(); ++j) {
          if (!used[j] && mergeable(approx[j], approx[k])) {
            used[j] = true;
            stack.push_back(j);
          }
        }
      }
      comps.push_back(std::move(c));
    }

    for (auto& c : comps) {
      const int m = static_cast<int>(c.members.size());
      const Cplx z = m == 1 ? newton_refine(derivs[0], c.members[0], 16)
                            : newton_refine(derivs[m - 1], c.centroid(), 24);
      const double rho =
          std::max({c.diameter(), 10.0 * cluster_tol, 1e-12 * std::abs(z)});
      c.refined = z;
      c.multiplicity = m;
      c.valid = candidate_valid(derivs, z, m, rho);
    }

    for (auto& c : comps) {
      RootCluster rc;
      rc.root = c.refined;
      rc.multiplicity = c.multiplicity;
      rc.near_degenerate = !c.valid;
      if (!c.valid)
        out.diagnostics.push_back("multiplicity confirmation inconclusive near " +
                                  format_complex_short(c.refined) + "; reported as near-degenerate");
      out.roots.push_back(rc);
    }
  }

  std::sort(out.roots.begin(), out.roots.end(), [](const RootCluster& a, const RootCluster& b) {
    const double ma = std::abs(a.root), mb = std::abs(b.root);
    if (ma != mb) return ma < mb;
    return std::arg(a.root) < std::arg(b.root);
  });
  return out;
}

}  // namespace merodiff
