#include "core/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/util.hpp"

namespace merodiff {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double logplus(double logabs) { return std::max(logabs, 0.0); }

// log+|f| at angle theta, or nullopt on a flagged evaluation. The magnitude
// itself is capped at exp(644) ~ 1e280 by the caller contract; the scaled
// evaluator keeps even e^(z^2)-type growth representable, so the cap is
// rarely the binding constraint.
std::optional<double> node_value(const Expr& f, double r, double theta) {
  const Cplx z = r * Cplx(std::cos(theta), std::sin(theta));
  const LogAbsOutcome v = log_magnitude(f, z);
  if (!v.ok()) return std::nullopt;
  if (v.log_abs == -std::numeric_limits<double>::infinity()) return 0.0;  // log+ of 0
  return logplus(v.log_abs);
}

// Trapezoid piece on [a, b] with adaptive bisection when an endpoint is
// flagged; at max depth flagged mass is dropped and tallied.
void refine(const Expr& f, double r, double a, double b, std::optional<double> fa,
            std::optional<double> fb, int depth, double& integral, double& dropped) {
  if (fa && fb) {
    integral += 0.5 * (*fa + *fb) * (b - a);
    return;
  }
  if (depth <= 0) {
    if (fa || fb) {
      integral += (fa ? *fa : *fb) * (b - a);
    } else {
      dropped += b - a;
    }
    return;
  }
  const double m = 0.5 * (a + b);
  const auto fm = node_value(f, r, m);
  refine(f, r, a, m, fa, fm, depth - 1, integral, dropped);
  refine(f, r, m, b, fm, fb, depth - 1, integral, dropped);
}

}  // namespace

RadialGrid geometric_grid(double rmin, double rmax, int count, int nodes) {
  if (!(rmin > 0) || !(rmax > rmin) || count < 8)
    throw Error(ErrorCode::InvalidArgument, "grid needs 0 < rmin < rmax and at least 8 radii");
  RadialGrid g;
  g.nodes_per_circle = nodes;
  const double q = std::pow(rmax / rmin, 1.0 / (count - 1));
  double r = rmin;
  for (int i = 0; i < count; ++i, r *= q) g.radii.push_back(r);
  g.radii.back() = rmax;
  return g;
}

double proximity(const Expr& f, double r, int nodes) {
  if (!(r > 0) || nodes < 64)
    throw Error(ErrorCode::InvalidArgument, "proximity needs r > 0 and >= 64 nodes");

  const auto values = parallel_map<std::optional<double>>(
      static_cast<std::size_t>(nodes),
      [&](std::size_t j) { return node_value(f, r, kTwoPi * static_cast<double>(j) / nodes); });

  int flagged = 0;
  for (const auto& v : values)
    if (!v) ++flagged;
  if (flagged > nodes / 5)
    throw Error(ErrorCode::Numeric,
                "more than 20% of quadrature nodes are singular on |z| = " + format_double(r));

  std::vector<double> pieces(values.size());
  double dropped = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double a = kTwoPi * static_cast<double>(j) / nodes;
    const double b = kTwoPi * static_cast<double>(j + 1) / nodes;
    const auto& fa = values[j];
    const auto& fb = values[(j + 1) % values.size()];
    double piece = 0.0;
    refine(f, r, a, b, fa, fb, 4, piece, dropped);
    pieces[j] = piece;
  }
  return pairwise_sum(pieces) / kTwoPi;
}

double counting_integral(const std::vector<PointCount>& points, double r) {
  double n0 = 0.0;
  std::vector<double> logs;
  for (const auto& p : points) {
    const double d = std::abs(p.location);
    if (d < 1e-9 * std::max(1.0, r)) {
      n0 += p.multiplicity;
    } else if (d <= r) {
      logs.push_back(p.multiplicity * std::log(r / d));
    }
  }
  return pairwise_sum(logs) + n0 * std::log(r);
}

double counting(const Expr& f, double r, CountTarget target, Cplx a) {
  if (target == CountTarget::Poles) {
    if (is_entire(f)) return 0.0;
    const ZeroCountReport rep = count_zeros(f, r);
    if (!rep.ok)
      throw Error(ErrorCode::Numeric, "pole counting failed: " +
                                          (rep.diagnostics.empty() ? "?" : rep.diagnostics[0]));
    return counting_integral(rep.poles, rep.radius_used);
  }
  const Expr g = subtract_constant(f, a);
  const ZeroCountReport rep = count_zeros(g, r);
  if (!rep.ok)
    throw Error(ErrorCode::Numeric, "zero counting failed: " +
                                        (rep.diagnostics.empty() ? "?" : rep.diagnostics[0]));
  return counting_integral(rep.zeros, rep.radius_used);
}

NevanlinnaReport characteristic(const Expr& f, const RadialGrid& grid) {
  if (grid.radii.size() < 8)
    throw Error(ErrorCode::InvalidArgument, "characteristic needs >= 8 radii");
  NevanlinnaReport rep;
  rep.radii = grid.radii;
  const double rmax = grid.radii.back();

  // One pole hunt at the top radius serves every smaller one.
  std::vector<PointCount> poles;
  if (!is_entire(f)) {
    const ZeroCountReport zc = count_zeros(f, rmax);
    if (!zc.ok) {
      for (const auto& d : zc.diagnostics) rep.diagnostics.push_back(d);
    }
    poles = zc.poles;
  }

  for (const double r : grid.radii) {
    const double m = proximity(f, r, grid.nodes_per_circle);
    const double N = counting_integral(poles, r);
    rep.m.push_back(m);
    rep.N.push_back(N);
    rep.T.push_back(m + N);
  }

  for (std::size_t i = 0; i + 1 < rep.T.size(); ++i) {
    if (rep.T[i + 1] < rep.T[i] * 0.95 - 1e-12) {
      rep.monotone_ok = false;
      rep.diagnostics.push_back("T(r) dips more than 5% between " + format_double(rep.radii[i]) +
                                " and " + format_double(rep.radii[i + 1]));
    }
  }

  estimate_order(rep);
  return rep;
}

namespace {

OrderFit slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  OrderFit fit;
  if (xs.size() < 3) {
    fit.degenerate = true;
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  // flat data (all T equal within noise) is a degenerate fit: slope 0
  if (std::abs(denom) < 1e-12 || n * syy - sy * sy < 1e-16 * (1.0 + sy * sy)) {
    fit.degenerate = true;
    return fit;
  }
  fit.value = (n * sxy - sx * sy) / denom;
  return fit;
}

}  // namespace

void estimate_order(NevanlinnaReport& rep) {
  const std::size_t n = rep.T.size();
  const std::size_t lo = n / 2;
  std::vector<double> lx, ly, hx, hy;
  for (std::size_t i = lo; i < n; ++i) {
    if (rep.T[i] > 0) {
      lx.push_back(std::log(rep.radii[i]));
      ly.push_back(std::log(rep.T[i]));
    }
    if (rep.T[i] > 1.05) {
      hx.push_back(std::log(rep.radii[i]));
      hy.push_back(std::log(std::log(rep.T[i])));
    }
  }
  rep.order = slope_fit(lx, ly);
  if (rep.order.value < 0) rep.order.value = 0;
  rep.hyper_order = slope_fit(hx, hy);
  if (rep.hyper_order.degenerate || rep.hyper_order.value < 0) rep.hyper_order.value = 0;
  if (rep.order.value > 5) rep.order_note = "> 5";
}

namespace {

DeficiencyEstimate deficiency_impl(const Expr& recip, Cplx a, bool at_inf, const Expr& f,
                                   const RadialGrid& grid, const NevanlinnaReport* pre) {
  NevanlinnaReport local;
  const NevanlinnaReport* T = pre;
  if (!T) {
    local = characteristic(f, grid);
    T = &local;
  }
  DeficiencyEstimate est;
  est.value = a;
  est.at_infinity = at_inf;
  const std::size_t n = T->T.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "deficiency needs >= 3 radii");
  for (std::size_t i = n - 3; i < n; ++i) {
    const double Ti = T->T[i];
    if (Ti < 1e-9)
      throw Error(ErrorCode::Numeric, "characteristic is ~0; deficiency undefined at this scale");
    const double m = proximity(recip, T->radii[i], grid.nodes_per_circle);
    est.ratios.push_back(m / Ti);
  }
  std::vector<double> sorted = est.ratios;
  std::sort(sorted.begin(), sorted.end());
  est.delta = sorted[sorted.size() / 2];
  return est;
}

}  // namespace

DeficiencyEstimate deficiency(const Expr& f, Cplx a, const RadialGrid& grid,
                              const NevanlinnaReport* pre) {
  const Expr shifted = subtract_constant(f, a);
  return deficiency_impl(make_div(make_const(1.0), shifted), a, false, f, grid, pre);
}

DeficiencyEstimate deficiency_infinity(const Expr& f, const RadialGrid& grid,
                                       const NevanlinnaReport* pre) {
  return deficiency_impl(f, Cplx(0.0, 0.0), true, f, grid, pre);
}

BorelEstimate borel_estimate(const Expr& f, Cplx a, const RadialGrid& grid,
                             const NevanlinnaReport* pre) {
  NevanlinnaReport local;
  const NevanlinnaReport* T = pre;
  if (!T) {
    local = characteristic(f, grid);
    T = &local;
  }
  BorelEstimate est;
  est.value = a;
  est.order = T->order.value;

  const Expr g = subtract_constant(f, a);
  const ZeroCountReport zc = count_zeros(g, grid.radii.back());
  if (!zc.ok)
    throw Error(ErrorCode::Numeric, "zero counting failed: " +
                                        (zc.diagnostics.empty() ? "?" : zc.diagnostics[0]));
  for (const double r : grid.radii) {
    double n = 0;
    for (const auto& z : zc.zeros)
      if (std::abs(z.location) <= r) n += z.multiplicity;
    est.zero_counts.push_back(n);
  }

  std::vector<double> xs, ys;
  for (std::size_t i = est.zero_counts.size() / 2; i < est.zero_counts.size(); ++i) {
    if (est.zero_counts[i] > 0) {
      xs.push_back(std::log(grid.radii[i]));
      ys.push_back(std::log(est.zero_counts[i]));
    }
  }
  const OrderFit fit = slope_fit(xs, ys);
  est.lambda = fit.degenerate ? 0.0 : std::max(fit.value, 0.0);
  est.lambda_degenerate = fit.degenerate;
  est.exceptional = est.lambda < est.order - 0.2;
  return est;
}

double ratio_proximity(const Expr& f, Cplx eta1, Cplx eta2, int k, double r, int nodes) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 0");
  Expr num = f;
  for (int i = 0; i < k; ++i) num = derivative(num);
  num = shift(num, eta1);
  const Expr den = shift(f, eta2);
  return proximity(make_div(num, den), r, nodes);
}

}  // namespace merodiff
