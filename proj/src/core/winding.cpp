#include "core/winding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "core/error.hpp"

namespace merodiff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Contour walking. The winding number (1/2pi) * closed-contour increment of
// arg f is accumulated from principal-branch phase differences; a segment is
// bisected until its phase step drops under pi/2, which pins the branch.
// Numerically this is the imaginary part of the adaptive trapezoid quadrature
// of f'/f dz, evaluated without needing f'.

struct WalkOutcome {
  bool ok = false;
  long winding = 0;
  double variation = 0.0;  // sum of |phase steps|, a pole/zero proximity hint
  std::string why;
};

// A segment is accepted only when the endpoint values are close in the
// relative sense (|df| <= 0.45 max|f|, which pins the phase step under
// ~0.47 rad regardless of magnitude drift) AND |f'/f| * chord at the
// endpoints cannot wind the phase past ~1.2 rad. The pair makes phase
// aliasing (a silent extra 2 pi k) require a feature invisible from both
// endpoints at every refinement depth.
class ContourWalker {
 public:
  explicit ContourWalker(const Expr& f) : f_(f), df_(derivative(f)) {}

  long evals = 0;

  // Path is a closed curve given by `point` over t in [0,1].
  WalkOutcome walk(const std::function<Cplx(double)>& point, int initial_segments,
                   int max_depth = 42) {
    WalkOutcome out;
    double total = 0.0;

    struct Node {
      double t;
      Cplx z;
      Cplx fv;
      double phase;
      double mag;
      double rate;  // |f'/f|; 0 when f' flagged (rate test then defers)
    };

    std::vector<std::pair<double, int>> stack;  // (t, depth) right endpoints
    for (int i = initial_segments; i >= 1; --i)
      stack.emplace_back(static_cast<double>(i) / initial_segments, 0);

    bool sample_failed = false;
    auto sample = [&](double t) -> std::optional<Node> {
      ++evals;
      const Cplx z = point(t);
      const ConditionedEval r = eval_conditioned(f_, z);
      if (!r.ok()) return std::nullopt;
      const double mag = std::abs(r.value);
      if (mag < 1e-280 || !std::isfinite(mag)) return std::nullopt;
      // cancellation guard: a value at rounding-noise level has no usable phase
      if (mag < 1.5e-14 * r.error_bound) return std::nullopt;
      const EvalOutcome d = eval(df_, z);
      const double rate = d.ok() ? std::abs(d.value) / mag : 0.0;
      return Node{t, z, r.value, std::arg(r.value), mag, rate};
    };

    auto start = sample(0.0);
    if (!start) {
      out.why = "contour hits a zero, pole or overflow";
      return out;
    }
    Node prev = *start;

    while (!stack.empty()) {
      const auto [t, depth] = stack.back();
      stack.pop_back();
      const auto cur = sample(t);
      if (!cur) {
        sample_failed = true;
        break;
      }
      const double chord = std::abs(cur->z - prev.z);
      const bool displacement_ok =
          std::abs(cur->fv - prev.fv) <= 0.45 * std::max(cur->mag, prev.mag);
      const bool rate_ok = std::max(cur->rate, prev.rate) * chord <= 1.2;
      if (!(displacement_ok && rate_ok) && depth < max_depth) {
        stack.emplace_back(t, depth + 1);
        stack.emplace_back(0.5 * (prev.t + t), depth + 1);
        continue;
      }
      const double step = std::remainder(cur->phase - prev.phase, kTwoPi);
      total += step;
      out.variation += std::abs(step);
      prev = *cur;
    }

    if (sample_failed) {
      out.why = "contour sample hit a zero, pole or overflow";
      return out;
    }

    const double w = total / kTwoPi;
    const double nearest = std::round(w);
    if (std::abs(w - nearest) >= 0.1) {
      out.why = "winding integral is " + std::to_string(w) + ", not within 0.1 of an integer";
      return out;
    }
    out.ok = true;
    out.winding = static_cast<long>(nearest);
    return out;
  }

 private:
  Expr f_, df_;
};

// ---------------------------------------------------------------------------

struct Box {
  double x0, y0, x1, y1;
  int depth = 0;

  Cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double diameter() const { return std::hypot(x1 - x0, y1 - y0); }
  double min_side() const { return std::min(x1 - x0, y1 - y0); }
  bool contains(Cplx z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
  double min_dist_to_origin() const {
    const double dx = std::max({x0, 0.0, -x1});
    const double dy = std::max({y0, 0.0, -y1});
    return std::hypot(dx, dy);
  }
};

std::function<Cplx(double)> box_path(const Box& b) {
  return [b](double t) -> Cplx {
    const double s = t * 4.0;
    if (s <= 1.0) return {b.x0 + s * (b.x1 - b.x0), b.y0};
    if (s <= 2.0) return {b.x1, b.y0 + (s - 1.0) * (b.y1 - b.y0)};
    if (s <= 3.0) return {b.x1 - (s - 2.0) * (b.x1 - b.x0), b.y1};
    return {b.x0, b.y1 - (s - 3.0) * (b.y1 - b.y0)};
  };
}

std::function<Cplx(double)> circle_path(Cplx center, double radius) {
  return [=](double t) -> Cplx {
    // tiny angular offset keeps the start off the axes
    const double th = kTwoPi * t + 1e-4;
    return center + radius * Cplx(std::cos(th), std::sin(th));
  };
}

// Newton with multiplicity-aware step; for poles ("multiplicity" < 0) the
// step sign flips, which is Newton on 1/f.
std::optional<Cplx> polish(const Expr& f, const Expr& df, Cplx z0, int mult, int iters = 60) {
  Cplx z = z0;
  const double m = static_cast<double>(mult);
  for (int i = 0; i < iters; ++i) {
    const EvalOutcome fv = eval(f, z);
    if (!fv.ok()) {
      // landed on (or numerically inside) a pole; for pole polishing that
      // is convergence
      if (mult < 0) return z;
      return std::nullopt;
    }
    const EvalOutcome dv = eval(df, z);
    if (!dv.ok()) return std::nullopt;
    if (fv.value == Cplx(0.0, 0.0)) return z;
    if (dv.value == Cplx(0.0, 0.0)) return std::nullopt;
    const Cplx step = m * fv.value / dv.value;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

// Affine reading a z + b of an expression, when it has that exact shape.
std::optional<std::pair<Cplx, Cplx>> affine_of(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Const: return std::make_pair(Cplx(0.0, 0.0), e->value);
    case NodeKind::Var: return std::make_pair(Cplx(1.0, 0.0), Cplx(0.0, 0.0));
    case NodeKind::Neg: {
      const auto a = affine_of(e->a);
      if (!a) return std::nullopt;
      return std::make_pair(-a->first, -a->second);
    }
    case NodeKind::Add:
    case NodeKind::Sub: {
      const auto a = affine_of(e->a), b = affine_of(e->b);
      if (!a || !b) return std::nullopt;
      const double s = e->kind == NodeKind::Add ? 1.0 : -1.0;
      return std::make_pair(a->first + s * b->first, a->second + s * b->second);
    }
    case NodeKind::Mul: {
      const auto a = affine_of(e->a), b = affine_of(e->b);
      if (!a || !b) return std::nullopt;
      if (a->first == Cplx(0.0, 0.0))
        return std::make_pair(a->second * b->first, a->second * b->second);
      if (b->first == Cplx(0.0, 0.0))
        return std::make_pair(b->second * a->first, b->second * a->second);
      return std::nullopt;
    }
    case NodeKind::Div: {
      const auto a = affine_of(e->a), b = affine_of(e->b);
      if (!a || !b || b->first != Cplx(0.0, 0.0) || b->second == Cplx(0.0, 0.0))
        return std::nullopt;
      return std::make_pair(a->first / b->second, a->second / b->second);
    }
    default: return std::nullopt;
  }
}

// Pole positions of gamma-family subtrees with affine arguments, inside the
// disk. A pole of gamma often rides with a nearby zero of gamma - a whose
// joint winding signature vanishes at coarse scales, so these boxes must
// subdivide regardless of what the boundary reports.
void gamma_pole_hints(const Expr& e, double radius, std::vector<Cplx>& out) {
  switch (e->kind) {
    case NodeKind::Gamma:
    case NodeKind::Digamma:
    case NodeKind::Polygamma: {
      const auto aff = affine_of(e->a);
      if (aff && aff->first != Cplx(0.0, 0.0)) {
        // a z + b = -k  =>  z = (-k - b)/a; beyond k_max every candidate
        // lies outside the disk
        const long k_max = static_cast<long>(
            std::abs(aff->first) * (radius + 1.0) + std::abs(aff->second)) + 2;
        for (long k = 0; k <= k_max; ++k) {
          const Cplx z = (Cplx(-static_cast<double>(k), 0.0) - aff->second) / aff->first;
          if (std::abs(z) <= radius + 1.0) out.push_back(z);
        }
      }
      break;
    }
    default: break;
  }
  if (e->a) gamma_pole_hints(e->a, radius, out);
  if (e->b) gamma_pole_hints(e->b, radius, out);
}

class BoxCounter {
 public:
  BoxCounter(const Expr& f, const ZeroCountOptions& opts, bool meromorphic, ZeroCountReport& rep)
      : f_(f), df_(derivative(f)), walker_(f), opts_(opts), meromorphic_(meromorphic), rep_(rep) {}

  // Counts zeros (and poles when meromorphic) of f_ inside boxes intersecting
  // the disk of radius `keep_radius`.
  void run(Box top, double keep_radius) {
    keep_radius_ = keep_radius;
    if (meromorphic_) gamma_pole_hints(f_, keep_radius, pole_hints_);
    // The top box has no parent to re-cut it, so shift the whole frame when
    // its own walls are unlucky.
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::vector<PointCount> z, p;
      if (process(top, z, p)) {
        zeros = std::move(z);
        poles = std::move(p);
        return;
      }
      const double nudge = 3.1e-5 * (std::abs(top.x1 - top.x0) + 1.0);
      top.x0 += nudge;
      top.x1 += nudge;
      top.y0 += 0.7 * nudge;
      top.y1 += 0.7 * nudge;
    }
    rep_.ok = false;
    rep_.diagnostics.push_back(fail_why_.empty() ? "zero counting failed" : fail_why_);
  }

  std::vector<PointCount> zeros, poles;

 private:
  Expr f_, df_;
  ContourWalker walker_;
  ZeroCountOptions opts_;
  bool meromorphic_;
  ZeroCountReport& rep_;
  double keep_radius_ = 0.0;
  std::vector<Cplx> pole_hints_;
  std::string fail_why_;
  bool budget_blown_ = false;

  bool contains_hint(const Box& b) const {
    for (const Cplx p : pole_hints_)
      if (b.contains(p)) return true;
    return false;
  }

  static void record(std::vector<PointCount>& zs, std::vector<PointCount>& ps, Cplx z, int mult) {
    if (mult > 0)
      zs.push_back({z, mult});
    else if (mult < 0)
      ps.push_back({z, -mult});
  }

  // Winding on a small confirmation circle around a polished point.
  bool confirm(Cplx z, double radius, long expect) {
    const WalkOutcome w = walker_.walk(circle_path(z, radius), 16);
    return w.ok && w.winding == expect;
  }

  // The parent walls of `b` are known-clean; only the interior cut lines are
  // new. When a child contour lands on a zero, retry with shifted cuts, so
  // the children always partition `b` exactly and nothing double-counts.
  bool subdivide(const Box& b, std::vector<PointCount>& zs, std::vector<PointCount>& ps) {
    static constexpr double kCutShifts[] = {0.0, 0.07, -0.11, 0.19, -0.26};
    for (const double lam : kCutShifts) {
      const double mx = b.x0 + (b.x1 - b.x0) * (0.5 + lam);
      const double my = b.y0 + (b.y1 - b.y0) * (0.5 - lam);
      std::vector<PointCount> z2, p2;
      const bool ok = process({b.x0, b.y0, mx, my, b.depth + 1}, z2, p2) &&
                      process({mx, b.y0, b.x1, my, b.depth + 1}, z2, p2) &&
                      process({b.x0, my, mx, b.y1, b.depth + 1}, z2, p2) &&
                      process({mx, my, b.x1, b.y1, b.depth + 1}, z2, p2);
      if (ok) {
        zs.insert(zs.end(), z2.begin(), z2.end());
        ps.insert(ps.end(), p2.begin(), p2.end());
        return true;
      }
      if (budget_blown_) return false;
    }
    return false;
  }

  bool fail(const std::string& why) {
    fail_why_ = why;
    return false;
  }

  bool process(const Box& b, std::vector<PointCount>& zs, std::vector<PointCount>& ps) {
    if (b.min_dist_to_origin() > keep_radius_) return true;  // cannot hold kept points
    if (++rep_.boxes > opts_.max_boxes) {
      budget_blown_ = true;
      return fail("box budget exhausted; the zero set is too crowded for this radius");
    }
    if (b.depth > opts_.max_depth)
      return fail("max subdivision depth reached at " + format_complex_short(b.center()));

    const WalkOutcome w = walker_.walk(box_path(b), 16);
    if (!w.ok) return fail(w.why + " at " + format_complex_short(b.center()));

    const double iso = opts_.isolation_scale * std::max(1.0, std::abs(b.center()));
    if (w.winding == 0) {
      if (!meromorphic_) return true;
      if (b.diameter() < iso) return true;  // cancellation below resolution
      // a quiet boundary still hides tight zero/pole pairs around known
      // gamma-family poles; large phase variation is the generic hint
      if (w.variation < std::numbers::pi && !contains_hint(b)) return true;
      return subdivide(b, zs, ps);
    }

    const long mult = w.winding;
    if (mult < 0 && !meromorphic_)
      return fail("negative winding for a function expected to be pole-free at " +
                  format_complex_short(b.center()));

    if (std::labs(mult) == 1) {
      const auto z = polish(f_, df_, b.center(), static_cast<int>(mult), 60);
      if (z && b.contains(*z)) {
        const double rc = std::max(1e-9 * (1.0 + std::abs(*z)), 0.45 * b.min_side());
        if (confirm(*z, rc, mult) || confirm(*z, 1e-6 * (1.0 + std::abs(*z)), mult)) {
          record(zs, ps, *z, static_cast<int>(mult));
          return true;
        }
      }
      return subdivide(b, zs, ps);
    }

    // |winding| >= 2: isolate until the box is small, then polish.
    if (b.diameter() >= iso) return subdivide(b, zs, ps);
    const auto z = polish(f_, df_, b.center(), static_cast<int>(mult), 80);
    const Cplx loc = z && b.contains(*z) ? *z : b.center();
    if (confirm(loc, 1.5 * b.diameter() + 1e-12, mult)) {
      record(zs, ps, loc, static_cast<int>(mult));
      return true;
    }
    return fail("could not confirm multiplicity " + std::to_string(mult) + " near " +
                format_complex_short(loc));
  }
};

long circle_winding(const Expr& f, double radius, ZeroCountReport& rep, const char* label) {
  ContourWalker walker(f);
  const WalkOutcome w = walker.walk(circle_path(Cplx(0.0, 0.0), radius), 64);
  if (!w.ok) {
    rep.ok = false;
    rep.diagnostics.push_back(std::string(label) + ": " + w.why);
    return 0;
  }
  return w.winding;
}

// num/den zero lists merge into zeros and poles of the quotient; coincident
// locations cancel multiplicities exactly.
void merge_rational(std::vector<PointCount> num_zeros, std::vector<PointCount> den_zeros,
                    ZeroCountReport& rep) {
  for (auto& dz : den_zeros) {
    for (auto& nz : num_zeros) {
      if (nz.multiplicity == 0) continue;
      if (std::abs(nz.location - dz.location) < 1e-6 * (1.0 + std::abs(dz.location))) {
        const int c = std::min(nz.multiplicity, dz.multiplicity);
        nz.multiplicity -= c;
        dz.multiplicity -= c;
        break;
      }
    }
  }
  for (const auto& nz : num_zeros)
    if (nz.multiplicity > 0) rep.zeros.push_back(nz);
  for (const auto& dz : den_zeros)
    if (dz.multiplicity > 0) rep.poles.push_back(dz);
}

void sort_points(std::vector<PointCount>& pts) {
  std::sort(pts.begin(), pts.end(), [](const PointCount& a, const PointCount& b) {
    const double ma = std::abs(a.location), mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
}

}  // namespace

ZeroCountReport count_zeros(const Expr& f, double r, const ZeroCountOptions& opts) {
  if (r <= 0) throw Error(ErrorCode::InvalidArgument, "count_zeros needs r > 0");
  ZeroCountReport rep;

  const double margin = 1e-4 * std::max(1.0, r);
  const double half = r + margin;
  // Irrational-ish offset keeps zero lattices (integers, multiples of pi)
  // off box edges produced by bisection.
  const double ox = 1.2345678e-4 * std::max(1.0, r);
  const double oy = 0.7654321e-4 * std::max(1.0, r);
  const Box top{-half + ox, -half + oy, half + ox, half + oy, 0};

  ZeroCountOptions o = opts;

  if (is_entire(f)) {
    BoxCounter counter(f, o, /*meromorphic=*/false, rep);
    counter.run(top, half);
    rep.zeros = std::move(counter.zeros);
  } else if (is_rationalizable(f)) {
    const RationalSplit split = rationalize(f);
    BoxCounter num_counter(split.num, o, false, rep);
    num_counter.run(top, half);
    BoxCounter den_counter(split.den, o, false, rep);
    if (split.den->kind != NodeKind::Const) den_counter.run(top, half);
    merge_rational(std::move(num_counter.zeros), std::move(den_counter.zeros), rep);
  } else {
    BoxCounter counter(f, o, /*meromorphic=*/true, rep);
    counter.run(top, half);
    rep.zeros = std::move(counter.zeros);
    rep.poles = std::move(counter.poles);
  }

  // Nudge the reporting radius until no point sits within the clearance.
  double used = r;
  const double clear = opts.boundary_clearance * std::max(1.0, r);
  for (int tries = 0; tries < 40; ++tries) {
    bool conflict = false;
    for (const auto& list : {std::cref(rep.zeros), std::cref(rep.poles)}) {
      for (const auto& p : list.get())
        if (std::abs(std::abs(p.location) - used) < clear) conflict = true;
    }
    if (!conflict) break;
    used += 2.5 * clear;
  }
  if (used > half) used = half;  // never report beyond the searched square
  rep.radius_used = used;

  auto inside = [&](const PointCount& p) { return std::abs(p.location) <= used; };
  std::erase_if(rep.zeros, [&](const PointCount& p) { return !inside(p); });
  std::erase_if(rep.poles, [&](const PointCount& p) { return !inside(p); });
  sort_points(rep.zeros);
  sort_points(rep.poles);

  if (rep.ok) {
    if (is_rationalizable(f) && !is_entire(f)) {
      const RationalSplit split = rationalize(f);
      const long wn = circle_winding(split.num, used, rep, "outer circle (numerator)");
      const long wd = split.den->kind == NodeKind::Const
                          ? 0
                          : circle_winding(split.den, used, rep, "outer circle (denominator)");
      rep.outer_winding = wn - wd;
    } else {
      rep.outer_winding = circle_winding(f, used, rep, "outer circle");
    }
  }
  return rep;
}

}  // namespace merodiff
