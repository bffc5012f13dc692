// Numerical Nevanlinna functionals on radial grids: proximity m(r),
// integrated counting N(r), characteristic T = m + N, growth order and
// hyper-order fits, deficiency and Borel-type zero-growth estimates.
//
// All asymptotic statements are probed at fixed radii; estimates are
// reported, never asserted as limits.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/winding.hpp"

namespace merodiff {

struct RadialGrid {
  std::vector<double> radii;   // strictly increasing
  int nodes_per_circle = 512;  // quadrature nodes for m(r)
};

// Geometric spacing; count >= 8 so slope fits have room.
RadialGrid geometric_grid(double rmin = 5.0, double rmax = 200.0, int count = 12,
                          int nodes = 512);

// m(r, f) = (1/2pi) integral of log+ |f(r e^(i theta))|, trapezoid rule with
// local bisection around flagged angles (up to 16x local refinement). Throws
// when more than 20% of the base nodes flag.
double proximity(const Expr& f, double r, int nodes = 512);

// N(r) for a fixed point list: sum m_p log(r/|p|) over 0 < |p| <= r plus
// n(0) log r for points at the origin.
double counting_integral(const std::vector<PointCount>& points, double r);

enum class CountTarget { Poles, ZerosOf };

// N(r, f) in pole mode, or N(r, 1/(f-a)) when counting zeros of f - a.
double counting(const Expr& f, double r, CountTarget target, Cplx a = {0.0, 0.0});

struct OrderFit {
  double value = 0.0;
  bool degenerate = false;  // too few usable points; value forced to 0
};

struct NevanlinnaReport {
  std::vector<double> radii, m, N, T;
  OrderFit order, hyper_order;
  std::string order_note;   // "> 5" for runaway slopes
  bool monotone_ok = true;  // T(r) nondecreasing within 5%
  std::vector<std::string> diagnostics;
};

NevanlinnaReport characteristic(const Expr& f, const RadialGrid& grid);

// Least-squares slopes over the top half of the grid: order from
// log T vs log r, hyper-order from log log T vs log r.
void estimate_order(NevanlinnaReport& report);

struct DeficiencyEstimate {
  Cplx value;          // the probed value a (ignored when at_infinity)
  bool at_infinity = false;
  double delta = 0.0;  // median over the top three radii of m/T
  std::vector<double> ratios;
};

DeficiencyEstimate deficiency(const Expr& f, Cplx a, const RadialGrid& grid,
                              const NevanlinnaReport* precomputed = nullptr);
DeficiencyEstimate deficiency_infinity(const Expr& f, const RadialGrid& grid,
                                       const NevanlinnaReport* precomputed = nullptr);

struct BorelEstimate {
  Cplx value;
  double lambda = 0.0;       // zero-counting exponent of f - a
  double order = 0.0;        // sigma-hat of f
  bool lambda_degenerate = false;  // no/too few zeros; lambda forced to 0
  bool exceptional = false;  // lambda < order - 0.2
  std::vector<double> zero_counts;  // n(r) per grid radius
};

BorelEstimate borel_estimate(const Expr& f, Cplx a, const RadialGrid& grid,
                             const NevanlinnaReport* precomputed = nullptr);

// m(r, f^(k)(z + eta1) / f(z + eta2)).
double ratio_proximity(const Expr& f, Cplx eta1, Cplx eta2, int k, double r, int nodes = 512);

}  // namespace merodiff
