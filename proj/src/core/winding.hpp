// Zero and pole counting in a disk by the argument principle.
#pragma once

#include <string>
#include <vector>

#include "core/expr.hpp"

namespace merodiff {

struct PointCount {
  Cplx location;
  int multiplicity = 1;  // positive; poles are reported in their own list
};

struct ZeroCountOptions {
  double boundary_clearance = 1e-6;  // nudge the radius when a point sits this close
  int max_depth = 48;
  long max_boxes = 400000;
  // multiple-point isolation stops when the box diameter falls under
  // isolation_scale * max(1, |center|)
  double isolation_scale = 1e-6;
};

struct ZeroCountReport {
  std::vector<PointCount> zeros;
  std::vector<PointCount> poles;
  long outer_winding = 0;   // contour integral count on |z| = radius_used (Z - P)
  double radius_used = 0.0;
  long boxes = 0;
  bool ok = true;
  std::vector<std::string> diagnostics;

  int zero_count() const {
    int s = 0;
    for (const auto& z : zeros) s += z.multiplicity;
    return s;
  }
  int pole_count() const {
    int s = 0;
    for (const auto& p : poles) s += p.multiplicity;
    return s;
  }
};

// Counts zeros (and poles, when f is meromorphic) of f inside |z| < r.
//
// Strategy is picked from the tree: structurally entire functions use plain
// box subdivision (winding-zero boxes are empty); Div/Tan trees split into
// entire numerator/denominator whose zero sets merge exactly; gamma-bearing
// trees fall back to a guarded meromorphic walk. Box windings ride an
// adaptive phase-tracked quadrature of f'/f with a 0.1 integer-rounding
// guard; failures surface in diagnostics with the offending box.
ZeroCountReport count_zeros(const Expr& f, double r, const ZeroCountOptions& opts = {});

}  // namespace merodiff
