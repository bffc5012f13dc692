// CM/IM value sharing verdicts inside a disk: do f - a and g - a vanish on
// the same set, counting (CM) or ignoring (IM) multiplicities? Sharing of
// infinity compares pole sets through the reciprocals. Verdicts are disk-local
// by construction and never extrapolate to the plane.
#pragma once

#include <string>
#include <vector>

#include "core/expr.hpp"
#include "core/winding.hpp"

namespace merodiff {

struct SharingPair {
  Cplx f_point, g_point;
  double distance = 0.0;
  int f_mult = 0, g_mult = 0;
};

struct SharingVerdict {
  Cplx value{0.0, 0.0};
  bool at_infinity = false;
  double radius = 0.0;
  std::vector<SharingPair> pairs;
  std::vector<PointCount> unmatched_f, unmatched_g;
  bool cm = false;  // all matched with equal multiplicities
  bool im = false;  // all matched
};

// Throws when pairing is ambiguous (two same-function points within
// 2*pair_tol) or when the zero counting itself fails.
SharingVerdict shares_value(const Expr& f, const Expr& g, Cplx a, double r,
                            double pair_tol = 1e-6);
SharingVerdict shares_infinity(const Expr& f, const Expr& g, double r, double pair_tol = 1e-6);

}  // namespace merodiff
