// Deterministic low-discrepancy sample sets for residual checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "core/complexio.hpp"
#include "core/util.hpp"

namespace merodiff {

// Golden-angle spiral in the disk |z| <= radius. The seed rotates the whole
// pattern so repeated runs can decorrelate without losing determinism.
inline std::vector<Cplx> disk_samples(std::size_t count, double radius, std::uint64_t seed = 0) {
  std::uint64_t st = seed * 0x9e3779b97f4a7c15ull + 1;
  const double rot = uniform01(st) * 2.0 * std::numbers::pi;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Cplx> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double r = radius * std::sqrt((k + 0.5) / count);
    const double th = rot + golden * static_cast<double>(k);
    out.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  return out;
}

namespace detail {
inline double halton(std::size_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}
}  // namespace detail

// Halton (2,3) points in the axis-aligned rectangle, Cranley-Patterson shifted
// by the seed.
inline std::vector<Cplx> rect_samples(std::size_t count, double re_lo, double re_hi, double im_lo,
                                      double im_hi, std::uint64_t seed = 0) {
  std::uint64_t st = seed * 0x9e3779b97f4a7c15ull + 1;
  const double sx = uniform01(st), sy = uniform01(st);
  std::vector<Cplx> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double u = detail::halton(k + 1, 2) + sx;
    double v = detail::halton(k + 1, 3) + sy;
    u -= std::floor(u);
    v -= std::floor(v);
    out.emplace_back(re_lo + u * (re_hi - re_lo), im_lo + v * (im_hi - im_lo));
  }
  return out;
}

}  // namespace merodiff
