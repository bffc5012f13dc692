#include "core/sharing.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace merodiff {

namespace {

std::vector<PointCount> zero_set(const Expr& h, double r, const char* label) {
  const ZeroCountReport rep = count_zeros(h, r);
  if (!rep.ok)
    throw Error(ErrorCode::Numeric, std::string("zero counting failed for ") + label + ": " +
                                        (rep.diagnostics.empty() ? "?" : rep.diagnostics[0]));
  return rep.zeros;
}

void check_ambiguity(const std::vector<PointCount>& pts, double pair_tol, const char* label) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(pts[i].location - pts[j].location) < 2.0 * pair_tol) {
        throw Error(ErrorCode::Numeric,
                    std::string("ambiguous pairing: two points of ") + label + " near " +
                        format_complex_short(pts[i].location) + " are closer than 2*pair_tol");
      }
    }
  }
}

SharingVerdict pair_up(std::vector<PointCount> zf, std::vector<PointCount> zg, double pair_tol,
                       SharingVerdict verdict) {
  check_ambiguity(zf, pair_tol, "f");
  check_ambiguity(zg, pair_tol, "g");

  struct Cand {
    double d;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < zf.size(); ++i)
    for (std::size_t j = 0; j < zg.size(); ++j) {
      const double d = std::abs(zf[i].location - zg[j].location);
      if (d <= pair_tol) cands.push_back({d, i, j});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });

  std::vector<bool> fi(zf.size(), false), gj(zg.size(), false);
  for (const Cand& c : cands) {
    if (fi[c.i] || gj[c.j]) continue;
    fi[c.i] = true;
    gj[c.j] = true;
    verdict.pairs.push_back(
        {zf[c.i].location, zg[c.j].location, c.d, zf[c.i].multiplicity, zg[c.j].multiplicity});
  }
  for (std::size_t i = 0; i < zf.size(); ++i)
    if (!fi[i]) verdict.unmatched_f.push_back(zf[i]);
  for (std::size_t j = 0; j < zg.size(); ++j)
    if (!gj[j]) verdict.unmatched_g.push_back(zg[j]);

  verdict.im = verdict.unmatched_f.empty() && verdict.unmatched_g.empty();
  verdict.cm = verdict.im;
  for (const auto& p : verdict.pairs)
    if (p.f_mult != p.g_mult) verdict.cm = false;
  return verdict;
}

}  // namespace

SharingVerdict shares_value(const Expr& f, const Expr& g, Cplx a, double r, double pair_tol) {
  if (!(r > 0) || !(pair_tol > 0))
    throw Error(ErrorCode::InvalidArgument, "sharing check needs r > 0 and pair_tol > 0");
  SharingVerdict v;
  v.value = a;
  v.radius = r;
  auto zf = zero_set(subtract_constant(f, a), r, "f - a");
  auto zg = zero_set(subtract_constant(g, a), r, "g - a");
  return pair_up(std::move(zf), std::move(zg), pair_tol, std::move(v));
}

SharingVerdict shares_infinity(const Expr& f, const Expr& g, double r, double pair_tol) {
  if (!(r > 0) || !(pair_tol > 0))
    throw Error(ErrorCode::InvalidArgument, "sharing check needs r > 0 and pair_tol > 0");
  SharingVerdict v;
  v.at_infinity = true;
  v.radius = r;
  auto zf = zero_set(make_div(make_const(1.0), f), r, "1/f");
  auto zg = zero_set(make_div(make_const(1.0), g), r, "1/g");
  return pair_up(std::move(zf), std::move(zg), pair_tol, std::move(v));
}

}  // namespace merodiff
