// Dense complex polynomials and a simultaneous-iteration root finder.
#pragma once

#include <string>
#include <vector>

#include "core/complexio.hpp"

namespace merodiff {

struct ComplexPoly {
  std::vector<Cplx> c;  // ascending degree; empty = zero polynomial

  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Cplx> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == Cplx(0.0, 0.0)) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }

  Cplx eval(Cplx z) const {
    Cplx acc{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  }

  ComplexPoly derivative() const {
    if (c.size() <= 1) return ComplexPoly{};
    std::vector<Cplx> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return ComplexPoly(std::move(d));
  }
};

struct RootCluster {
  Cplx root;
  int multiplicity = 1;
  bool near_degenerate = false;  // multiplicity confirmation was inconclusive
};

struct RootSet {
  std::vector<RootCluster> roots;  // sorted by (|root|, arg root)
  bool converged = true;
  std::vector<std::string> diagnostics;

  int total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }
};

// Aberth-Ehrlich with deterministic initial placement, followed by cluster
// detection and a derivative-magnitude multiplicity confirmation. Degree must
// be >= 1. Non-convergence is reported through `converged`/diagnostics with a
// best-effort root list rather than an exception.
RootSet find_roots(const ComplexPoly& p, double cluster_tol = 1e-6);

}  // namespace merodiff
