// Complex gamma, log-gamma, digamma and polygamma.
//
// gamma: Lanczos (g = 7, 9 terms) for Re z >= 0.5, reflection otherwise;
// relative accuracy ~1e-13 away from poles. log_gamma switches to a Stirling
// series for large |z| so magnitudes far beyond double range stay usable.
#pragma once

#include <complex>

#include "core/complexio.hpp"

namespace merodiff {

// True when z is within `eps` of a pole of gamma (0, -1, -2, ...).
bool near_gamma_pole(Cplx z, double eps = 1e-12);

Cplx complex_gamma(Cplx z);

// Principal log of gamma for Re z > 0 (continuous Stirling branch for large
// |z|); callers handle reflection. Accurate to ~1e-12 for |z| >= 10.
Cplx log_gamma_positive(Cplx z);

// psi(z) = gamma'(z)/gamma(z).
Cplx complex_digamma(Cplx z);

// psi^(m)(z), m >= 0 (m = 0 is digamma).
Cplx complex_polygamma(int m, Cplx z);

}  // namespace merodiff
