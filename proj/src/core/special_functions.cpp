#include "core/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace merodiff {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos g = 7 coefficients (Godfrey's table).
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

// B_{2k} for the Stirling / polygamma tails.
constexpr std::array<double, 8> kBernoulli2k = {
    1.0 / 6,  -1.0 / 30,    1.0 / 42,      -1.0 / 30,
    5.0 / 66, -691.0 / 2730, 7.0 / 6,      -3617.0 / 510,
};

Cplx lanczos_gamma_pos(Cplx z) {
  // valid for Re z >= 0.5
  z -= 1.0;
  Cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Cplx t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

bool near_gamma_pole(Cplx z, double eps) {
  if (z.real() > 0.5) return false;
  const double k = std::round(z.real());
  if (k > 0.5) return false;
  return std::abs(z - Cplx(k, 0.0)) < eps;
}

Cplx complex_gamma(Cplx z) {
  if (z.real() < 0.5) {
    // gamma(z) = pi / (sin(pi z) gamma(1-z)); the caller's pole handling
    // kicks in through the sin factor going to zero.
    return kPi / (std::sin(kPi * z) * lanczos_gamma_pos(1.0 - z));
  }
  return lanczos_gamma_pos(z);
}

Cplx log_gamma_positive(Cplx z) {
  if (std::abs(z) < 12.0) {
    // Shift into the Stirling zone keeping a continuous branch.
    Cplx shift = 0.0;
    Cplx w = z;
    while (std::abs(w) < 12.0) {
      shift += std::log(w);
      w += 1.0;
    }
    return log_gamma_positive(w) - shift;
  }
  Cplx s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
  Cplx zp = z;
  const Cplx z2 = z * z;
  for (std::size_t k = 0; k < kBernoulli2k.size(); ++k) {
    const double n = 2.0 * (k + 1);
    s += kBernoulli2k[k] / (n * (n - 1.0) * zp);
    zp *= z2;
  }
  return s;
}

Cplx complex_digamma(Cplx z) { return complex_polygamma(0, z); }

Cplx complex_polygamma(int m, Cplx z) {
  if (m == 0 && z.real() < 0.5) {
    // psi(z) = psi(1-z) - pi cot(pi z); cot saturates to -+i for large |Im|
    // where sin/cos would overflow.
    Cplx cot;
    if (std::abs(z.imag()) > 250.0) {
      cot = Cplx(0.0, z.imag() > 0 ? -1.0 : 1.0);
    } else {
      const Cplx w = kPi * z;
      cot = std::cos(w) / std::sin(w);
    }
    return complex_polygamma(0, 1.0 - z) - kPi * cot;
  }
  // Push the argument to |z| >= 16 with the shift recurrence
  //   psi^(m)(z) = psi^(m)(z+1) - (-1)^m m! z^(-m-1)
  Cplx acc = 0.0;
  double mfact = 1.0;
  for (int j = 2; j <= m; ++j) mfact *= j;
  const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  Cplx w = z;
  int guard = 0;
  while ((std::abs(w) < 16.0 || w.real() < 0.5) && guard++ < 4096) {
    acc -= sgn * mfact * std::pow(w, -(m + 1));
    w += 1.0;
  }
  // Asymptotic series at w.
  Cplx s;
  if (m == 0) {
    s = std::log(w) - 0.5 / w;
    Cplx w2k = w * w;
    for (std::size_t k = 0; k < kBernoulli2k.size(); ++k) {
      s -= kBernoulli2k[k] / (2.0 * (k + 1) * w2k);
      w2k *= w * w;
    }
  } else {
    // psi^(m)(w) ~ (-1)^(m-1) [ (m-1)!/w^m + m!/(2 w^(m+1))
    //                           + sum B_{2k} (2k+m-1)!/(2k)! w^(-2k-m) ]
    double mm1fact = 1.0;
    for (int j = 2; j <= m - 1; ++j) mm1fact *= j;
    const Cplx wm = std::pow(w, -m);
    s = mm1fact * wm + mfact / 2.0 * wm / w;
    Cplx w2k = w * w;
    for (std::size_t k = 0; k < kBernoulli2k.size(); ++k) {
      // (2k+m-1)!/(2k)!
      double ratio = 1.0;
      for (int j = 1; j <= m - 1; ++j) ratio *= 2.0 * (k + 1) + j;
      s += kBernoulli2k[k] * ratio * wm / w2k;
      w2k *= w * w;
    }
    if (m % 2 == 0) s = -s;
  }
  return s + acc;
}

}  // namespace merodiff
