#include "core/ratpoly.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/error.hpp"

namespace merodiff {

Rat rat_from_string(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  try {
    if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
        t.find('E') != std::string::npos)
      throw std::invalid_argument("decimal notation");
    Rat r(t);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "invalid rational literal '" + s + "' (use p or p/q)");
  }
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

RatPoly RatPoly::from_strings(const std::vector<std::string>& coeffs) {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (const auto& s : coeffs) c.push_back(rat_from_string(s));
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-() const {
  std::vector<Rat> r = c_;
  for (auto& x : r) x = -x;
  return RatPoly(std::move(r));
}

RatPoly RatPoly::scaled(const Rat& k) const {
  if (k == 0) return {};
  std::vector<Rat> r = c_;
  for (auto& x : r) x *= k;
  return RatPoly(std::move(r));
}

std::pair<RatPoly, RatPoly> RatPoly::divrem(const RatPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  std::vector<Rat> rem = c_;
  const int dd = divisor.degree();
  if (degree() < dd) return {RatPoly{}, *this};
  std::vector<Rat> quot(c_.size() - dd, Rat(0));
  const Rat& lead = divisor.c_.back();
  for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
    if (rem[i] == 0) continue;
    const Rat q = rem[i] / lead;
    quot[i - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * divisor.c_[j];
  }
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Cplx RatPoly::eval(Cplx z) const {
  Cplx acc{0.0, 0.0};
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + Cplx(c_[i].get_d(), 0.0);
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::taylor_shift(const Rat& h) const {
  if (is_zero() || h == 0) return *this;
  // Horner in (z + h): exact, O(n^2)
  std::vector<Rat> r{Rat(0)};
  for (std::size_t i = c_.size(); i-- > 0;) {
    // r := r * (z + h) + c_i
    std::vector<Rat> next(r.size() + 1, Rat(0));
    for (std::size_t j = 0; j < r.size(); ++j) {
      next[j + 1] += r[j];
      next[j] += r[j] * h;
    }
    next[0] += c_[i];
    r = std::move(next);
  }
  return RatPoly(std::move(r));
}

RatPoly RatPoly::scale_argument(const Rat& k) const {
  std::vector<Rat> r = c_;
  Rat p(1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] *= p;
    p *= k;
  }
  return RatPoly(std::move(r));
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return {};
  std::vector<Rat> r = c_;
  const Rat lead = r.back();
  for (auto& x : r) x /= lead;
  return RatPoly(std::move(r));
}

std::vector<std::string> RatPoly::to_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(rat_to_string(x));
  return out;
}

std::string RatPoly::to_pretty() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rat& a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    const bool neg = a < 0;
    const Rat mag = neg ? Rat(-a) : a;
    if (out.empty()) {
      if (neg) out += '-';
    } else {
      out += neg ? '-' : '+';
    }
    const bool unit = mag == 1;
    if (i == 0 || !unit) out += rat_to_string(mag);
    if (i > 0) {
      if (!unit) out += '*';
      out += 'z';
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

ComplexPoly RatPoly::to_complex_poly() const {
  std::vector<Cplx> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = Cplx(c_[i].get_d(), 0.0);
  return ComplexPoly(std::move(c));
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

RatPoly poly_lcm(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const RatPoly g = poly_gcd(a, b);
  return (a * b).divrem(g).first.monic();
}

namespace {

Rat rat_pow(const Rat& base, long e) {
  Rat r(1);
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rat resultant(const RatPoly& p, const RatPoly& q) {
  if (p.is_zero() || q.is_zero())
    throw Error(ErrorCode::InvalidArgument, "resultant requires nonzero polynomials");
  const int m = p.degree(), n = q.degree();
  if (n == 0) return rat_pow(q.leading(), m);
  if (m == 0) return rat_pow(p.leading(), n);
  if (m < n) {
    const Rat sign = (static_cast<long>(m) * n) % 2 == 0 ? Rat(1) : Rat(-1);
    return sign * resultant(q, p);
  }
  const RatPoly r = p.divrem(q).second;
  if (r.is_zero()) return Rat(0);
  const Rat sign = (static_cast<long>(m) * n) % 2 == 0 ? Rat(1) : Rat(-1);
  return sign * rat_pow(q.leading(), m - r.degree()) * resultant(q, r);
}

std::vector<long> integer_roots(const RatPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "integer_roots of zero polynomial");
  // Clear denominators to integer coefficients.
  mpz_class den(1);
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> zc;
  zc.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Rat v = c * Rat(den);
    v.canonicalize();
    zc.push_back(v.get_num());
  }
  // Strip z^v.
  std::size_t v = 0;
  while (v < zc.size() && zc[v] == 0) ++v;
  std::set<long> found;
  if (v > 0) found.insert(0);
  if (v >= zc.size() - 0 || zc.size() - v <= 1) {
    return {found.begin(), found.end()};
  }

  std::set<long> candidates;

  // Divisor enumeration of the trailing coefficient when it is small enough.
  const mpz_class trailing = zc[v] < 0 ? mpz_class(-zc[v]) : zc[v];
  if (trailing.fits_slong_p()) {
    const long t = trailing.get_si();
    for (long d = 1; d * d <= t; ++d) {
      if (t % d == 0) {
        candidates.insert(d);
        candidates.insert(-d);
        candidates.insert(t / d);
        candidates.insert(-(t / d));
      }
    }
  }

  // Numeric proposals: cheap and safe since every candidate is verified.
  {
    std::vector<Cplx> dc;
    double maxmag = 0.0;
    for (std::size_t i = v; i < zc.size(); ++i)
      maxmag = std::max(maxmag, std::abs(mpq_class(zc[i]).get_d()));
    if (maxmag > 0 && std::isfinite(maxmag)) {
      for (std::size_t i = v; i < zc.size(); ++i)
        dc.emplace_back(mpq_class(zc[i]).get_d() / maxmag, 0.0);
      ComplexPoly cp{std::move(dc)};
      cp.trim();
      if (cp.degree() >= 1) {
        const RootSet rs = find_roots(cp, 1e-6);
        for (const auto& r : rs.roots) {
          if (std::abs(r.root.imag()) < 0.5) {
            const double re = r.root.real();
            for (long k : {static_cast<long>(std::floor(re)), static_cast<long>(std::ceil(re))})
              if (std::abs(re - static_cast<double>(k)) < 0.5) candidates.insert(k);
          }
        }
      }
    }
  }

  for (long cand : candidates) {
    if (p.eval(Rat(cand)) == 0) found.insert(cand);
  }
  return {found.begin(), found.end()};
}

}  // namespace merodiff
