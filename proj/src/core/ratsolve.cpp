#include "core/ratsolve.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace merodiff {

PolynomialRecurrence::PolynomialRecurrence(std::vector<RatPoly> coefficients, RatPoly right_side,
                                           Rat step_size)
    : coeffs(std::move(coefficients)), rhs(std::move(right_side)), step(std::move(step_size)) {
  if (coeffs.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "recurrence needs order n >= 1 (b_0..b_n)");
  if (coeffs.front().is_zero() || coeffs.back().is_zero())
    throw Error(ErrorCode::InvalidArgument, "b_0 and b_n must be nonzero polynomials");
  if (step == 0) throw Error(ErrorCode::InvalidArgument, "step must be nonzero");
}

RationalFunction::RationalFunction(RatPoly n, RatPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (num.is_zero()) {
    den = RatPoly::constant(Rat(1));
    return;
  }
  const RatPoly g = poly_gcd(num, den);
  if (g.degree() > 0) {
    num = num.divrem(g).first;
    den = den.divrem(g).first;
  }
  const Rat lead = den.leading();
  den = den.scaled(Rat(1) / lead);
  num = num.scaled(Rat(1) / lead);
}

std::string RationalFunction::to_pretty() const {
  if (den.degree() == 0 && den.leading() == 1) return num.to_pretty();
  const std::string n = num.to_pretty();
  const std::string d = den.to_pretty();
  const bool nparen = num.degree() >= 1 && n.find_first_of("+-", 1) != std::string::npos;
  return (nparen ? "(" + n + ")" : n) + "/(" + d + ")";
}

Expr poly_expr(const RatPoly& p) {
  if (p.is_zero()) return make_const(0.0);
  Expr acc = make_const(p.leading().get_d());
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = make_add(make_mul(acc, make_var()), make_const(p.coeff(i).get_d()));
  }
  return acc;
}

Expr RationalFunction::to_expr() const {
  if (den.degree() == 0 && den.leading() == 1) return poly_expr(num);
  return make_div(poly_expr(num), poly_expr(den));
}

// ---------------------------------------------------------------------------

std::set<long> dispersion_set(const RatPoly& p, const RatPoly& q) {
  if (p.is_zero() || q.is_zero())
    throw Error(ErrorCode::InvalidArgument, "dispersion needs nonzero polynomials");
  std::set<long> out;
  if (p.degree() < 1 || q.degree() < 1) return out;

  // R(h) = Res_z(p(z), q(z+h)) has degree <= deg p * deg q in h; interpolate
  // it at integer nodes, then pull integer roots.
  const int D = p.degree() * q.degree();
  std::vector<Rat> nodes, values;
  for (int h = 0; h <= D; ++h) {
    nodes.emplace_back(h);
    values.push_back(resultant(p, q.taylor_shift(Rat(h))));
  }
  // Newton's divided differences, assembled exactly.
  std::vector<Rat> dd = values;
  for (int level = 1; level <= D; ++level) {
    for (int i = D; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
    }
  }
  RatPoly R = RatPoly::constant(dd[D]);
  for (int i = D - 1; i >= 0; --i) {
    R = R * (RatPoly::variable() - RatPoly::constant(nodes[i])) + RatPoly::constant(dd[i]);
  }

  if (R.is_zero()) {
    // Cannot happen for nonzero univariate inputs; guard with a direct scan.
    for (long h = 0; h <= D; ++h)
      if (poly_gcd(p, q.taylor_shift(Rat(h))).degree() > 0) out.insert(h);
    return out;
  }
  for (long h : integer_roots(R)) {
    if (h >= 0 && poly_gcd(p, q.taylor_shift(Rat(h))).degree() > 0) out.insert(h);
  }
  return out;
}

RatPoly universal_denominator(const PolynomialRecurrence& rec) {
  const int n = rec.order();
  RatPoly A = rec.coeffs.back().taylor_shift(Rat(-n));  // b_n(z - n)
  RatPoly B = rec.coeffs.front();                       // b_0(z)
  const std::set<long> disp = dispersion_set(A, B);
  RatPoly u = RatPoly::constant(Rat(1));
  if (disp.empty()) return u;
  for (long i = *disp.rbegin(); i >= 0; --i) {
    const RatPoly d = poly_gcd(A, B.taylor_shift(Rat(i)));
    if (d.degree() < 1) continue;
    A = A.divrem(d).first;
    B = B.divrem(d.taylor_shift(Rat(-i))).first;
    for (long j = 0; j <= i; ++j) u = u * d.taylor_shift(Rat(-j));
  }
  return u.monic();
}

// ---------------------------------------------------------------------------
// Exact linear algebra: fraction-free (Bareiss) elimination on the
// integer-scaled augmented matrix, then rational back-substitution for one
// particular solution (free variables zero) and a kernel basis.

namespace {

struct LinearSolution {
  bool consistent = true;
  std::vector<Rat> particular;
  std::vector<std::vector<Rat>> kernel;
};

LinearSolution solve_exact(std::vector<std::vector<Rat>> M, std::vector<Rat> b,
                           std::size_t cols) {
  const std::size_t rows = M.size();

  // integer-scale each augmented row
  std::vector<std::vector<mpz_class>> A(rows, std::vector<mpz_class>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class den(1);
    for (std::size_t j = 0; j < cols; ++j)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), M[i][j].get_den().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b[i].get_den().get_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      Rat v = M[i][j] * Rat(den);
      v.canonicalize();
      A[i][j] = v.get_num();
    }
    Rat v = b[i] * Rat(den);
    v.canonicalize();
    A[i][cols] = v.get_num();
  }

  // Bareiss with row pivoting; pivot_col[k] records the column order.
  std::vector<std::size_t> pivot_col;
  mpz_class prev(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && A[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(A[sel], A[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j <= cols; ++j) {
        mpz_class t = A[i][j] * A[row][col] - A[i][col] * A[row][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        A[i][j] = t;
      }
      A[i][col] = 0;
    }
    prev = A[row][col];
    pivot_col.push_back(col);
    ++row;
  }
  const std::size_t rank = row;

  LinearSolution out;
  for (std::size_t i = rank; i < rows; ++i) {
    if (A[i][cols] != 0) {
      out.consistent = false;
      break;
    }
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  auto back_substitute = [&](const std::vector<Rat>& free_vals,
                             bool use_rhs) -> std::vector<Rat> {
    std::vector<Rat> x(cols, Rat(0));
    std::size_t fi = 0;
    for (std::size_t j = 0; j < cols; ++j)
      if (!is_pivot[j]) x[j] = free_vals.empty() ? Rat(0) : free_vals[fi++];
    for (std::size_t k = rank; k-- > 0;) {
      const std::size_t pc = pivot_col[k];
      Rat acc = use_rhs ? Rat(A[k][cols]) : Rat(0);
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (A[k][j] != 0) acc -= Rat(A[k][j]) * x[j];
      }
      x[pc] = acc / Rat(A[k][pc]);
      x[pc].canonicalize();
    }
    return x;
  };

  if (out.consistent) out.particular = back_substitute({}, true);

  std::size_t free_count = 0;
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) ++free_count;
  for (std::size_t t = 0; t < free_count; ++t) {
    std::vector<Rat> free_vals(free_count, Rat(0));
    free_vals[t] = Rat(1);
    out.kernel.push_back(back_substitute(free_vals, false));
  }
  return out;
}

// Falling factorial d(d-1)...(d-m+1)/m! as a polynomial in d.
RatPoly binom_poly(int m) {
  RatPoly p = RatPoly::constant(Rat(1));
  Rat fact(1);
  for (int t = 0; t < m; ++t) {
    p = p * (RatPoly::variable() - RatPoly::constant(Rat(t)));
    if (t > 0) fact *= Rat(t + 1);
  }
  return p.scaled(Rat(1) / fact);
}

// Degree bound by leading-coefficient cancellation: phi_k(d) is the
// coefficient of z^(b+d-k) in sum_j c_j(z) (z+j)^d, a polynomial in d.
long degree_bound(const std::vector<RatPoly>& coeffs, const RatPoly& rhs,
                  std::vector<std::string>& notes) {
  int b = -1;
  for (const auto& c : coeffs) b = std::max(b, c.degree());
  const int n = static_cast<int>(coeffs.size()) - 1;
  const int cap_k = b + n + 3;

  int k0 = -1;
  RatPoly phi;
  for (int k = 0; k <= cap_k && k0 < 0; ++k) {
    RatPoly acc;
    for (int j = 0; j <= n; ++j) {
      Rat jpow(1);
      for (int m = 0; m <= k; ++m) {
        const int s = k - m;
        const Rat cjs = coeffs[j].coeff(b - s);
        if (cjs != 0) acc = acc + binom_poly(m).scaled(cjs * jpow);
        jpow *= Rat(j);
      }
    }
    if (!acc.is_zero()) {
      k0 = k;
      phi = acc;
    }
  }

  long cap = 2;
  for (const auto& c : coeffs) cap = std::max<long>(cap, 2L * c.degree() + n + 2);
  if (k0 < 0) {
    notes.push_back("leading-term analysis degenerate; falling back to the degree cap " +
                    std::to_string(cap));
    return cap;
  }

  long best = -1;
  if (!rhs.is_zero()) best = std::max(best, static_cast<long>(rhs.degree()) - b + k0);
  for (long r : integer_roots(phi))
    if (r >= 0) best = std::max(best, r);
  return std::min(best, cap);
}

std::vector<Rat> poly_coeffs_padded(const RatPoly& p, std::size_t len) {
  std::vector<Rat> out(len, Rat(0));
  for (int i = 0; i <= p.degree(); ++i) out[static_cast<std::size_t>(i)] = p.coeff(i);
  return out;
}

}  // namespace

PolySolutionSet polynomial_solutions(const PolynomialRecurrence& rec) {
  if (rec.step != 1)
    throw Error(ErrorCode::Internal, "polynomial_solutions expects a step-1 recurrence");
  PolySolutionSet out;
  out.degree_bound = degree_bound(rec.coeffs, rec.rhs, out.notes);
  if (out.degree_bound < 0) {
    // no admissible degree: only the zero polynomial can work, and only for
    // a homogeneous system
    if (rec.rhs.is_zero()) out.particular = RatPoly{};
    return out;
  }

  const int d = static_cast<int>(out.degree_bound);
  // image of z^i under the operator, i = 0..d
  std::vector<RatPoly> images(d + 1);
  int max_deg = rec.rhs.degree();
  for (int i = 0; i <= d; ++i) {
    RatPoly img;
    for (int j = 0; j < static_cast<int>(rec.coeffs.size()); ++j) {
      // (z+j)^i
      RatPoly zj = RatPoly::constant(Rat(1));
      for (int t = 0; t < i; ++t) zj = zj * RatPoly({Rat(j), Rat(1)});
      img = img + rec.coeffs[j] * zj;
    }
    images[i] = img;
    max_deg = std::max(max_deg, img.degree());
  }

  const std::size_t rows = static_cast<std::size_t>(std::max(max_deg, 0) + 1);
  std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(d + 1, Rat(0)));
  for (int i = 0; i <= d; ++i) {
    const auto col = poly_coeffs_padded(images[i], rows);
    for (std::size_t r = 0; r < rows; ++r) M[r][static_cast<std::size_t>(i)] = col[r];
  }
  const LinearSolution sol = solve_exact(std::move(M), poly_coeffs_padded(rec.rhs, rows),
                                         static_cast<std::size_t>(d + 1));

  if (sol.consistent) out.particular = RatPoly(sol.particular);
  for (const auto& v : sol.kernel) {
    RatPoly q(v);
    if (!q.is_zero()) out.basis.push_back(std::move(q));
  }
  return out;
}

SubstitutionCertificate substitution_certificate(const PolynomialRecurrence& rec,
                                                 const RationalFunction& f) {
  SubstitutionCertificate cert;
  cert.numerator = f.num;
  cert.denominator = f.den;
  const int n = rec.order();
  std::vector<RatPoly> shifted_den(n + 1), shifted_num(n + 1);
  RatPoly common = RatPoly::constant(Rat(1));
  for (int j = 0; j <= n; ++j) {
    shifted_den[j] = f.den.taylor_shift(Rat(j) * rec.step);
    shifted_num[j] = f.num.taylor_shift(Rat(j) * rec.step);
    common = common * shifted_den[j];
  }
  RatPoly total;
  for (int j = 0; j <= n; ++j) {
    const RatPoly cofactor = common.divrem(shifted_den[j]).first;
    cert.coeff_products.push_back(rec.coeffs[j] * shifted_num[j] * cofactor);
    total = total + cert.coeff_products.back();
  }
  cert.rhs_times_common = rec.rhs * common;
  cert.residual = total - cert.rhs_times_common;
  return cert;
}

RationalSolutionSet rational_solutions(const PolynomialRecurrence& rec) {
  RationalSolutionSet out;
  out.step = rec.step;

  // general step eta: z = eta w maps to a step-1 recurrence in w
  PolynomialRecurrence work = rec;
  if (rec.step != 1) {
    std::vector<RatPoly> cs;
    cs.reserve(rec.coeffs.size());
    for (const auto& c : rec.coeffs) cs.push_back(c.scale_argument(rec.step));
    work = PolynomialRecurrence(std::move(cs), rec.rhs.scale_argument(rec.step), Rat(1));
    out.notes.push_back("solved in w with z = " + rat_to_string(rec.step) +
                        "*w, mapped back afterwards");
  }

  out.universal_den = universal_denominator(work);

  // substitute f = p / u and clear denominators exactly
  const int n = work.order();
  std::vector<RatPoly> shifted_u(n + 1);
  RatPoly L = RatPoly::constant(Rat(1));
  for (int j = 0; j <= n; ++j) {
    shifted_u[j] = out.universal_den.taylor_shift(Rat(j));
    L = poly_lcm(L, shifted_u[j]);
  }
  std::vector<RatPoly> cleared;
  cleared.reserve(work.coeffs.size());
  for (int j = 0; j <= n; ++j)
    cleared.push_back(work.coeffs[j] * L.divrem(shifted_u[j]).first);
  const PolynomialRecurrence transformed(std::move(cleared), work.rhs * L, Rat(1));

  const PolySolutionSet poly = polynomial_solutions(transformed);
  out.degree_bound = poly.degree_bound;
  for (const auto& note : poly.notes) out.notes.push_back(note);

  auto map_back = [&](const RatPoly& p) -> RationalFunction {
    RationalFunction g(p, out.universal_den);
    if (rec.step == 1) return g;
    return RationalFunction(g.num.scale_argument(Rat(1) / rec.step),
                            g.den.scale_argument(Rat(1) / rec.step));
  };

  if (poly.particular) {
    const RationalFunction f = map_back(*poly.particular);
    const SubstitutionCertificate cert = substitution_certificate(rec, f);
    if (!cert.residual.is_zero())
      throw Error(ErrorCode::Internal, "solver produced a candidate that fails exact substitution");
    out.particular = f;
    out.certificate = cert;
  }
  for (const auto& q : poly.basis) {
    const RationalFunction f = map_back(q);
    if (f.is_zero()) continue;
    PolynomialRecurrence homogeneous(rec.coeffs, RatPoly{}, rec.step);
    const SubstitutionCertificate cert = substitution_certificate(homogeneous, f);
    if (!cert.residual.is_zero())
      throw Error(ErrorCode::Internal, "kernel element fails exact substitution");
    out.basis.push_back(f);
    out.basis_certificates.push_back(cert);
  }
  return out;
}

}  // namespace merodiff
