// Request JSON -> canonical report JSON for the six command surfaces. The
// shared library and the CLI both call these, so report layout and exit
// semantics live in one place. "verified" in a report is what drives the
// CLI's exit code 0/2 split.
#include "core/workflows.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/jsonio.hpp"
#include "core/sampling.hpp"
#include "core/serialize.hpp"

namespace merodiff::workflows {

namespace {

double get_num(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j[key].get<double>();
}

std::uint64_t get_seed(const Json& j) {
  if (!j.contains("seed")) return 0;
  return j["seed"].get<std::uint64_t>();
}

Expr parse_f(const Json& j, const char* key = "f") {
  if (!j.contains(key))
    throw Error(ErrorCode::InvalidArgument, std::string("request needs \"") + key + "\"");
  return parse_expression(j[key].get<std::string>());
}

std::vector<Cplx> region_samples(const Json& req, std::size_t fallback_count,
                                 double fallback_radius) {
  const std::size_t count =
      static_cast<std::size_t>(get_num(req, "samples", static_cast<double>(fallback_count)));
  const std::uint64_t seed = get_seed(req);
  if (req.contains("region")) {
    const Json& r = req["region"];
    const std::string kind = r.contains("kind") ? r["kind"].get<std::string>() : "disk";
    if (kind == "disk") return disk_samples(count, get_num(r, "radius", fallback_radius), seed);
    if (kind == "rect") {
      if (!r.contains("re") || !r.contains("im"))
        throw Error(ErrorCode::InvalidArgument, "rect region needs \"re\" and \"im\" ranges");
      return rect_samples(count, r["re"][0].get<double>(), r["re"][1].get<double>(),
                          r["im"][0].get<double>(), r["im"][1].get<double>(), seed);
    }
    throw Error(ErrorCode::InvalidArgument, "region kind must be disk or rect");
  }
  return disk_samples(count, get_num(req, "radius", fallback_radius), seed);
}

LinearDifferenceOperator operator_from_request(const Json& req) {
  if (req.contains("delta")) {
    const Json& d = req["delta"];
    return delta_n(d.contains("shift") ? complex_from_json(d["shift"]) : Cplx(1.0, 0.0),
                   d.contains("order") ? d["order"].get<int>() : 1);
  }
  if (req.contains("op")) return operator_from_json(req["op"]);
  throw Error(ErrorCode::InvalidArgument, "request needs \"op\" or \"delta\"");
}

RadialGrid grid_from_request(const Json& req) {
  if (!req.contains("grid")) return geometric_grid();
  const Json& g = req["grid"];
  return geometric_grid(get_num(g, "rmin", 5.0), get_num(g, "rmax", 200.0),
                        static_cast<int>(get_num(g, "count", 12)),
                        static_cast<int>(get_num(g, "nodes", 512)));
}

std::string done(Json& report) { return canonical_dump(report); }

}  // namespace

std::string solve_eigen(const std::string& request) {
  const Json req = parse_json(request);
  const LinearDifferenceOperator op = operator_from_request(req);
  const Cplx A = req.contains("eigenvalue") ? complex_from_json(req["eigenvalue"]) : Cplx(1.0, 0.0);
  const bool generic = req.contains("generic") && req["generic"].get<bool>();

  std::vector<PeriodicAtom> atoms;
  if (req.contains("atoms")) {
    for (const auto& a : req["atoms"]) atoms.push_back(atom_from_json(a, op.shift()));
  }

  const GeneralSolution gs = build_general_solution(op, A, atoms, generic);

  VerifyOptions vo;
  vo.samples = static_cast<std::size_t>(get_num(req, "samples", 100));
  vo.radius = get_num(req, "radius", 5.0);
  vo.seed = get_seed(req);
  const ResidualReport rep = verify_general_solution(gs, vo);
  const double tol = get_num(req, "tol", 1e-9);

  Json report;
  report["command"] = "solve-eigen";
  report["solution"] = solution_json(gs);
  report["expression"] = print_expression(to_expr(gs));
  report["residual"] = residual_json_obj(rep);
  report["tol"] = tol;
  report["verified"] = rep.max_rel < tol;
  return done(report);
}

std::string residual(const std::string& request) {
  const Json req = parse_json(request);
  const Expr f = parse_f(req);
  const double tol = get_num(req, "tol", 1e-9);

  Json report;
  report["command"] = "residual";

  ResidualReport rep;
  if (req.contains("recurrence")) {
    const Json& rj = req["recurrence"];
    // coefficients are exact-rational polynomial arrays, or general
    // expression strings for equations with transcendental entries
    std::vector<Expr> coeff_exprs;
    Expr rhs;
    Cplx step{1.0, 0.0};
    if (rj.contains("coeffs_expr")) {
      for (const auto& s : rj["coeffs_expr"])
        coeff_exprs.push_back(parse_expression(s.get<std::string>()));
      rhs = rj.contains("rhs_expr") ? parse_expression(rj["rhs_expr"].get<std::string>())
                                    : make_const(0.0);
      if (rj.contains("step")) step = complex_from_json(rj["step"]);
      if (coeff_exprs.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "recurrence needs at least two coefficients");
      report["recurrence"] = rj;
    } else {
      const PolynomialRecurrence rec = recurrence_from_json(rj);
      for (const auto& c : rec.coeffs) coeff_exprs.push_back(poly_expr(c));
      rhs = poly_expr(rec.rhs);
      step = Cplx(rec.step.get_d(), 0.0);
      report["recurrence"] = recurrence_json(rec);
    }
    Expr lhs;
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < coeff_exprs.size(); ++j) {
      Expr term = make_mul(coeff_exprs[j], shift(f, static_cast<double>(j) * step));
      terms.push_back(term);
      lhs = lhs ? make_add(lhs, term) : term;
    }
    rep = expression_residual(lhs, rhs, region_samples(req, 100, 5.0), terms);
  } else {
    const LinearDifferenceOperator op = operator_from_request(req);
    Cplx A(1.0, 0.0);
    bool detected = false;
    if (req.contains("eigenvalue")) {
      const Json& ev = req["eigenvalue"];
      if (ev.is_string() && ev.get<std::string>() == "auto") {
        // detect-eigenvalue mode: probe A = L(f)(z0) / f(z0)
        const Cplx z0 = req.contains("probe") ? complex_from_json(req["probe"]) : Cplx(0.31, 0.17);
        A = estimate_eigenvalue(op, f, z0);
        detected = true;
      } else {
        A = complex_from_json(ev);
      }
    }
    const auto samples = region_samples(req, 100, 5.0);
    // a mixed operator carries "diff_coeffs"/"b0" inside the operator object
    // (or a separate "mixed" object)
    const Json* mixed = nullptr;
    if (req.contains("op") && req["op"].contains("diff_coeffs")) mixed = &req["op"];
    if (req.contains("mixed")) mixed = &req["mixed"];
    if (mixed) {
      std::vector<Cplx> bs;
      for (const auto& v : (*mixed)["diff_coeffs"]) bs.push_back(complex_from_json(v));
      const Cplx b0 = mixed->contains("b0") ? complex_from_json((*mixed)["b0"]) : Cplx(0.0, 0.0);
      const LinearDifferentialOperator lop(std::move(bs), b0);
      const Expr lhs = apply_mixed(op, lop, f);
      const Expr rhs = make_mul(make_const(A), f);
      std::vector<Expr> scale = {rhs};
      rep = expression_residual(lhs, rhs, samples, scale);
      Json mj = operator_json(op);
      Json dc = Json::array();
      for (const auto& v : (*mixed)["diff_coeffs"]) dc.push_back(v);
      mj["diff_coeffs"] = dc;
      mj["b0"] = complex_json(b0);
      report["operator"] = mj;
    } else {
      rep = merodiff::residual(op, f, A, samples);
      report["operator"] = operator_json(op);
    }
    report["eigenvalue"] = complex_json(A);
    if (detected) report["eigenvalue_detected"] = true;
  }
  report["f"] = print_expression(f);
  report["report"] = residual_json_obj(rep);
  report["tol"] = tol;
  report["verified"] = rep.max_rel < tol;
  return done(report);
}

std::string nevanlinna(const std::string& request) {
  const Json req = parse_json(request);
  const Expr f = parse_f(req);
  const RadialGrid grid = grid_from_request(req);
  const NevanlinnaReport rep = characteristic(f, grid);

  Json report;
  report["command"] = "nevanlinna";
  report["f"] = print_expression(f);
  Json body = nevanlinna_json_obj(rep);
  for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();

  if (req.contains("deficiency")) {
    Json arr = Json::array();
    for (const auto& v : req["deficiency"]) {
      Json e;
      if (v.is_string() && v.get<std::string>() == "inf") {
        const DeficiencyEstimate d = deficiency_infinity(f, grid, &rep);
        e["a"] = "inf";
        e["delta"] = d.delta;
        e["ratios"] = d.ratios;
      } else {
        const Cplx a = complex_from_json(v);
        const DeficiencyEstimate d = deficiency(f, a, grid, &rep);
        e["a"] = complex_json(a);
        e["delta"] = d.delta;
        e["ratios"] = d.ratios;
      }
      arr.push_back(e);
    }
    report["deficiency"] = arr;
  }

  if (req.contains("borel")) {
    Json arr = Json::array();
    for (const auto& v : req["borel"]) {
      const Cplx a = complex_from_json(v);
      const BorelEstimate b = borel_estimate(f, a, grid, &rep);
      Json e;
      e["a"] = complex_json(a);
      e["lambda"] = b.lambda;
      e["order"] = b.order;
      e["exceptional"] = b.exceptional;
      if (b.lambda_degenerate) e["no_zeros"] = true;
      e["zero_counts"] = b.zero_counts;
      arr.push_back(e);
    }
    report["lambda"] = arr;
  }
  return done(report);
}

std::string share(const std::string& request) {
  const Json req = parse_json(request);
  const Expr f = parse_f(req, "f");
  const Expr g = parse_f(req, "g");
  const double r = get_num(req, "radius", 10.0);
  const double pair_tol = get_num(req, "pair_tol", 1e-6);

  SharingVerdict v;
  if (req.contains("value") && req["value"].is_string() &&
      req["value"].get<std::string>() == "inf") {
    v = shares_infinity(f, g, r, pair_tol);
  } else {
    const Cplx a = req.contains("value") ? complex_from_json(req["value"]) : Cplx(0.0, 0.0);
    v = shares_value(f, g, a, r, pair_tol);
  }
  Json report;
  report["command"] = "share";
  report["f"] = print_expression(f);
  report["g"] = print_expression(g);
  Json body = sharing_json(v);
  for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
  report["verified"] = v.cm;
  return done(report);
}

std::string rational(const std::string& request) {
  const Json req = parse_json(request);
  const Json& rec_json = req.contains("recurrence") ? req["recurrence"] : req;
  const PolynomialRecurrence rec = recurrence_from_json(rec_json);
  const RationalSolutionSet s = rational_solutions(rec);

  Json report;
  report["command"] = "rational";
  report["recurrence"] = recurrence_json(rec);
  Json body = rational_solutions_json(s);
  for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
  const bool have_solution = (s.particular && !s.particular->is_zero()) || !s.basis.empty() ||
                             (s.particular && rec.rhs.is_zero());
  report["verified"] = have_solution;
  return done(report);
}

std::string roots(const std::string& request) {
  const Json req = parse_json(request);
  if (!req.contains("coeffs")) throw Error(ErrorCode::InvalidArgument, "request needs \"coeffs\"");
  const ComplexPoly p = cpoly_from_json(req["coeffs"]);
  const double tol = get_num(req, "cluster_tol", 1e-6);
  const RootSet rs = find_roots(p, tol);

  Json report;
  report["command"] = "roots";
  report["coeffs"] = cpoly_json(p);
  report["roots"] = root_set_json(rs);
  report["converged"] = rs.converged;
  if (!rs.diagnostics.empty()) {
    Json d = Json::array();
    for (const auto& s : rs.diagnostics) d.push_back(s);
    report["diagnostics"] = d;
  }
  report["verified"] = rs.converged;
  return done(report);
}

}  // namespace merodiff::workflows
