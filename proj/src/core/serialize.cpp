#include "core/serialize.hpp"

#include "core/error.hpp"

namespace merodiff {

Json complex_json(Cplx z) { return format_complex_short(z); }

Cplx complex_from_json(const Json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_string()) return parse_complex(j.get<std::string>());
  throw Error(ErrorCode::Parse, "expected a complex number (string \"a+bi\" or number)");
}

Json ratpoly_json(const RatPoly& p) {
  Json arr = Json::array();
  for (const auto& s : p.to_strings()) arr.push_back(s);
  return arr;
}

RatPoly ratpoly_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "polynomial must be an array of coefficients");
  std::vector<std::string> coeffs;
  for (const auto& v : j) {
    if (v.is_string())
      coeffs.push_back(v.get<std::string>());
    else if (v.is_number_integer())
      coeffs.push_back(std::to_string(v.get<long long>()));
    else
      throw Error(ErrorCode::Parse, "rational coefficients must be strings like \"3/4\" or integers");
  }
  return RatPoly::from_strings(coeffs);
}

Json cpoly_json(const ComplexPoly& p) {
  Json arr = Json::array();
  for (Cplx c : p.c) arr.push_back(complex_json(c));
  return arr;
}

ComplexPoly cpoly_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "polynomial must be an array of coefficients");
  std::vector<Cplx> c;
  for (const auto& v : j) c.push_back(complex_from_json(v));
  return ComplexPoly(std::move(c));
}

Json operator_json(const LinearDifferenceOperator& op) {
  Json j;
  j["shift"] = complex_json(op.shift());
  Json coeffs = Json::array();
  for (Cplx a : op.coefficients()) coeffs.push_back(complex_json(a));
  j["coeffs"] = coeffs;
  return j;
}

LinearDifferenceOperator operator_from_json(const Json& j) {
  if (!j.contains("shift") || !j.contains("coeffs"))
    throw Error(ErrorCode::Parse, "operator needs \"shift\" and \"coeffs\"");
  std::vector<Cplx> coeffs;
  for (const auto& v : j["coeffs"]) coeffs.push_back(complex_from_json(v));
  return LinearDifferenceOperator(complex_from_json(j["shift"]), std::move(coeffs));
}

Json recurrence_json(const PolynomialRecurrence& rec) {
  Json j;
  Json coeffs = Json::array();
  for (const auto& c : rec.coeffs) coeffs.push_back(ratpoly_json(c));
  j["coeffs"] = coeffs;
  j["rhs"] = ratpoly_json(rec.rhs);
  j["step"] = rat_to_string(rec.step);
  return j;
}

PolynomialRecurrence recurrence_from_json(const Json& j) {
  if (!j.contains("coeffs"))
    throw Error(ErrorCode::Parse, "recurrence needs \"coeffs\" (ascending shift)");
  std::vector<RatPoly> coeffs;
  for (const auto& v : j["coeffs"]) coeffs.push_back(ratpoly_from_json(v));
  RatPoly rhs;
  if (j.contains("rhs")) rhs = ratpoly_from_json(j["rhs"]);
  Rat step(1);
  if (j.contains("step")) {
    const auto& s = j["step"];
    step = s.is_string() ? rat_from_string(s.get<std::string>())
                         : Rat(static_cast<long>(s.get<long long>()));
  }
  return PolynomialRecurrence(std::move(coeffs), std::move(rhs), std::move(step));
}

Json atom_json(const PeriodicAtom& atom) {
  Json j;
  switch (atom.kind) {
    case PeriodicAtom::Kind::Constant:
      j["kind"] = "constant";
      j["value"] = complex_json(atom.constant);
      break;
    case PeriodicAtom::Kind::ExpHarmonic:
      j["kind"] = "exp";
      j["harmonic"] = atom.harmonic;
      break;
    case PeriodicAtom::Kind::Sin: j["kind"] = "sin"; break;
    case PeriodicAtom::Kind::Cos: j["kind"] = "cos"; break;
    case PeriodicAtom::Kind::Tan: j["kind"] = "tan"; break;
    case PeriodicAtom::Kind::RationalInQ:
      j["kind"] = "qrational";
      j["num"] = cpoly_json(atom.num);
      j["den"] = cpoly_json(atom.den);
      break;
  }
  return j;
}

PeriodicAtom atom_from_json(const Json& j, Cplx period) {
  const std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "constant";
  if (kind == "constant") {
    const Cplx v = j.contains("value") ? complex_from_json(j["value"]) : Cplx(1.0, 0.0);
    return PeriodicAtom::make_constant(v, period);
  }
  if (kind == "exp") {
    const long k = j.contains("harmonic") ? j["harmonic"].get<long>() : 1;
    return PeriodicAtom::exp_harmonic(k, period);
  }
  if (kind == "sin") return PeriodicAtom::trig(PeriodicAtom::Kind::Sin, period);
  if (kind == "cos") return PeriodicAtom::trig(PeriodicAtom::Kind::Cos, period);
  if (kind == "tan") return PeriodicAtom::trig(PeriodicAtom::Kind::Tan, period);
  if (kind == "qrational") {
    if (!j.contains("num") || !j.contains("den"))
      throw Error(ErrorCode::Parse, "qrational atom needs \"num\" and \"den\"");
    return PeriodicAtom::rational_in_q(cpoly_from_json(j["num"]), cpoly_from_json(j["den"]),
                                       period);
  }
  throw Error(ErrorCode::Parse, "unknown atom kind '" + kind + "'");
}

Json root_set_json(const RootSet& rs) {
  Json arr = Json::array();
  for (const auto& r : rs.roots) {
    Json e;
    e["root"] = complex_json(r.root);
    e["multiplicity"] = r.multiplicity;
    if (r.near_degenerate) e["near_degenerate"] = true;
    arr.push_back(e);
  }
  return arr;
}

Json solution_json(const GeneralSolution& gs) {
  Json j;
  j["eigenvalue"] = complex_json(gs.eigenvalue);
  if (gs.op) j["operator"] = operator_json(*gs.op);
  j["roots"] = root_set_json(gs.roots);
  Json terms = Json::array();
  for (const auto& t : gs.terms) {
    Json e;
    e["root"] = complex_json(t.root);
    e["mult_index"] = t.power;
    e["atom"] = atom_json(t.atom);
    terms.push_back(e);
  }
  j["terms"] = terms;
  j["branch"] = gs.branch_note;
  if (gs.generic_mode) j["generic_mode"] = true;
  if (!gs.diagnostics.empty()) {
    Json d = Json::array();
    for (const auto& s : gs.diagnostics) d.push_back(s);
    j["diagnostics"] = d;
  }
  return j;
}

Json residual_json_obj(const ResidualReport& rep) {
  Json j;
  j["samples"] = static_cast<long long>(rep.sample_count);
  j["used"] = static_cast<long long>(rep.used);
  j["max_abs"] = rep.max_abs;
  j["max_rel"] = rep.max_rel;
  Json sk = Json::array();
  for (Cplx z : rep.skipped) sk.push_back(complex_json(z));
  j["skipped"] = sk;
  return j;
}

Json nevanlinna_json_obj(const NevanlinnaReport& rep) {
  Json j;
  j["radii"] = rep.radii;
  j["m"] = rep.m;
  j["N"] = rep.N;
  j["T"] = rep.T;
  j["order"] = rep.order.value;
  j["hyper_order"] = rep.hyper_order.value;
  if (!rep.order_note.empty()) j["order_note"] = rep.order_note;
  if (rep.order.degenerate) j["order_degenerate"] = true;
  j["monotone_ok"] = rep.monotone_ok;
  if (!rep.diagnostics.empty()) {
    Json d = Json::array();
    for (const auto& s : rep.diagnostics) d.push_back(s);
    j["diagnostics"] = d;
  }
  return j;
}

Json sharing_json(const SharingVerdict& v) {
  Json j;
  j["value"] = v.at_infinity ? Json("inf") : complex_json(v.value);
  j["radius"] = v.radius;
  j["cm"] = v.cm;
  j["im"] = v.im;
  Json pairs = Json::array();
  for (const auto& p : v.pairs) {
    Json e;
    e["f_point"] = complex_json(p.f_point);
    e["g_point"] = complex_json(p.g_point);
    e["distance"] = p.distance;
    e["f_mult"] = p.f_mult;
    e["g_mult"] = p.g_mult;
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  auto unmatched = [](const std::vector<PointCount>& pts) {
    Json arr = Json::array();
    for (const auto& p : pts) {
      Json e;
      e["point"] = complex_json(p.location);
      e["mult"] = p.multiplicity;
      arr.push_back(e);
    }
    return arr;
  };
  j["unmatched_f"] = unmatched(v.unmatched_f);
  j["unmatched_g"] = unmatched(v.unmatched_g);
  return j;
}

Json certificate_json(const SubstitutionCertificate& cert) {
  Json j;
  j["numerator"] = ratpoly_json(cert.numerator);
  j["denominator"] = ratpoly_json(cert.denominator);
  Json prods = Json::array();
  for (const auto& p : cert.coeff_products) prods.push_back(ratpoly_json(p));
  j["coeff_products"] = prods;
  j["rhs_times_common"] = ratpoly_json(cert.rhs_times_common);
  j["residual"] = ratpoly_json(cert.residual);
  return j;
}

Json rational_solutions_json(const RationalSolutionSet& s) {
  Json j;
  if (s.particular) {
    Json p;
    p["num"] = ratpoly_json(s.particular->num);
    p["den"] = ratpoly_json(s.particular->den);
    p["pretty"] = s.particular->to_pretty();
    j["particular"] = p;
  } else {
    j["particular"] = nullptr;
  }
  Json basis = Json::array();
  for (const auto& b : s.basis) {
    Json e;
    e["num"] = ratpoly_json(b.num);
    e["den"] = ratpoly_json(b.den);
    e["pretty"] = b.to_pretty();
    basis.push_back(e);
  }
  j["basis"] = basis;
  j["universal_denominator"] = ratpoly_json(s.universal_den);
  j["degree_bound"] = static_cast<long long>(s.degree_bound);
  if (s.certificate) j["certificate"] = certificate_json(*s.certificate);
  if (!s.basis_certificates.empty()) {
    Json arr = Json::array();
    for (const auto& c : s.basis_certificates) arr.push_back(certificate_json(c));
    j["basis_certificates"] = arr;
  }
  j["step"] = rat_to_string(s.step);
  if (!s.notes.empty()) {
    Json n = Json::array();
    for (const auto& s2 : s.notes) n.push_back(s2);
    j["notes"] = n;
  }
  return j;
}

}  // namespace merodiff
