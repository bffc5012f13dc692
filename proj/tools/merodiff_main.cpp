// merodiff command-line front end.
//
// Subcommands: solve-eigen, residual, nevanlinna, share, rational, roots.
// Each one assembles a JSON request, runs it through the shared-library C
// API, and renders the canonical JSON report (or a human-readable digest).
// Exit codes: 0 success/verified, 1 usage or parse error, 2 verification or
// numeric failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "merodiff.h"

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  bool json_out = false;
  bool quiet = false;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string config_path;
};

[[noreturn]] void die(const std::string& msg, int code) {
  std::cerr << "merodiff: " << msg << "\n";
  std::exit(code);
}

Json base_request(const Common& common) {
  Json req = Json::object();
  if (!common.config_path.empty()) {
    std::ifstream in(common.config_path);
    if (!in) die("cannot open config file " + common.config_path, 1);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      req = Json::parse(ss.str());
    } catch (const std::exception& e) {
      die(std::string("config file is not valid JSON: ") + e.what(), 1);
    }
  }
  req["tol"] = common.tol;
  req["seed"] = common.seed;
  return req;
}

int exit_code_for(md_status st) {
  switch (st) {
    case MD_OK: return 0;
    case MD_ERR_PARSE:
    case MD_ERR_INVALID_ARGUMENT: return 1;
    default: return 2;
  }
}

std::string g_raw_report;

Json run(md_status (*fn)(const char*, char**), const Json& request) {
  char* out = nullptr;
  const md_status st = fn(request.dump().c_str(), &out);
  if (st != MD_OK) die(md_last_error(), exit_code_for(st));
  g_raw_report.assign(out);
  md_string_free(out);
  return Json::parse(g_raw_report);
}

int finish(const Json& report, const Common& common) {
  const bool verified = !report.contains("verified") || report["verified"].get<bool>();
  if (common.json_out) std::fputs(g_raw_report.c_str(), stdout);
  return verified ? 0 : 2;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open " + path, 1);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) die(path + " is not valid JSON", 1);
  return j;
}

// operator flags shared by solve-eigen and residual
struct OpFlags {
  std::string op_spec;  // "delta:c=1,n=2"
  std::string coeffs;   // "2,-3,1"
  std::string shift = "1";
};

void add_operator_flags(CLI::App* cmd, OpFlags& flags) {
  cmd->add_option("--op", flags.op_spec,
                  "operator spec 'delta:c=<complex>,n=<order>' (forward difference)");
  cmd->add_option("--coeffs", flags.coeffs, "operator coefficients a_0,...,a_n (complex)");
  cmd->add_option("--c", flags.shift, "shift c for --coeffs operators (default 1)");
}

void put_operator(Json& req, const OpFlags& flags) {
  if (!flags.op_spec.empty()) {
    if (flags.op_spec.rfind("delta:", 0) != 0)
      die("--op expects the form delta:c=<complex>,n=<order>", 1);
    Json d;
    for (const auto& part : split_list(flags.op_spec.substr(6))) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) die("bad --op fragment '" + part + "'", 1);
      const std::string key = part.substr(0, eq), val = part.substr(eq + 1);
      if (key == "c")
        d["shift"] = val;
      else if (key == "n")
        d["order"] = std::stoi(val);
      else
        die("unknown --op key '" + key + "'", 1);
    }
    req["delta"] = d;
  } else if (!flags.coeffs.empty()) {
    Json op;
    op["shift"] = flags.shift;
    op["coeffs"] = split_list(flags.coeffs);
    req["op"] = op;
  }
}

Json atom_from_spec(const std::string& spec) {
  Json a;
  if (spec == "sin" || spec == "cos" || spec == "tan") {
    a["kind"] = spec;
  } else if (spec.rfind("exp", 0) == 0) {
    a["kind"] = "exp";
    a["harmonic"] = spec.size() > 4 && spec[3] == ':' ? std::stol(spec.substr(4)) : 1;
  } else if (spec.rfind("qrat:num=", 0) == 0) {
    const auto den_at = spec.find(":den=");
    if (den_at == std::string::npos) die("qrat atom needs qrat:num=...:den=...", 1);
    a["kind"] = "qrational";
    a["num"] = split_list(spec.substr(9, den_at - 9));
    a["den"] = split_list(spec.substr(den_at + 5));
  } else {
    a["kind"] = "constant";
    a["value"] = spec;
  }
  return a;
}

std::string fmt(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
  return buf;
}

void render_residual_block(const Json& r) {
  std::printf("residual: max_abs %.6g   max_rel %.6g   samples %lld/%lld used\n",
              r["max_abs"].get<double>(), r["max_rel"].get<double>(), r["used"].get<long long>(),
              r["samples"].get<long long>());
}

void render_verified(const Json& report) {
  if (report.contains("verified"))
    std::printf("%s\n", report["verified"].get<bool>() ? "VERIFIED" : "NOT VERIFIED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"merodiff: difference operators, eigen-solutions, Nevanlinna estimates"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(md_version()));

  Common common;
  app.add_flag("--json", common.json_out, "print the canonical JSON report");
  app.add_flag("--quiet", common.quiet, "suppress detail lines");
  app.add_option("--tol", common.tol, "verification tolerance (default 1e-9)");
  app.add_option("--seed", common.seed, "sampling seed (default 0)");
  app.add_option("--config", common.config_path, "JSON config file mirroring the flags");

  auto* solve = app.add_subcommand("solve-eigen", "build and verify solutions of L(f) = A f");
  OpFlags solve_op;
  add_operator_flags(solve, solve_op);
  std::string eigenvalue = "1";
  bool generic = false;
  std::vector<std::string> atom_specs;
  double radius = 5.0;
  std::size_t samples = 100;
  solve->add_option("--A", eigenvalue, "eigenvalue A (complex, default 1)");
  solve->add_flag("--generic", generic, "allow A = 0 (plain recurrence mode)");
  solve->add_option("--atom", atom_specs,
                    "per-root atom: <const>|exp[:k]|sin|cos|tan|qrat:num=..:den=..");
  solve->add_option("--radius", radius, "verification disk radius (default 5)");
  solve->add_option("--samples", samples, "verification sample count (default 100)");

  auto* resid = app.add_subcommand("residual", "test a candidate against an operator/recurrence");
  OpFlags resid_op;
  add_operator_flags(resid, resid_op);
  std::string f_text, rec_file, rec_inline, mixed_coeffs, mixed_b0 = "0", rect;
  std::string resid_eigen = "1";
  double resid_radius = 5.0;
  std::size_t resid_samples = 100;
  resid->add_option("--f", f_text, "candidate expression")->required();
  resid->add_option("--A", resid_eigen, "eigenvalue A (complex, default 1)");
  resid->add_option("--rec", rec_file, "recurrence JSON file (polynomial coefficients)");
  resid->add_option("--rec-inline", rec_inline, "recurrence JSON inline");
  resid->add_option("--mixed", mixed_coeffs, "differential part b_1,...,b_k");
  resid->add_option("--b0", mixed_b0, "additive constant of the differential part");
  resid->add_option("--rect", rect, "sample rectangle re_lo,re_hi,im_lo,im_hi");
  resid->add_option("--radius", resid_radius, "sample disk radius (default 5)");
  resid->add_option("--samples", resid_samples, "sample count (default 100)");

  auto* nev = app.add_subcommand("nevanlinna", "characteristic, order, deficiency, zero growth");
  std::string nev_f;
  double rmin = 5.0, rmax = 200.0;
  int radii = 12, nodes = 512;
  std::vector<std::string> defic, borel;
  std::string csv_path;
  nev->add_option("--f", nev_f, "expression")->required();
  nev->add_option("--rmin", rmin, "smallest radius (default 5)");
  nev->add_option("--rmax", rmax, "largest radius (default 200)");
  nev->add_option("--radii", radii, "number of radii (default 12)");
  nev->add_option("--nodes", nodes, "quadrature nodes per circle (default 512)");
  nev->add_option("--deficiency", defic, "value a (or 'inf') for a deficiency estimate");
  nev->add_option("--borel", borel, "value a for a zero-growth (Borel) verdict");
  nev->add_option("--csv", csv_path, "write radii,m,N,T as CSV");

  auto* shr = app.add_subcommand("share", "CM/IM value sharing inside a disk");
  std::string share_f, share_g, share_a = "0";
  double share_r = 10.0, pair_tol = 1e-6;
  shr->add_option("--f", share_f, "first function")->required();
  shr->add_option("--g", share_g, "second function")->required();
  shr->add_option("--a", share_a, "shared value (complex or 'inf')");
  shr->add_option("--r", share_r, "disk radius (default 10)");
  shr->add_option("--pair-tol", pair_tol, "zero pairing tolerance (default 1e-6)");

  auto* rat = app.add_subcommand("rational", "exact rational solutions of a recurrence");
  std::string rat_file, rat_inline;
  rat->add_option("--file", rat_file, "recurrence JSON file");
  rat->add_option("--rec-inline", rat_inline, "recurrence JSON inline");

  auto* rts = app.add_subcommand("roots", "complex polynomial roots with multiplicities");
  std::string root_coeffs;
  double cluster_tol = 1e-6;
  rts->add_option("--coeffs", root_coeffs, "coefficients c_0,...,c_n (complex)")->required();
  rts->add_option("--cluster-tol", cluster_tol, "root clustering tolerance (default 1e-6)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      Json req = base_request(common);
      put_operator(req, solve_op);
      req["eigenvalue"] = eigenvalue;
      if (generic) req["generic"] = true;
      if (!atom_specs.empty()) {
        Json atoms = Json::array();
        for (const auto& s : atom_specs) atoms.push_back(atom_from_spec(s));
        req["atoms"] = atoms;
      }
      req["radius"] = radius;
      req["samples"] = samples;
      const Json report = run(&md_solve_eigen_run_json, req);
      if (!common.json_out) {
        std::printf("eigenvalue A = %s\n", fmt(report["solution"]["eigenvalue"]).c_str());
        std::printf("characteristic roots:\n");
        for (const auto& r : report["solution"]["roots"]) {
          std::printf("  %-24s multiplicity %d%s\n", fmt(r["root"]).c_str(),
                      r["multiplicity"].get<int>(),
                      r.contains("near_degenerate") ? "  (near-degenerate)" : "");
        }
        std::printf("terms:\n");
        for (const auto& t : report["solution"]["terms"]) {
          std::printf("  z^%d * (%s)^(z/c) * %s\n", t["mult_index"].get<int>(),
                      fmt(t["root"]).c_str(), t["atom"]["kind"].get<std::string>().c_str());
        }
        if (!common.quiet)
          std::printf("f(z) = %s\n", report["expression"].get<std::string>().c_str());
        if (report["solution"].contains("diagnostics"))
          for (const auto& d : report["solution"]["diagnostics"])
            std::printf("note: %s\n", d.get<std::string>().c_str());
        render_residual_block(report["residual"]);
        render_verified(report);
      }
      return finish(report, common);
    }

    if (resid->parsed()) {
      Json req = base_request(common);
      req["f"] = f_text;
      if (!rec_file.empty() || !rec_inline.empty()) {
        req["recurrence"] = rec_file.empty() ? Json::parse(rec_inline) : read_json_file(rec_file);
      } else {
        put_operator(req, resid_op);
        req["eigenvalue"] = resid_eigen;
        if (!mixed_coeffs.empty()) {
          Json m;
          m["diff_coeffs"] = split_list(mixed_coeffs);
          m["b0"] = mixed_b0;
          req["mixed"] = m;
        }
      }
      if (!rect.empty()) {
        const auto parts = split_list(rect);
        if (parts.size() != 4) die("--rect needs re_lo,re_hi,im_lo,im_hi", 1);
        Json region;
        region["kind"] = "rect";
        region["re"] = {std::stod(parts[0]), std::stod(parts[1])};
        region["im"] = {std::stod(parts[2]), std::stod(parts[3])};
        req["region"] = region;
      } else {
        req["radius"] = resid_radius;
      }
      req["samples"] = resid_samples;
      const Json report = run(&md_residual_run_json, req);
      if (!common.json_out) {
        render_residual_block(report["report"]);
        render_verified(report);
      }
      return finish(report, common);
    }

    if (nev->parsed()) {
      Json req = base_request(common);
      req["f"] = nev_f;
      Json grid;
      grid["rmin"] = rmin;
      grid["rmax"] = rmax;
      grid["count"] = radii;
      grid["nodes"] = nodes;
      req["grid"] = grid;
      if (!defic.empty()) req["deficiency"] = defic;
      if (!borel.empty()) req["borel"] = borel;
      const Json report = run(&md_nevanlinna_run_json, req);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) die("cannot write " + csv_path, 1);
        csv << "r,m,N,T\n";
        for (std::size_t i = 0; i < report["radii"].size(); ++i) {
          char line[160];
          std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g\n",
                        report["radii"][i].get<double>(), report["m"][i].get<double>(),
                        report["N"][i].get<double>(), report["T"][i].get<double>());
          csv << line;
        }
      }
      if (!common.json_out) {
        if (!common.quiet) {
          std::printf("%12s %14s %14s %14s\n", "r", "m(r)", "N(r)", "T(r)");
          for (std::size_t i = 0; i < report["radii"].size(); ++i) {
            std::printf("%12.4g %14.6g %14.6g %14.6g\n", report["radii"][i].get<double>(),
                        report["m"][i].get<double>(), report["N"][i].get<double>(),
                        report["T"][i].get<double>());
          }
        }
        std::printf("order %.4g", report["order"].get<double>());
        if (report.contains("order_note"))
          std::printf(" (%s)", report["order_note"].get<std::string>().c_str());
        std::printf("   hyper-order %.4g\n", report["hyper_order"].get<double>());
        if (report.contains("deficiency"))
          for (const auto& d : report["deficiency"])
            std::printf("deficiency at %s: %.4g\n", fmt(d["a"]).c_str(),
                        d["delta"].get<double>());
        if (report.contains("lambda"))
          for (const auto& b : report["lambda"])
            std::printf("zero-growth at %s: lambda %.4g vs order %.4g -> %s\n",
                        fmt(b["a"]).c_str(), b["lambda"].get<double>(), b["order"].get<double>(),
                        b["exceptional"].get<bool>() ? "Borel-exceptional candidate"
                                                     : "not exceptional");
      }
      return finish(report, common);
    }

    if (shr->parsed()) {
      Json req = base_request(common);
      req["f"] = share_f;
      req["g"] = share_g;
      req["value"] = share_a;
      req["radius"] = share_r;
      req["pair_tol"] = pair_tol;
      const Json report = run(&md_share_run_json, req);
      if (!common.json_out) {
        if (!common.quiet) {
          std::printf("%-26s %-26s %10s %7s %7s\n", "point of f", "point of g", "dist", "mult f",
                      "mult g");
          for (const auto& p : report["pairs"]) {
            std::printf("%-26s %-26s %10.2e %7d %7d\n", fmt(p["f_point"]).c_str(),
                        fmt(p["g_point"]).c_str(), p["distance"].get<double>(),
                        p["f_mult"].get<int>(), p["g_mult"].get<int>());
          }
          for (const auto& u : report["unmatched_f"])
            std::printf("unmatched in f: %s (x%d)\n", fmt(u["point"]).c_str(),
                        u["mult"].get<int>());
          for (const auto& u : report["unmatched_g"])
            std::printf("unmatched in g: %s (x%d)\n", fmt(u["point"]).c_str(),
                        u["mult"].get<int>());
        }
        std::printf("CM within |z| < %g: %s   IM: %s\n", report["radius"].get<double>(),
                    report["cm"].get<bool>() ? "yes" : "no",
                    report["im"].get<bool>() ? "yes" : "no");
      }
      return finish(report, common);
    }

    if (rat->parsed()) {
      Json req = base_request(common);
      if (!rat_file.empty())
        req["recurrence"] = read_json_file(rat_file);
      else if (!rat_inline.empty())
        req["recurrence"] = Json::parse(rat_inline);
      else
        die("rational needs --file or --rec-inline", 1);
      const Json report = run(&md_rational_run_json, req);
      if (!common.json_out) {
        if (report["particular"].is_null()) {
          std::printf("no rational solution\n");
        } else {
          std::printf("particular solution: %s\n",
                      report["particular"]["pretty"].get<std::string>().c_str());
        }
        for (const auto& b : report["basis"])
          std::printf("homogeneous basis:   %s\n", b["pretty"].get<std::string>().c_str());
        if (report.contains("certificate")) {
          const bool zero = report["certificate"]["residual"].empty();
          std::printf("substitution certificate residual: %s\n", zero ? "0 (exact)" : "NONZERO");
        }
        if (!common.quiet && report.contains("notes"))
          for (const auto& n : report["notes"])
            std::printf("note: %s\n", n.get<std::string>().c_str());
      }
      return finish(report, common);
    }

    if (rts->parsed()) {
      Json req = base_request(common);
      req["coeffs"] = split_list(root_coeffs);
      req["cluster_tol"] = cluster_tol;
      const Json report = run(&md_roots_run_json, req);
      if (!common.json_out) {
        for (const auto& r : report["roots"])
          std::printf("%-28s multiplicity %d%s\n", fmt(r["root"]).c_str(),
                      r["multiplicity"].get<int>(),
                      r.contains("near_degenerate") ? "  (near-degenerate)" : "");
        render_verified(report);
      }
      return finish(report, common);
    }
  } catch (const std::exception& e) {
    die(e.what(), 1);
  }
  return 1;
}
