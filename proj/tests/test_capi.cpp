// Exercises the shared-library surface exactly as an external C client
// would: opaque handles, status codes, thread-local error text, JSON
// workflows.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "merodiff.h"

using Json = nlohmann::ordered_json;

namespace {

std::string run_ok(md_status (*fn)(const char*, char**), const std::string& request) {
  char* out = nullptr;
  REQUIRE(fn(request.c_str(), &out) == MD_OK);
  REQUIRE(out != nullptr);
  std::string s(out);
  md_string_free(out);
  return s;
}

}  // namespace

TEST_CASE("version and error text") {
  CHECK(std::strlen(md_version()) > 0);
  md_expr* e = nullptr;
  CHECK(md_expr_parse("2*(", &e) == MD_ERR_PARSE);
  CHECK(std::strlen(md_last_error()) > 0);
  CHECK(md_expr_parse(nullptr, &e) == MD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("expression handles: parse, print, eval, derivative, shift") {
  md_expr* e = nullptr;
  REQUIRE(md_expr_parse("exp(2*z)", &e) == MD_OK);

  char* text = nullptr;
  REQUIRE(md_expr_print(e, &text) == MD_OK);
  CHECK(std::string(text) == "exp(2*z)");
  md_string_free(text);

  md_complex v{};
  int flags = -1;
  REQUIRE(md_expr_eval(e, {0.0, 0.0}, &v, &flags) == MD_OK);
  CHECK(v.re == doctest::Approx(1.0));
  CHECK(flags == 0);

  md_expr* de = nullptr;
  REQUIRE(md_expr_derivative(e, &de) == MD_OK);
  REQUIRE(md_expr_eval(de, {0.0, 0.0}, &v, &flags) == MD_OK);
  CHECK(v.re == doctest::Approx(2.0));

  md_expr* se = nullptr;
  REQUIRE(md_expr_shift(e, {1.0, 0.0}, &se) == MD_OK);
  REQUIRE(md_expr_eval(se, {0.0, 0.0}, &v, &flags) == MD_OK);
  CHECK(v.re == doctest::Approx(std::exp(2.0)));

  // pole flag surfaces through the C interface
  md_expr* t = nullptr;
  REQUIRE(md_expr_parse("tan(pi*z)", &t) == MD_OK);
  REQUIRE(md_expr_eval(t, {0.5, 0.0}, &v, &flags) == MD_OK);
  CHECK((flags & MD_EVAL_POLE) != 0);

  md_expr_free(e);
  md_expr_free(de);
  md_expr_free(se);
  md_expr_free(t);
}

TEST_CASE("difference operator handles") {
  md_diff_op* op = nullptr;
  REQUIRE(md_diff_op_delta({1.0, 0.0}, 2, &op) == MD_OK);
  md_complex sum{1.0, 1.0};
  REQUIRE(md_diff_op_coefficient_sum(op, &sum) == MD_OK);
  CHECK(sum.re == 0.0);
  CHECK(sum.im == 0.0);

  md_expr* f = nullptr;
  REQUIRE(md_expr_parse("exp(z*log(2))", &f) == MD_OK);
  md_expr* lf = nullptr;
  REQUIRE(md_diff_op_apply(op, f, &lf) == MD_OK);
  md_complex a{}, b{};
  int flags = 0;
  REQUIRE(md_expr_eval(lf, {0.3, 0.2}, &a, &flags) == MD_OK);
  REQUIRE(md_expr_eval(f, {0.3, 0.2}, &b, &flags) == MD_OK);
  // (2-1)^2 = 1: second difference fixes growth-ratio-2 functions
  CHECK(a.re == doctest::Approx(b.re).epsilon(1e-12));
  CHECK(a.im == doctest::Approx(b.im).epsilon(1e-12));
  md_expr_free(f);
  md_expr_free(lf);
  md_diff_op_free(op);

  const md_complex bad[] = {{1.0, 0.0}, {0.0, 0.0}};
  md_diff_op* invalid = nullptr;
  CHECK(md_diff_op_new({1.0, 0.0}, bad, 2, &invalid) == MD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solve-eigen workflow") {
  const Json report =
      Json::parse(run_ok(&md_solve_eigen_run_json,
                         R"({"delta": {"shift": "1", "order": 1}, "eigenvalue": "1"})"));
  CHECK(report["verified"].get<bool>());
  CHECK(report["solution"]["terms"].size() == 1);
  CHECK(report["solution"]["terms"][0]["root"].get<std::string>() == "2");
}

TEST_CASE("rational workflow returns the exact quotient") {
  const Json report = Json::parse(run_ok(
      &md_rational_run_json,
      R"({"recurrence": {"coeffs": [["-1","0","1"],["4","4","1"],["3","1"]],
          "rhs": ["4","3","2"], "step": "1"}})"));
  CHECK(report["particular"]["pretty"].get<std::string>() == "z/(z+1)");
  CHECK(report["certificate"]["residual"].empty());
}

TEST_CASE("share workflow") {
  const Json report = Json::parse(
      run_ok(&md_share_run_json,
             R"js({"f": "sin(z)", "g": "2*sin(z)", "value": "0", "radius": 10})js"));
  CHECK(report["cm"].get<bool>());
  CHECK(report["pairs"].size() == 7);
}

TEST_CASE("roots workflow") {
  const Json report =
      Json::parse(run_ok(&md_roots_run_json, R"({"coeffs": ["2","-3","1"]})"));
  CHECK(report["roots"].size() == 2);
  CHECK(report["roots"][0]["root"].get<std::string>() == "1");
  CHECK(report["roots"][1]["root"].get<std::string>() == "2");
}

TEST_CASE("workflow errors map onto status codes") {
  char* out = nullptr;
  CHECK(md_residual_run_json(R"({"f": "###"})", &out) == MD_ERR_PARSE);
  CHECK(md_residual_run_json("not json at all", &out) == MD_ERR_PARSE);
  CHECK(md_solve_eigen_run_json(R"({"eigenvalue": "1"})", &out) == MD_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(md_last_error()) > 0);
}
