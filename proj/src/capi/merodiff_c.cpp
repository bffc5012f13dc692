// extern-C surface of the shared library. Thin: validates arguments, converts
// exceptions into status codes plus a thread-local message, and forwards to
// the core.
#include "merodiff.h"

#include <cstring>
#include <new>
#include <string>

#include "core/diff_operator.hpp"
#include "core/error.hpp"
#include "core/expr.hpp"
#include "core/workflows.hpp"

using namespace merodiff;

struct md_expr {
  Expr e;
};

struct md_diff_op {
  LinearDifferenceOperator op;
};

namespace {

thread_local std::string g_last_error;

md_status status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse: return MD_ERR_PARSE;
    case ErrorCode::InvalidArgument: return MD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Numeric: return MD_ERR_NUMERIC;
    case ErrorCode::Verification: return MD_ERR_VERIFICATION;
    case ErrorCode::Internal: return MD_ERR_INTERNAL;
  }
  return MD_ERR_INTERNAL;
}

template <class Fn>
md_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MD_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Cplx from_c(md_complex z) { return {z.re, z.im}; }
md_complex to_c(Cplx z) { return {z.real(), z.imag()}; }

md_status require(bool cond, const char* msg) {
  if (cond) return MD_OK;
  g_last_error = msg;
  return MD_ERR_INVALID_ARGUMENT;
}

template <class Fn>
md_status run_workflow(Fn&& fn, const char* request, char** report) {
  if (require(request && report, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] { *report = dup_string(fn(std::string(request))); });
}

}  // namespace

extern "C" {

const char* md_version(void) { return "0.1.0"; }

const char* md_last_error(void) { return g_last_error.c_str(); }

void md_string_free(char* s) { delete[] s; }

/* ---- expressions --------------------------------------------------------- */

md_status md_expr_parse(const char* text, md_expr** out) {
  if (require(text && out, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new md_expr{parse_expression(text)}; });
}

md_status md_expr_print(const md_expr* e, char** out) {
  if (require(e && out, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = dup_string(print_expression(e->e)); });
}

md_status md_expr_eval(const md_expr* e, md_complex z, md_complex* value, int* flags) {
  if (require(e && value, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const EvalOutcome r = eval(e->e, from_c(z));
    *value = to_c(r.value);
    if (flags) *flags = (r.pole ? MD_EVAL_POLE : 0) | (r.overflow ? MD_EVAL_OVERFLOW : 0);
  });
}

md_status md_expr_derivative(const md_expr* e, md_expr** out) {
  if (require(e && out, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new md_expr{derivative(e->e)}; });
}

md_status md_expr_shift(const md_expr* e, md_complex delta, md_expr** out) {
  if (require(e && out, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new md_expr{shift(e->e, from_c(delta))}; });
}

void md_expr_free(md_expr* e) { delete e; }

/* ---- difference operators ------------------------------------------------ */

md_status md_diff_op_new(md_complex shift, const md_complex* coeffs, size_t count,
                         md_diff_op** out) {
  if (require(coeffs && out && count >= 2, "need shift, coefficients a_0..a_n with n >= 1") !=
      MD_OK)
    return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<Cplx> a(count);
    for (size_t i = 0; i < count; ++i) a[i] = from_c(coeffs[i]);
    *out = new md_diff_op{LinearDifferenceOperator(from_c(shift), std::move(a))};
  });
}

md_status md_diff_op_delta(md_complex shift, int order, md_diff_op** out) {
  if (require(out != nullptr, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new md_diff_op{delta_n(from_c(shift), order)}; });
}

md_status md_diff_op_apply(const md_diff_op* op, const md_expr* f, md_expr** out) {
  if (require(op && f && out, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new md_expr{apply_difference(op->op, f->e)}; });
}

md_status md_diff_op_coefficient_sum(const md_diff_op* op, md_complex* out) {
  if (require(op && out, "null argument") != MD_OK) return MD_ERR_INVALID_ARGUMENT;
  *out = to_c(op->op.coefficient_sum());
  return MD_OK;
}

void md_diff_op_free(md_diff_op* op) { delete op; }

/* ---- JSON workflows ------------------------------------------------------- */

md_status md_solve_eigen_run_json(const char* request, char** report) {
  return run_workflow(workflows::solve_eigen, request, report);
}

md_status md_residual_run_json(const char* request, char** report) {
  return run_workflow(workflows::residual, request, report);
}

md_status md_nevanlinna_run_json(const char* request, char** report) {
  return run_workflow(workflows::nevanlinna, request, report);
}

md_status md_share_run_json(const char* request, char** report) {
  return run_workflow(workflows::share, request, report);
}

md_status md_rational_run_json(const char* request, char** report) {
  return run_workflow(workflows::rational, request, report);
}

md_status md_roots_run_json(const char* request, char** report) {
  return run_workflow(workflows::roots, request, report);
}

}  // extern "C"
