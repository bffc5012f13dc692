/*
 * merodiff C API.
 *
 * Shared-library interface to the merodiff toolkit: expression trees over one
 * complex variable, linear difference operators L(f) = sum a_j f(z + j c),
 * eigen-solution construction, Nevanlinna-type growth estimation, value
 * sharing checks, and exact rational solutions of polynomial-coefficient
 * recurrences.
 *
 * Conventions:
 *   - Objects are opaque handles, freed with the matching *_free call.
 *   - Functions return md_status; on failure md_last_error() describes the
 *     problem (thread-local message, valid until the next API call on that
 *     thread).
 *   - Strings returned through char** are heap-allocated; release them with
 *     md_string_free.
 *   - The *_run_json entry points take a JSON request and produce a JSON
 *     report in the same canonical form the CLI prints; see README for the
 *     request schemas.
 */
#ifndef MERODIFF_H
#define MERODIFF_H

#include <stddef.h>

#if defined(_WIN32)
#define MD_API __declspec(dllexport)
#else
#define MD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct md_expr md_expr;
typedef struct md_diff_op md_diff_op;

typedef struct {
  double re;
  double im;
} md_complex;

typedef enum {
  MD_OK = 0,
  MD_ERR_PARSE = 1,
  MD_ERR_INVALID_ARGUMENT = 2,
  MD_ERR_NUMERIC = 3,
  MD_ERR_VERIFICATION = 4,
  MD_ERR_INTERNAL = 5
} md_status;

/* Evaluation flags (bitmask in md_expr_eval). */
enum {
  MD_EVAL_POLE = 1,
  MD_EVAL_OVERFLOW = 2
};

MD_API const char* md_version(void);
MD_API const char* md_last_error(void);
MD_API void md_string_free(char* s);

/* ---- expressions ------------------------------------------------------- */
MD_API md_status md_expr_parse(const char* text, md_expr** out);
MD_API md_status md_expr_print(const md_expr* e, char** out);
MD_API md_status md_expr_eval(const md_expr* e, md_complex z, md_complex* value, int* flags);
MD_API md_status md_expr_derivative(const md_expr* e, md_expr** out);
MD_API md_status md_expr_shift(const md_expr* e, md_complex delta, md_expr** out);
MD_API void md_expr_free(md_expr* e);

/* ---- difference operators ----------------------------------------------- */
/* coeffs is a_0..a_n ascending, n = count-1 >= 1, a_n != 0, shift != 0 */
MD_API md_status md_diff_op_new(md_complex shift, const md_complex* coeffs, size_t count,
                                md_diff_op** out);
/* forward difference of given order: a_j = (-1)^(n-j) C(n,j) */
MD_API md_status md_diff_op_delta(md_complex shift, int order, md_diff_op** out);
MD_API md_status md_diff_op_apply(const md_diff_op* op, const md_expr* f, md_expr** out);
MD_API md_status md_diff_op_coefficient_sum(const md_diff_op* op, md_complex* out);
MD_API void md_diff_op_free(md_diff_op* op);

/* ---- JSON workflows ------------------------------------------------------ */
/* One entry point per CLI subcommand; request/report schemas in README. */
MD_API md_status md_solve_eigen_run_json(const char* request, char** report);
MD_API md_status md_residual_run_json(const char* request, char** report);
MD_API md_status md_nevanlinna_run_json(const char* request, char** report);
MD_API md_status md_share_run_json(const char* request, char** report);
MD_API md_status md_rational_run_json(const char* request, char** report);
MD_API md_status md_roots_run_json(const char* request, char** report);

#ifdef __cplusplus
}
#endif

#endif /* MERODIFF_H */
