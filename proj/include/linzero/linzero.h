#ifndef LINZERO_LINZERO_H
#define LINZERO_LINZERO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef LZ_BUILDING_LIBRARY
#    define LZ_API __declspec(dllexport)
#  else
#    define LZ_API __declspec(dllimport)
#  endif
#else
#  define LZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lz_status {
  LZ_OK = 0,
  LZ_USAGE = 1,                /* bad argument or precondition */
  LZ_PARSE = 2,                /* malformed system document or report */
  LZ_CONSISTENCY = 3,          /* an exact identity failed to hold */
  LZ_VERIFICATION_FAILED = 4,  /* verify ran; some check did not pass */
  LZ_DEGENERATE = 5,           /* parameter on the exceptional locus */
  LZ_UNSUPPORTED = 6,          /* needs exactly one parameter */
  LZ_INTEGRATION = 7,          /* step size underflow or budget exhausted */
  LZ_INTERNAL = 8
} lz_status;

typedef struct lz_system lz_system;
typedef struct lz_derived lz_derived;

/* Message for the most recent failure on the calling thread; "" if none. */
LZ_API const char* lz_last_error(void);
LZ_API const char* lz_version(void);

/* Every char* handed out by the library is released with this. */
LZ_API void lz_string_free(char* s);

/* ---- systems ---- */

LZ_API lz_status lz_system_parse(const char* json_text, lz_system** out);
LZ_API lz_status lz_system_demo(lz_system** out);
LZ_API lz_status lz_system_random(size_t n, unsigned d, unsigned M, size_t q, int64_t seed,
                                  lz_system** out);
LZ_API void lz_system_free(lz_system* sys);

LZ_API size_t lz_system_dimension(const lz_system* sys);
LZ_API size_t lz_system_parameters(const lz_system* sys);
LZ_API unsigned lz_system_degree(const lz_system* sys);
/* Canonical JSON rendering of the document, newline terminated. */
LZ_API lz_status lz_system_to_json(const lz_system* sys, char** out);
/* 16 hex digits identifying the canonical rendering. */
LZ_API lz_status lz_system_fingerprint(const lz_system* sys, char** out);

/* ---- derived equation ---- */

LZ_API lz_status lz_derive(const lz_system* sys, lz_derived** out);
LZ_API void lz_derived_free(lz_derived* eq);
LZ_API size_t lz_derived_order(const lz_derived* eq);
/* Leading coefficient beta as text, e.g. "eps". */
LZ_API lz_status lz_derived_beta(const lz_derived* eq, char** out);
/* gamma_i as text, 0 <= i < order. */
LZ_API lz_status lz_derived_gamma(const lz_derived* eq, size_t i, char** out);
/* Reduced coefficient A_i = gamma_i / beta in lowest terms, as text. */
LZ_API lz_status lz_derived_coefficient(const lz_derived* eq, size_t i, char** out);
/* Normalized equation, e.g. "y'' - 2*y' + (-eps + 1)*y = 0". */
LZ_API lz_status lz_derived_equation(const lz_derived* eq, char** out);

/* ---- pipelines ---- */

typedef struct lz_options {
  /* bound constants */
  double C, sigma, mu, E, R;
  /* verify */
  double tol;                 /* integrator tolerance */
  int cap;                    /* effective-division cap; negative for 2D - 1 */
  uint64_t seed;              /* initial vector, uniform in [-1, 1]^n */
  const char* epsilons;       /* comma-separated rationals; NULL for defaults */
  double residual_threshold;
  /* sweep */
  const char* eps_grid;       /* comma-separated rationals */
  size_t component;           /* 0-based */
  const char* init;           /* comma-separated doubles; NULL for e_n */
  double sweep_tol;
  double refine_tol;
  const char* comment;        /* leading '#' line of the CSV; NULL for none */
} lz_options;

LZ_API void lz_options_default(lz_options* opts);

/* JSON report with k, beta, gammas, degeneracy generators and locus. */
LZ_API lz_status lz_derive_report(const lz_system* sys, char** report);

/* The report is produced whenever the checks ran, including on
   LZ_VERIFICATION_FAILED. */
LZ_API lz_status lz_verify(const lz_system* sys, const lz_options* opts, char** report);

LZ_API lz_status lz_sweep(const lz_system* sys, const lz_options* opts, char** csv);

/* Re-derives from the embedded document and re-checks every certificate.
   LZ_OK when all hold; LZ_VERIFICATION_FAILED otherwise, with the reason in
   lz_last_error(). */
LZ_API lz_status lz_report_recheck(const char* report_json);

#ifdef __cplusplus
}
#endif

#endif
