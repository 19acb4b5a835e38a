#ifndef ZETALAB_H
#define ZETALAB_H

/* C interface to the zetalab library.
 *
 * Every function returns a zl_status. On failure the message of the most
 * recent error on the calling thread is available through zl_last_error().
 * Strings returned through char** out parameters are owned by the caller and
 * released with zl_string_free(). */

#include <stddef.h>

#if defined(ZL_BUILDING_LIBRARY)
#define ZL_API __attribute__((visibility("default")))
#else
#define ZL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zl_status {
  ZL_OK = 0,
  ZL_INVALID_ARGUMENT = 1,
  ZL_DOMAIN = 2,
  ZL_POLE_AT_ONE = 3,
  ZL_ACCURACY_NOT_REACHED = 4,
  ZL_BUDGET_EXCEEDED = 5,
  ZL_CACHE_VERSION_MISMATCH = 6,
  ZL_CACHE_CORRUPTION = 7,
  ZL_BRACKET_FAILURE = 8,
  ZL_ZERO_PROXIMITY = 9,
  ZL_CONSTANT_UNAVAILABLE = 10,
  ZL_LIMIT_EXCEEDED = 11,
  ZL_CONSTRAINT_VIOLATION = 12,
  ZL_TAIL_BOUND_UNAVAILABLE = 13,
  ZL_IO = 14,
  ZL_INTERNAL = 99
} zl_status;

typedef struct zl_context zl_context;

ZL_API const char* zl_version(void);
ZL_API const char* zl_status_name(zl_status status);
ZL_API const char* zl_last_error(void);
ZL_API void zl_string_free(char* s);

/* config_json may be NULL or "" for defaults; unknown keys are rejected. */
ZL_API zl_status zl_context_create(const char* config_json, zl_context** out);
ZL_API void zl_context_destroy(zl_context* ctx);
/* The effective configuration as JSON. */
ZL_API zl_status zl_context_config(const zl_context* ctx, char** out_json);

ZL_API zl_status zl_zeta(double re, double im, double* out_re, double* out_im);
ZL_API zl_status zl_theta(double t, double* out);
ZL_API zl_status zl_hardy_z(double t, double* out);
ZL_API zl_status zl_zeta_2sigma(double sigma, double epsilon, double* out);

/* S(t) and S_1(t) through the context's zero set. */
ZL_API zl_status zl_S(zl_context* ctx, double t, double* out);
ZL_API zl_status zl_S1(zl_context* ctx, double t, double* out);

/* Reverse ladder step T -> Y with its relative residual. */
ZL_API zl_status zl_reverse_step(zl_context* ctx, double T, double* out_Y, double* out_residual);

/* F(sigma0; f) for a series id ("zeta", "eta", "chi4", "one", "file:PATH"). */
ZL_API zl_status zl_dirichlet_F(const char* series, double sigma0, double* out);

/* Exact (x^n + y^n)/z^n for decimal x, y, z, as "p/q" or "p". */
ZL_API zl_status zl_fermat_value(const char* x, const char* y, const char* z, int n, char** out);

/* Runs one command and returns its versioned JSON document.
 * request_json: {"command": "zeta-mean" | "s1-mean" | "ladder" | "coupling" |
 *   "functional" | "fermat-scan" | "dirichlet-mean" | "cache-list" |
 *   "cache-verify" | "cache-drop", ...parameters}. */
ZL_API zl_status zl_run(zl_context* ctx, const char* request_json, char** out_json);

ZL_API zl_status zl_validate_document(const char* document_json);
ZL_API zl_status zl_to_csv(const char* document_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif
