#ifndef SINGTRACE_H
#define SINGTRACE_H

/* C interface to the singtrace library. Handles are opaque; every call
 * returns an st_status and, on failure, sets a thread-local message read by
 * st_last_error(). Strings returned through char** are owned by the caller
 * and released with st_string_free(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ST_API __attribute__((visibility("default")))
#else
#define ST_API
#endif

typedef enum st_status {
  ST_OK = 0,
  ST_E_DOMAIN = 1,      /* precondition violated */
  ST_E_PARSE = 2,       /* malformed model, curve or specifier */
  ST_E_UNSUPPORTED = 3, /* operation undefined for the model kind */
  ST_E_IO = 4,          /* unreadable file */
  ST_E_NUMERIC = 5,     /* non-convergence or non-finite result */
  ST_E_INTERNAL = 6,
  ST_E_ARGUMENT = 7     /* null pointer or invalid enum-like string */
} st_status;

typedef struct st_model st_model;
typedef struct st_curve st_curve;

ST_API const char* st_version(void);
ST_API const char* st_last_error(void);
ST_API void st_string_free(char* s);

/* Models. st_model_load also accepts "harmonic" and "counterexample". */
ST_API st_status st_model_from_json(const char* json, st_model** out);
ST_API st_status st_model_load(const char* path_or_name, st_model** out);
ST_API void st_model_free(st_model* m);
ST_API st_status st_model_kind(const st_model* m, char** out);
ST_API st_status st_model_to_json(const st_model* m, char** out);
ST_API st_status st_model_mu(const st_model* m, double t, double* out);
ST_API st_status st_model_distribution(const st_model* m, double s, double* out);
ST_API st_status st_model_partial_integral(const st_model* m, double t, double* out);
ST_API st_status st_model_tail_trace(const st_model* m, double t, double* out);
ST_API st_status st_model_marcinkiewicz_norm(const st_model* m, double u_max, double* out);

/* Curves over count points of [u_min, u_max] in u = log t. functional is one
 * of zeta, heat, gheat, dixmier, tail, lidskii, optionally prefixed with
 * "cesaro-of:". q applies to heat; f_spec ("heatexp:<q>", "squarecut",
 * "tailind") to gheat and may be NULL otherwise. */
ST_API st_status st_curve_compute(const st_model* m, const char* functional, double q,
                                  const char* f_spec, double u_min, double u_max, size_t count,
                                  st_curve** out);
ST_API void st_curve_free(st_curve* c);
ST_API st_status st_curve_size(const st_curve* c, size_t* out);
/* Borrowed pointers valid until st_curve_free. */
ST_API st_status st_curve_values(const st_curve* c, const double** values, size_t* count);
ST_API st_status st_curve_u(const st_curve* c, size_t i, double* out);
ST_API st_status st_curve_to_csv(const st_curve* c, char** out);
ST_API st_status st_curve_to_json(const st_curve* c, char** out);
ST_API st_status st_curve_from_json(const char* json, st_curve** out);

/* int_0^inf f(s) s^-2 ds */
ST_API st_status st_weight_integral(const char* f_spec, double* out);

/* b << a on the grid plus plateau boundaries, with the tail-trace check. */
ST_API st_status st_majorize(const st_model* a, const st_model* b, double u_min, double u_max,
                             size_t count, int* verdict, char** report_json);

/* Gap report for the counterexample at probe scales k_min..k_max. */
ST_API st_status st_counterexample_report(double q, int k_min, int k_max, char** report_json,
                                          char** probes_csv);

/* family: power, loewner, convex, sandwich or all. */
ST_API st_status st_matrix_suite(const char* family, size_t trials, size_t dim_max,
                                 uint64_t seed, int* all_pass, char** report_json);

/* Runs a named check suite; qs may be NULL for the default q list. */
ST_API st_status st_verify(const char* suite, const double* qs, size_t n_qs, int* all_pass,
                           char** results_json);

#ifdef __cplusplus
}
#endif

#endif
