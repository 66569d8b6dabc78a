#ifndef IEMCOH_IEMCOH_H
#define IEMCOH_IEMCOH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define IEMCOH_API __declspec(dllexport)
#else
#define IEMCOH_API __attribute__((visibility("default")))
#endif

typedef enum iemcoh_status {
  IEMCOH_OK = 0,
  IEMCOH_ERR_INTERNAL = 1,
  IEMCOH_ERR_INPUT = 2,
  IEMCOH_ERR_CONVERGENCE = 3,
  IEMCOH_ERR_BOUNDARY = 4,
  IEMCOH_ERR_CONNECTION = 5,
  IEMCOH_ERR_PRECISION = 6,
  IEMCOH_ERR_SINGULAR = 7,
  IEMCOH_ERR_COVERAGE = 8,
  IEMCOH_ERR_DOMAIN = 9
} iemcoh_status;

typedef struct iemcoh_iem iemcoh_iem;
typedef struct iemcoh_path iemcoh_path;
typedef struct iemcoh_observable iemcoh_observable;

typedef struct iemcoh_solve_options {
  double tolerance;      /* default 1e-8 */
  size_t samples;        /* orbit samples for psi, default 10000 */
  size_t delta_levels;   /* V(k) rows, default 8 */
  size_t pair_budget;    /* Hölder fit pairs, default 200000 */
  uint64_t seed;         /* default 0 */
} iemcoh_solve_options;

typedef struct iemcoh_thresholds {
  double tau;    /* default 0.25 */
  double theta;  /* default 0.05 */
  double gap;    /* default 1e3 */
} iemcoh_thresholds;

IEMCOH_API const char* iemcoh_version(void);
/* Message of the last failure on this thread; empty after success.
   Null handle or string arguments fail with IEMCOH_ERR_DOMAIN. */
IEMCOH_API const char* iemcoh_last_error(void);
/* Frees strings returned through char** out-parameters. */
IEMCOH_API void iemcoh_string_free(char* s);

IEMCOH_API void iemcoh_default_solve_options(iemcoh_solve_options* opts);
IEMCOH_API void iemcoh_default_thresholds(iemcoh_thresholds* th);

/* precision_bits = 0 keeps the document's precision_bits (256 if absent). */
IEMCOH_API iemcoh_status iemcoh_iem_from_json(const char* json, long precision_bits, iemcoh_iem** out);
IEMCOH_API void iemcoh_iem_free(iemcoh_iem* t);
IEMCOH_API size_t iemcoh_iem_size(const iemcoh_iem* t);
/* d, g, s, Omega and the vertex cycles as JSON. */
IEMCOH_API iemcoh_status iemcoh_describe(const iemcoh_iem* t, char** out_json);
/* Scans the orbits of the inner singularities up to `depth` steps. */
IEMCOH_API iemcoh_status iemcoh_check_connection(const iemcoh_iem* t, size_t depth);

/* Stops early at a connection or when lengths fall below resolution; the
   reason is recorded in the path JSON. */
IEMCOH_API iemcoh_status iemcoh_path_new(const iemcoh_iem* t, size_t max_steps, iemcoh_path** out);
IEMCOH_API void iemcoh_path_free(iemcoh_path* p);
IEMCOH_API size_t iemcoh_path_length(const iemcoh_path* p);
IEMCOH_API iemcoh_status iemcoh_path_json(const iemcoh_path* p, char** out_json);
/* IEMCOH_ERR_CONNECTION if the path ended at a connection. */
IEMCOH_API iemcoh_status iemcoh_path_require_complete(const iemcoh_path* p);

IEMCOH_API iemcoh_status iemcoh_diagnose(const iemcoh_path* p, const iemcoh_thresholds* th, char** out_json);

IEMCOH_API iemcoh_status iemcoh_observable_from_json(const iemcoh_iem* t, const char* json, iemcoh_observable** out);
IEMCOH_API void iemcoh_observable_free(iemcoh_observable* phi);

/* Writes the solver report and, if out_csv is non-null, the psi samples. */
IEMCOH_API iemcoh_status iemcoh_solve(const iemcoh_path* p, const iemcoh_observable* phi,
                                      const iemcoh_solve_options* opts, char** out_json, char** out_csv);

/* Points are decimal strings. */
IEMCOH_API iemcoh_status iemcoh_decompose_time(const iemcoh_path* p, const char* x, size_t n, char** out_json);
IEMCOH_API iemcoh_status iemcoh_decompose_space(const iemcoh_path* p, const char* x_minus, const char* x_plus,
                                                char** out_json);

/* Hölder fit on "x,psi" CSV text as written by iemcoh_solve. */
IEMCOH_API iemcoh_status iemcoh_holder(const char* csv, size_t pair_budget, uint64_t seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
