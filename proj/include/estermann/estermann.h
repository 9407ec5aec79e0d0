/*
 * C interface to the estermann library.
 *
 * Every function returns an est_status. On failure a human-readable message
 * for the calling thread is available from est_last_error() until the next
 * call into the library on that thread. Strings returned through char** out
 * parameters are owned by the caller and released with est_string_free().
 */
#ifndef ESTERMANN_ESTERMANN_H
#define ESTERMANN_ESTERMANN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define EST_API __declspec(dllexport)
#else
#  define EST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum est_status {
  EST_OK = 0,
  EST_ERR_INVALID_ARGUMENT = 1,
  EST_ERR_PARSE = 2,
  EST_ERR_MU_SUM_NOT_ONE = 3,
  EST_ERR_INTEGER_EXPONENT = 4,
  EST_ERR_EXPONENT_TOO_SMALL = 5,
  EST_ERR_WINDOW_TOO_WIDE = 6,
  EST_ERR_EMPTY_RANGE = 7,
  EST_ERR_MEMORY_BUDGET = 8,
  EST_ERR_ORACLE_LIMIT = 9,
  EST_ERR_TOLERANCE_NOT_MET = 10,
  EST_ERR_OVERFLOW = 11,
  EST_ERR_IO = 12,
  EST_ERR_INTERNAL = 99
} est_status;

typedef enum est_count_method {
  EST_COUNT_FAST = 0,
  EST_COUNT_BRUTE_FORCE = 1,
  EST_COUNT_CONVOLUTION = 2
} est_count_method;

typedef enum est_mode { EST_MODE_EXACT = 0, EST_MODE_MODEL = 1 } est_mode;

typedef enum est_format { EST_FORMAT_JSON = 0, EST_FORMAT_CSV = 1 } est_format;

/* Sum kinds for grid evaluation. EST_SUM_SC is S_c(alpha; N3, H3),
 * EST_SUM_S1 is the von Mangoldt sum over (N1 - 2H, N1], EST_SUM_PRIME the
 * plain prime sum over the same interval. */
typedef enum est_sum_kind { EST_SUM_SC = 0, EST_SUM_S1 = 1, EST_SUM_PRIME = 2 } est_sum_kind;

typedef struct est_options {
  unsigned threads;        /* worker threads, >= 1 */
  uint64_t mem_mb;         /* per-request memory budget in MiB */
  uint64_t oracle_limit;   /* brute-force count refuses N above this */
  const char* cache_path;  /* base-prime cache file, or NULL */
} est_options;

typedef struct est_instance est_instance;

EST_API const char* est_version(void);
EST_API const char* est_status_name(est_status status);
EST_API const char* est_last_error(void);
EST_API void est_string_free(char* s);
EST_API void est_options_init(est_options* options);

/* Instances. c and the mu components are "p/q" strings; mu is "r,r,r". */
EST_API est_status est_instance_create(int64_t N, const char* c, const char* mu, int64_t H,
                                       est_instance** out);
EST_API est_status est_instance_from_json(const char* json, est_instance** out);
EST_API est_status est_instance_to_json(const est_instance* inst, char** out);
EST_API void est_instance_destroy(est_instance* inst);

EST_API est_status est_derived_params_json(const est_instance* inst, char** out);
EST_API est_status est_hypothesis_report_json(const est_instance* inst, char** out);

/* Exact representation count. */
EST_API est_status est_count_total(const est_instance* inst, est_count_method method,
                                   const est_options* options, uint64_t* total);
/* Count breakdown as JSON {"total","n_lo","n_hi","per_n"} or CSV n,v,r. */
EST_API est_status est_count_breakdown(const est_instance* inst, est_count_method method,
                                       est_format format, const est_options* options, char** out);

/* Arc decomposition report as JSON. */
EST_API est_status est_arcs_json(const est_instance* inst, est_mode mode, double tol,
                                 const est_options* options, char** out);

/* CSV alpha,re,im,abs over `count` equally spaced points in [alpha_lo, alpha_hi]. */
EST_API est_status est_expsum_grid_csv(const est_instance* inst, est_sum_kind kind, double alpha_lo,
                                       double alpha_hi, size_t count, const est_options* options,
                                       char** out);

/* CSV N,c,H,kappa,exact_total,main_term,ratio,I_major_re,I_minor_abs, one row per instance. */
EST_API est_status est_sweep_csv(const est_instance* const* insts, size_t count, est_mode mode,
                                 double tol, const est_options* options, char** out);

/* Runs the built-in property suite; *passed is 1 when every check passed. */
EST_API est_status est_verify(int quick, const est_options* options, char** table, int* passed);

/* Scalar primitives. */
EST_API est_status est_floor_pow(uint64_t n, int64_t p, int64_t q, uint64_t* out);
EST_API est_status est_pi_interval(uint64_t x, uint64_t y, const est_options* options, uint64_t* out);
EST_API est_status est_psi(uint64_t x, const est_options* options, double* out);
/* Direct sum over (x - y, x]; p/q is only read for EST_SUM_SC. */
EST_API est_status est_eval_sum(est_sum_kind kind, double alpha, double x, double y, int64_t p,
                                int64_t q, const est_options* options, double* re, double* im);

#ifdef __cplusplus
}
#endif

#endif /* ESTERMANN_ESTERMANN_H */
