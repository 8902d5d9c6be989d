/* cle — linear functions under a uniform constraint: RLS / (1+1) EA
 * simulation, drift diagnostics, exact hitting-time oracle, and runtime
 * bound evaluators, behind a C ABI.
 *
 * Conventions:
 *   - Bit strings are uint8_t arrays of length n, entry j in {0,1}; index 0
 *     is the position with the smallest weight (printed strings show the
 *     most significant position first).
 *   - Every fallible call returns cle_status; CLE_OK is 0. On failure,
 *     cle_last_error() returns a thread-local description.
 *   - char** outputs are heap strings owned by the caller; release them
 *     with cle_string_free().
 */
#ifndef CLE_H
#define CLE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef CLE_API
#define CLE_API __attribute__((visibility("default")))
#endif

typedef enum cle_status {
  CLE_OK = 0,
  CLE_ERROR_INVALID_ARGUMENT = 1,
  CLE_ERROR_OVERFLOW = 2,        /* fitness range would exceed 64 bits */
  CLE_ERROR_UNSUPPORTED = 3,     /* e.g. modified variant without w_1 = w_b */
  CLE_ERROR_TOO_LARGE = 4,       /* beyond an exact-computation size cap */
  CLE_ERROR_PARSE = 5,
  CLE_ERROR_IO = 6,
  CLE_ERROR_CHECK_FAILED = 7,
  CLE_ERROR_INTERNAL = 8
} cle_status;

typedef enum cle_algo { CLE_ALGO_RLS = 0, CLE_ALGO_EA = 1 } cle_algo;

typedef enum cle_variant {
  CLE_VARIANT_GENERAL = 0,
  CLE_VARIANT_MODIFIED = 1
} cle_variant;

typedef struct cle_instance cle_instance; /* opaque */
typedef struct cle_profile cle_profile;   /* opaque */

typedef struct cle_fitness {
  uint64_t objective;
  uint64_t penalty;
  uint64_t total;
} cle_fitness;

typedef struct cle_trial_result {
  uint64_t iterations;
  uint64_t feasibility_hit;
  uint64_t seed;
  int hit_cap;
} cle_trial_result;

typedef struct cle_drift_estimate {
  double mean;
  double std_error;
  uint64_t samples;
} cle_drift_estimate;

typedef struct cle_oracle_report {
  double from_uniform;
  double max_state_time;
  uint64_t states;
} cle_oracle_report;

CLE_API const char* cle_version(void);
CLE_API const char* cle_status_name(cle_status status);
CLE_API const char* cle_last_error(void);
CLE_API void cle_string_free(char* text);

/* ---- instances ------------------------------------------------------- */

CLE_API cle_status cle_instance_create(const uint64_t* weights, size_t n,
                                       uint64_t b, cle_instance** out);
CLE_API cle_status cle_instance_gen_iota(size_t n, uint64_t b,
                                         cle_instance** out);
CLE_API cle_status cle_instance_gen_lower_bound(size_t n, cle_instance** out);
CLE_API cle_status cle_instance_gen_onemax_like(size_t n, uint64_t b,
                                                cle_instance** out);
CLE_API cle_status cle_instance_gen_random(size_t n, uint64_t b,
                                           uint64_t w_max, uint64_t seed,
                                           cle_instance** out);
CLE_API cle_status cle_instance_from_json(const char* text,
                                          cle_instance** out);
CLE_API cle_status cle_instance_to_json(const cle_instance* inst, char** out);
CLE_API void cle_instance_free(cle_instance* inst);

CLE_API size_t cle_instance_n(const cle_instance* inst);
CLE_API uint64_t cle_instance_bound(const cle_instance* inst);
CLE_API uint64_t cle_instance_w_max(const cle_instance* inst);
CLE_API uint64_t cle_instance_f_opt(const cle_instance* inst);
CLE_API cle_status cle_instance_weight(const cle_instance* inst, size_t pos,
                                       uint64_t* out);

CLE_API cle_status cle_fitness_eval(const cle_instance* inst,
                                    const uint8_t* bits, cle_fitness* out);
CLE_API cle_status cle_is_feasible(const cle_instance* inst,
                                   const uint8_t* bits, int* out);
CLE_API cle_status cle_is_tight(const cle_instance* inst, const uint8_t* bits,
                                int* out);
CLE_API cle_status cle_is_optimal(const cle_instance* inst,
                                  const uint8_t* bits, int* out);

/* ---- trials ----------------------------------------------------------- */

/* Per-trial stream seed derived from a master seed and cell coordinates;
 * sweeps use rate_numerator = 0 for RLS cells. */
CLE_API uint64_t cle_trial_seed(uint64_t master, uint64_t n, uint64_t b,
                                uint64_t rate_numerator, uint64_t trial_index);

/* Runs one trial to the first optimal point. start may be NULL (uniform
 * random start drawn from the trial stream) or a bit string of length n.
 * rate_numerator is ignored for RLS. */
CLE_API cle_status cle_trial_run(const cle_instance* inst, cle_algo algo,
                                 uint32_t rate_numerator, uint64_t seed,
                                 uint64_t max_iters, const uint8_t* start,
                                 cle_trial_result* out);

/* Uniform random bit string of length n (each bit 1 with probability 1/2). */
CLE_API cle_status cle_uniform_start(size_t n, uint64_t seed, uint8_t* bits);

/* Samples uniform random strings from the seed's stream until one is
 * feasible (and non-optimal when require_nonoptimal != 0). */
CLE_API cle_status cle_random_feasible_state(const cle_instance* inst,
                                             uint64_t seed,
                                             int require_nonoptimal,
                                             uint8_t* bits);

/* ---- potential -------------------------------------------------------- */

CLE_API cle_status cle_profile_build(const cle_instance* inst,
                                     cle_variant variant, cle_profile** out);
CLE_API void cle_profile_free(cle_profile* profile);

CLE_API cle_status cle_profile_g(const cle_profile* profile, size_t pos,
                                 double* out);
CLE_API cle_status cle_profile_gamma(const cle_profile* profile, size_t pos,
                                     double* out);
CLE_API double cle_profile_g_max(const cle_profile* profile);
CLE_API double cle_profile_s_min_pos(const cle_profile* profile);
CLE_API size_t cle_profile_block_count(const cle_profile* profile);
/* begin/end: 0-based half-open position range; capped: g == gamma at the
 * block; kappa: index of the nearest capped block at or below. */
CLE_API cle_status cle_profile_block(const cle_profile* profile, size_t index,
                                     size_t* begin, size_t* end, int* capped,
                                     size_t* kappa);

CLE_API cle_status cle_potential_value(const cle_profile* profile,
                                       const uint8_t* bits, double* out);
CLE_API cle_status cle_drift_lower_bound(const cle_profile* profile,
                                         double potential, double* out);
CLE_API cle_status cle_exact_rls_drift(const cle_profile* profile,
                                       const uint8_t* bits, double* out);
CLE_API cle_status cle_estimate_ea_drift(const cle_profile* profile,
                                         const uint8_t* bits,
                                         uint32_t rate_numerator,
                                         uint64_t samples, uint64_t seed,
                                         cle_drift_estimate* out);

/* ---- bounds ----------------------------------------------------------- */

CLE_API cle_status cle_feasibility_time_bound(size_t n, uint64_t b,
                                              double* out);
CLE_API cle_status cle_multiplicative_drift_expected(double delta, double x0,
                                                     double s_min, double* out);
CLE_API cle_status cle_multiplicative_drift_tail(double delta, double x0,
                                                 double s_min, double r,
                                                 double* time,
                                                 double* probability);
CLE_API cle_status cle_ea_runtime_bound(const cle_profile* profile,
                                        double* out);

/* ---- oracle ----------------------------------------------------------- */

/* Exact expected optimisation time via the absorbing-chain linear system.
 * Size caps: n <= 14 for RLS, n <= 10 for the EA. */
CLE_API cle_status cle_oracle_expected_time(const cle_instance* inst,
                                            cle_algo algo,
                                            uint32_t rate_numerator,
                                            cle_oracle_report* out);
CLE_API cle_status cle_oracle_state_time(const cle_instance* inst,
                                         cle_algo algo,
                                         uint32_t rate_numerator,
                                         const uint8_t* bits, double* out);

/* ---- harness ---------------------------------------------------------- */

/* Runs a sweep described by a JSON config (see README for the schema),
 * writing <out_prefix>.raw.csv and <out_prefix>.summary.csv when a prefix
 * is configured. result_json reports cells, trials and the censored flag. */
CLE_API cle_status cle_sweep_run(const char* config_json, char** result_json);

/* Exponent and r^2 of the least-squares fit of ln(mean) on ln(n). */
CLE_API cle_status cle_fit_scaling(const double* n_values, const double* means,
                                   size_t count, double* exponent,
                                   double* r_squared);

/* Randomized self-check of the library invariants; CLE_OK when everything
 * holds, CLE_ERROR_CHECK_FAILED (with a JSON report) otherwise. */
CLE_API cle_status cle_check_run(uint64_t seed, uint32_t instances,
                                 uint32_t max_n, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CLE_H */
