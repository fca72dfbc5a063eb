/* C interface to fringelab. All calls return an fl_status; on failure
 * fl_last_error() holds a message for the calling thread. Complex arrays are
 * interleaved (re, im) and row-major. */
#ifndef FRINGELAB_H
#define FRINGELAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(FRINGELAB_BUILDING_LIBRARY)
#define FL_API __attribute__((visibility("default")))
#else
#define FL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fl_status {
  FL_OK = 0,
  FL_INVALID_DIMENSION = 1,
  FL_INVALID_PARAMETER = 2,
  FL_NOT_HERMITIAN = 3,
  FL_NOT_POSITIVE = 4,
  FL_NOT_NORMALIZED = 5,
  FL_NON_FINITE = 6,
  FL_OPTIMIZER_STALLED = 7,
  FL_INCONSISTENT_OBSERVABLES = 8,
  FL_FEASIBILITY_VIOLATION = 9,
  FL_NO_CONSISTENT_STATE = 10,
  FL_INVALID_PLAN = 11,
  FL_NULL_ARGUMENT = 12,
  FL_INTERNAL = 13
} fl_status;

FL_API const char* fl_status_name(fl_status status);
FL_API const char* fl_last_error(void);
FL_API const char* fl_version(void);

/* ---- states ---------------------------------------------------------- */

typedef struct fl_state fl_state;

/* dim is 2 or 4; entries holds 2*dim*dim doubles. */
FL_API fl_status fl_state_from_matrix(size_t dim, const double* entries, fl_state** out);
/* p |psi><psi| + (1 - p) I/4 with psi given as 8 doubles. */
FL_API fl_status fl_state_werner(double p, const double* psi, fl_state** out);
/* Werner state with psi = sqrt(alpha2)|01> + sqrt(1 - alpha2)|10>. */
FL_API fl_status fl_state_werner_aligned(double p, double alpha2, fl_state** out);
FL_API fl_status fl_state_gisin(double a, double x, fl_state** out);
FL_API fl_status fl_state_random_pure(uint64_t seed, fl_state** out);
FL_API void fl_state_free(fl_state* state);

FL_API size_t fl_state_dim(const fl_state* state);
/* Writes 2*dim*dim doubles. */
FL_API fl_status fl_state_matrix(const fl_state* state, double* entries);
/* keep = 0 keeps the first qubit, 1 the second. */
FL_API fl_status fl_state_partial_trace(const fl_state* state, int keep, fl_state** out);

FL_API fl_status fl_purity(const fl_state* state, double* out);
FL_API fl_status fl_concurrence(const fl_state* state, double* out);
/* Closed-form single-arm visibility of a one-qubit state. */
FL_API fl_status fl_visibility(const fl_state* rho1, double* out);

/* ---- interferometer -------------------------------------------------- */

/* basis: 2x2 unitary whose columns are the primed kets (8 doubles). An
 * all-zero basis stands for the computational basis. */
typedef struct fl_settings {
  double mu;
  double phi_a;
  double phi_b;
  double basis[8];
} fl_settings;

typedef struct fl_probabilities {
  double u1, l1, u2, l2;
  double u1u2, u1l2, l1u2, l1l2;
} fl_probabilities;

FL_API fl_status fl_detection_probabilities(const fl_state* state, const fl_settings* first,
                                            const fl_settings* second, fl_probabilities* out);

typedef struct fl_optimizer {
  int grid_points_per_angle;
  int refine_iterations;
  double tolerance;
} fl_optimizer;

FL_API fl_optimizer fl_optimizer_default(void);

FL_API fl_status fl_visibility_numeric(const fl_state* rho1, const fl_optimizer* cfg, double* out);
/* basis_a / basis_b may be NULL for the computational basis. argmax
 * pointers may be NULL. */
FL_API fl_status fl_p12_numeric(const fl_state* state, const double* basis_a, const double* basis_b,
                                const fl_optimizer* cfg, double* p12, fl_settings* argmax_first,
                                fl_settings* argmax_second);

/* ---- estimation ------------------------------------------------------ */

typedef struct fl_report {
  double v1;
  double p12;
  double estimated_p;
  double estimated_c;
  double signed_c;
  double feasibility;
  double oracle_c;
  int has_oracle;
} fl_report;

/* Werner-class inversion of (V1, P12). */
FL_API fl_status fl_estimate_concurrence(double v1, double p12, fl_report* out);

typedef enum fl_family {
  FL_FAMILY_WERNER = 0,
  FL_FAMILY_GISIN = 1,
  FL_FAMILY_PURE = 2,
  FL_FAMILY_RANDOM = 3
} fl_family;

typedef struct fl_estimate_config {
  fl_family family;
  double p;
  double alpha2;
  double a;
  double x;
  int has_shots; /* 0: exact probabilities */
  int64_t shots;
  uint64_t seed; /* shot sampling; also the pure-part draw for FL_FAMILY_RANDOM */
  int numeric;   /* exact mode: optimizers instead of closed forms */
  fl_optimizer optimizer;
  double background;
} fl_estimate_config;

FL_API fl_estimate_config fl_estimate_config_default(void);

typedef struct fl_estimate_result {
  double param1;
  double param2;
  fl_report report;
  /* shot mode */
  int sampled;
  double v1_std_error;
  double p12_std_error;
  double c_std_error;
  double feasibility_rate;
  double clamp_rate;
  int64_t shots_per_setting;
  int64_t settings;
  /* two-parameter inversion */
  int inverted;
  int ambiguous;
  int64_t solutions;
  double inv_param1;
  double inv_param2;
  double inv_residual;
} fl_estimate_result;

FL_API fl_status fl_estimate(const fl_estimate_config* cfg, fl_estimate_result* out);

typedef enum fl_two_parameter_family { FL_INVERT_WERNER = 0, FL_INVERT_GISIN = 1 } fl_two_parameter_family;

typedef struct fl_inversion {
  double param1;
  double param2;
  double residual;
  double concurrence;
  int ambiguous;
  int64_t solutions;
} fl_inversion;

FL_API fl_status fl_invert(double v1, double p12, fl_two_parameter_family family, const fl_optimizer* cfg,
                           fl_inversion* out);

/* settings holds 2*n entries (first, second per setting); counts receives
 * 4*n values ordered U1U2, U1L2, L1U2, L1L2. */
FL_API fl_status fl_sample_counts(const fl_state* state, const fl_settings* settings, size_t n, int64_t shots,
                                  uint64_t seed, double background, int64_t* counts);

/* ---- verification ---------------------------------------------------- */

typedef struct fl_verify_result fl_verify_result;

typedef struct fl_suite_entry {
  const char* name; /* owned by the result */
  int passed;
  double worst_residual;
  double threshold;
  int cases;
} fl_suite_entry;

/* suite may be NULL for all suites. flip (8 doubles) may be NULL for
 * sigma_y; anything else is a fault-injection hook for tests. */
FL_API fl_status fl_verify_run(const char* suite, const double* flip, fl_verify_result** out);
FL_API size_t fl_verify_count(const fl_verify_result* result);
FL_API fl_status fl_verify_entry(const fl_verify_result* result, size_t index, fl_suite_entry* out);
FL_API int fl_verify_all_passed(const fl_verify_result* result);
FL_API void fl_verify_free(fl_verify_result* result);

#ifdef __cplusplus
}
#endif

#endif /* FRINGELAB_H */
