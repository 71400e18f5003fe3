/*
 * C interface to the quantum Bertrand duopoly library.
 *
 * All functions return a qb_status. On failure the message for the calling
 * thread is available from qb_last_error() until the next failing call on
 * that thread. Handles are opaque, owned by the caller, and released with the
 * matching *_destroy function (NULL is accepted). Strings returned by
 * accessor functions live as long as the handle they came from.
 *
 * Prices are passed as (p1, p2) for firms A and B. Angles are radians.
 */
#ifndef QBERTRAND_H
#define QBERTRAND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef QBERTRAND_BUILDING
#    define QB_API __declspec(dllexport)
#  else
#    define QB_API __declspec(dllimport)
#  endif
#else
#  define QB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qb_status {
  QB_OK = 0,
  QB_ERR_INVALID_ARGUMENT = 1,
  QB_ERR_DOMAIN = 2,
  QB_ERR_DEGENERATE = 3,
  QB_ERR_COMPLEX_CANDIDATES = 4,
  QB_ERR_NON_CONVERGENCE = 5,
  QB_ERR_SINGULAR = 6,
  QB_ERR_EVALUATION = 7,
  QB_ERR_IO = 8,
  QB_ERR_INTERNAL = 99
} qb_status;

typedef struct qb_model qb_model;
typedef struct qb_candidates qb_candidates;
typedef struct qb_sweep qb_sweep;
typedef struct qb_verify_report qb_verify_report;

QB_API const char* qb_last_error(void);
QB_API const char* qb_status_string(qb_status status);

/* ---- model: market parameters plus entanglement angle ---- */

/* Requires 0 < b < 1, 0 <= c < a, gamma in [0, pi]. */
QB_API qb_status qb_model_create(double a, double c, double b, double gamma, qb_model** out);
/* gamma = pi/4 with exact trigonometric values. */
QB_API qb_status qb_model_create_max_entangled(double a, double c, double b, qb_model** out);
QB_API void qb_model_destroy(qb_model* model);
QB_API qb_status qb_model_get(const qb_model* model, double* a, double* c, double* b, double* gamma);

/* ---- payoffs and state ---- */

QB_API qb_status qb_classical_profit(const qb_model* model, double p1, double p2, double* uA, double* uB);
/* Closed-form quantum payoffs. */
QB_API qb_status qb_quantum_payoff(const qb_model* model, double p1, double p2, double* uA, double* uB);
/* Payoffs through the explicitly evolved density matrix. */
QB_API qb_status qb_quantum_payoff_via_state(const qb_model* model, double p1, double p2, double* uA, double* uB);

typedef struct qb_density_elements {
  double rho11, rho14, rho22, rho23, rho33, rho44;
  double normalizer; /* (1 + p1)(1 + p2) */
} qb_density_elements;

QB_API qb_status qb_density_elements_closed(const qb_model* model, double p1, double p2, qb_density_elements* out);
/* Row-major 4x4 final state in the basis |00>, |01>, |10>, |11>. Prices >= 0. */
QB_API qb_status qb_evolved_state(const qb_model* model, double p1, double p2, double out[16]);

/* ---- best responses ---- */

typedef struct qb_reaction {
  double price;         /* unconstrained critical point */
  double clamped_price; /* max(price, 0) */
  double second_derivative;
  int concavity_ok;
  int boundary; /* numerical search only */
} qb_reaction;

/* Analytic best response of either firm to the opponent's price. */
QB_API qb_status qb_reaction_analytic(const qb_model* model, double opponent_price, qb_reaction* out);
/* Grid plus golden-section argmax over [0, search_max]; search_max <= 0 selects 10 (a + c). */
QB_API qb_status qb_reaction_numerical(const qb_model* model, double opponent_price, double search_max,
                                       qb_reaction* out);

/* ---- equilibria ---- */

typedef struct qb_candidate {
  char label[16]; /* classical, q1..q4, numerical */
  double p1, p2;
  double uA, uB;
  double foc_residual;
  double curvature_A, curvature_B;
  double spectral_radius;
  int concave_A, concave_B;
  int physical;
  int boundary_dominant;
  int stable;
  int nash;
} qb_candidate;

/* Classical row when gamma = 0, q1..q4 at maximal entanglement, numerical
 * roots otherwise. */
QB_API qb_status qb_equilibrium_report(const qb_model* model, qb_candidates** out);
QB_API size_t qb_candidates_count(const qb_candidates* list);
QB_API qb_status qb_candidates_get(const qb_candidates* list, size_t index, qb_candidate* out);
QB_API void qb_candidates_destroy(qb_candidates* list);

/* ---- figure sweeps ---- */

typedef struct qb_sweep_spec {
  double b_min, b_max;
  int steps;
  double a, c;
  double gamma;
  int max_entangled; /* nonzero: ignore gamma and use pi/4 exactly */
  int figure;        /* 1 or 2 */
  int threads;
} qb_sweep_spec;

/* Defaults: b in [0.01, 0.99], 99 steps, a = 3.5, c = 0.1, maximal entanglement, figure 1, 1 thread. */
QB_API void qb_sweep_spec_default(qb_sweep_spec* spec);
QB_API qb_status qb_sweep_run(const qb_sweep_spec* spec, qb_sweep** out);
QB_API size_t qb_sweep_rows(const qb_sweep* sweep);
QB_API size_t qb_sweep_columns(const qb_sweep* sweep);
QB_API const char* qb_sweep_header(const qb_sweep* sweep, size_t column);
QB_API double qb_sweep_value(const qb_sweep* sweep, size_t row, size_t column);
QB_API const char* qb_sweep_csv(const qb_sweep* sweep);
QB_API qb_status qb_sweep_write_csv(const qb_sweep* sweep, const char* path);
QB_API void qb_sweep_destroy(qb_sweep* sweep);

/* ---- verification ---- */

/* has_tolerance != 0 replaces every suite tolerance with `tolerance`. */
QB_API qb_status qb_verify_run(int has_tolerance, double tolerance, uint64_t seed, qb_verify_report** out);
QB_API uint64_t qb_verify_default_seed(void);
QB_API int qb_verify_passed(const qb_verify_report* report);
QB_API const char* qb_verify_text(const qb_verify_report* report);
QB_API size_t qb_verify_suite_count(const qb_verify_report* report);
QB_API qb_status qb_verify_suite(const qb_verify_report* report, size_t index, const char** name, int* checked,
                                 int* failed, double* tolerance);
QB_API void qb_verify_destroy(qb_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif /* QBERTRAND_H */
