/* tailx: transformed-linear algebra and tail dependence decompositions for
 * multivariate heavy-tailed data.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed through these functions; every fallible call returns a
 * tailx_status and reports results through out-parameters. On failure the
 * thread-local message from tailx_last_error() describes the problem.
 * Matrices cross the boundary in row-major order.
 */
#ifndef TAILX_H
#define TAILX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TAILX_API __declspec(dllexport)
#else
#define TAILX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tailx_status {
  TAILX_OK = 0,
  TAILX_ERR_INVALID = 1,  /* bad argument or malformed input */
  TAILX_ERR_DOMAIN = 2,   /* value outside the mathematical domain */
  TAILX_ERR_INDEX = 3,    /* index out of range */
  TAILX_ERR_IO = 4,       /* file read/write/parse failure */
  TAILX_ERR_NOCONV = 5,   /* iterative method did not converge */
  TAILX_ERR_NOMEM = 6,
  TAILX_ERR_INTERNAL = 7
} tailx_status;

typedef struct tailx_dataset tailx_dataset;     /* named n x p table */
typedef struct tailx_coef tailx_coef;           /* p x q coefficient matrix */
typedef struct tailx_angular tailx_angular;     /* discrete angular measure */
typedef struct tailx_tpdm tailx_tpdm;           /* dependence matrix */
typedef struct tailx_eigen tailx_eigen;         /* eigendecomposition */
typedef struct tailx_cpfact tailx_cpfact;       /* nonnegative factorization */
typedef struct tailx_marginals tailx_marginals; /* fitted marginal models */

TAILX_API const char* tailx_version(void);
TAILX_API const char* tailx_last_error(void);
TAILX_API const char* tailx_status_name(tailx_status status);

/* ---- scalar transform and transformed-linear operations ---- */

TAILX_API tailx_status tailx_softplus(double y, double* x);
TAILX_API tailx_status tailx_softplus_inv(double x, double* y);
TAILX_API tailx_status tailx_vec_softplus(const double* y, size_t n, double* x);
TAILX_API tailx_status tailx_vec_softplus_inv(const double* x, size_t n,
                                              double* y);
/* componentwise t(t^{-1}(x1) + t^{-1}(x2)) */
TAILX_API tailx_status tailx_vec_add(const double* x1, const double* x2,
                                     size_t n, double* out);
/* componentwise t(a t^{-1}(x)) */
TAILX_API tailx_status tailx_vec_scale(double a, const double* x, size_t n,
                                       double* out);
/* t(A t^{-1}(x)), A row-major p x q, x length q, out length p */
TAILX_API tailx_status tailx_mat_apply(const double* a, size_t p, size_t q,
                                       const double* x, double* out);
TAILX_API tailx_status tailx_inner_product(const double* x1, const double* x2,
                                           size_t n, double* out);
/* <x, S o x> with S row-major symmetric p x p */
TAILX_API tailx_status tailx_quadratic_form(const double* s, size_t p,
                                            const double* x, double* out);

/* ---- datasets ---- */

TAILX_API tailx_status tailx_dataset_create(const char* const* names,
                                            const double* values_rowmajor,
                                            size_t rows, size_t cols,
                                            tailx_dataset** out);
/* policy 0: error on bad cells; 1: drop offending rows (count reported) */
TAILX_API tailx_status tailx_dataset_read_csv(const char* path, int drop_rows,
                                              tailx_dataset** out,
                                              size_t* rows_dropped);
TAILX_API tailx_status tailx_dataset_write_csv(const tailx_dataset* ds,
                                               const char* path);
TAILX_API size_t tailx_dataset_rows(const tailx_dataset* ds);
TAILX_API size_t tailx_dataset_cols(const tailx_dataset* ds);
TAILX_API tailx_status tailx_dataset_value(const tailx_dataset* ds, size_t row,
                                           size_t col, double* out);
TAILX_API const char* tailx_dataset_name(const tailx_dataset* ds, size_t col);
TAILX_API void tailx_dataset_free(tailx_dataset* ds);

/* ---- constructions and their tail quantities ---- */

TAILX_API tailx_status tailx_coef_create(const double* values_rowmajor,
                                         size_t p, size_t q, double alpha,
                                         tailx_coef** out);
TAILX_API tailx_status tailx_coef_read_csv(const char* path, double alpha,
                                           tailx_coef** out);
TAILX_API size_t tailx_coef_rows(const tailx_coef* a);
TAILX_API size_t tailx_coef_cols(const tailx_coef* a);
TAILX_API double tailx_coef_alpha(const tailx_coef* a);
TAILX_API tailx_status tailx_coef_value(const tailx_coef* a, size_t i,
                                        size_t j, double* out);
TAILX_API void tailx_coef_free(tailx_coef* a);

TAILX_API tailx_status tailx_coef_angular(const tailx_coef* a,
                                          tailx_angular** out);
TAILX_API tailx_status tailx_angular_merge(const tailx_angular* h, double tol,
                                           tailx_angular** out);
TAILX_API size_t tailx_angular_size(const tailx_angular* h);
TAILX_API size_t tailx_angular_dim(const tailx_angular* h);
TAILX_API tailx_status tailx_angular_mass(const tailx_angular* h, size_t i,
                                          double* out);
TAILX_API tailx_status tailx_angular_point(const tailx_angular* h, size_t i,
                                           size_t j, double* out);
TAILX_API double tailx_angular_total_mass(const tailx_angular* h);
TAILX_API void tailx_angular_free(tailx_angular* h);

/* limit measure of {x : x_i > u_i for all i} and of [0, u]^c */
TAILX_API tailx_status tailx_joint_exceedance(const tailx_coef* a,
                                              const double* u, size_t p,
                                              double* out);
TAILX_API tailx_status tailx_union_exceedance(const tailx_coef* a,
                                              const double* u, size_t p,
                                              double* out);

TAILX_API tailx_status tailx_simulate(const tailx_coef* a, size_t n,
                                      uint64_t seed, tailx_dataset** out);
TAILX_API tailx_status tailx_simulate_max_linear(const tailx_coef* a, size_t n,
                                                 uint64_t seed,
                                                 tailx_dataset** out);

/* ---- dependence matrix ---- */

TAILX_API tailx_status tailx_tpdm_from_coef(const tailx_coef* a,
                                            tailx_tpdm** out);
/* r0_is_quantile nonzero: r0 is a quantile level in (0,1) of the radii.
 * mass > 0 fixes the total mass; mass <= 0 selects the empirical
 * estimate r0^2 n_exc / n. Pass mass = p for unit-scale data. */
TAILX_API tailx_status tailx_estimate_tpdm(const tailx_dataset* ds,
                                           int r0_is_quantile, double r0,
                                           double mass, tailx_tpdm** out);
TAILX_API size_t tailx_tpdm_dim(const tailx_tpdm* t);
TAILX_API tailx_status tailx_tpdm_value(const tailx_tpdm* t, size_t i,
                                        size_t k, double* out);
TAILX_API double tailx_tpdm_total_mass(const tailx_tpdm* t);
TAILX_API size_t tailx_tpdm_n_exc(const tailx_tpdm* t);
/* returns 0 and leaves *out untouched when no threshold is attached */
TAILX_API int tailx_tpdm_r0(const tailx_tpdm* t, double* out);
TAILX_API const char* tailx_tpdm_name(const tailx_tpdm* t, size_t i);
TAILX_API tailx_status tailx_tpdm_save_json(const tailx_tpdm* t,
                                            const char* path);
TAILX_API tailx_status tailx_tpdm_load_json(const char* path,
                                            tailx_tpdm** out);
TAILX_API void tailx_tpdm_free(tailx_tpdm* t);

/* ---- eigendecomposition, scores, reconstruction ---- */

TAILX_API tailx_status tailx_eigen_decompose(const tailx_tpdm* t,
                                             tailx_eigen** out);
TAILX_API size_t tailx_eigen_dim(const tailx_eigen* e);
TAILX_API tailx_status tailx_eigen_lambda(const tailx_eigen* e, size_t i,
                                          double* out);
TAILX_API tailx_status tailx_eigen_vector(const tailx_eigen* e, size_t i,
                                          size_t j, double* out);
TAILX_API const char* tailx_eigen_name(const tailx_eigen* e, size_t i);
TAILX_API tailx_status tailx_eigen_save_json(const tailx_eigen* e,
                                             const char* path);
TAILX_API tailx_status tailx_eigen_load_json(const char* path,
                                             tailx_eigen** out);
TAILX_API void tailx_eigen_free(tailx_eigen* e);

/* scores v_t = U^T t^{-1}(x_t), one output row per observation */
TAILX_API tailx_status tailx_project(const tailx_dataset* ds,
                                     const tailx_eigen* e,
                                     tailx_dataset** scores);
/* partial reconstruction from the k leading basis directions */
TAILX_API tailx_status tailx_reconstruct(const tailx_dataset* scores,
                                         const tailx_eigen* e, size_t k,
                                         tailx_dataset** out);
/* the two signed halves of the score-angle cross moment for pair (i, k) */
TAILX_API tailx_status tailx_balance_diagnostic(const tailx_dataset* scores,
                                                size_t i, size_t k,
                                                double r0_quantile,
                                                double* sum_pos,
                                                double* sum_neg);

/* ---- completely positive factorization ---- */

/* q = 0 selects min(2p, cp-rank bound) */
TAILX_API tailx_status tailx_cp_factorize(const tailx_tpdm* t, size_t q,
                                          double tol, size_t max_iter,
                                          size_t restarts, uint64_t seed,
                                          tailx_cpfact** out);
TAILX_API tailx_status tailx_cp_rank_search(const tailx_tpdm* t, size_t q_min,
                                            size_t q_max, double tol,
                                            size_t max_iter, size_t restarts,
                                            uint64_t seed, tailx_cpfact** out);
TAILX_API size_t tailx_cpfact_rows(const tailx_cpfact* f);
TAILX_API size_t tailx_cpfact_cols(const tailx_cpfact* f);
TAILX_API tailx_status tailx_cpfact_value(const tailx_cpfact* f, size_t i,
                                          size_t j, double* out);
TAILX_API double tailx_cpfact_residual(const tailx_cpfact* f);
TAILX_API int tailx_cpfact_converged(const tailx_cpfact* f);
TAILX_API size_t tailx_cpfact_restarts(const tailx_cpfact* f);
TAILX_API size_t tailx_cpfact_iterations(const tailx_cpfact* f);
/* converged factor as alpha = 2 coefficient matrix (zero columns dropped) */
TAILX_API tailx_status tailx_cpfact_to_coef(const tailx_cpfact* f,
                                            tailx_coef** out);
TAILX_API tailx_status tailx_cpfact_save_json(const tailx_cpfact* f,
                                              const char* path);
TAILX_API tailx_status tailx_cpfact_load_json(const char* path,
                                              tailx_cpfact** out);
TAILX_API void tailx_cpfact_free(tailx_cpfact* f);

/* ---- marginal preprocessing ---- */

/* alpha_hat = [k^{-1} sum log(x_(n-j+1)/x_(n-k))]^{-1}, k >= 10 */
TAILX_API tailx_status tailx_hill(const double* x, size_t n, size_t k,
                                  double* alpha_hat);
TAILX_API tailx_status tailx_hill_quantile(const double* x, size_t n,
                                           double level, double* alpha_hat);
/* empirical Frechet transform of every column; models capture the fit */
TAILX_API tailx_status tailx_fit_frechet(const tailx_dataset* ds,
                                         tailx_marginals** models,
                                         tailx_dataset** transformed);
/* loss pipeline: negate/clamp/softplus, Hill at the quantile, rescale */
TAILX_API tailx_status tailx_fit_loss(const tailx_dataset* ds,
                                      double hill_quantile,
                                      tailx_marginals** models,
                                      tailx_dataset** transformed);
TAILX_API tailx_status tailx_marginals_apply(const tailx_marginals* models,
                                             const tailx_dataset* ds,
                                             tailx_dataset** transformed,
                                             size_t* n_clamped);
TAILX_API tailx_status tailx_marginals_save_json(const tailx_marginals* models,
                                                 const char* path);
TAILX_API tailx_status tailx_marginals_load_json(const char* path,
                                                 tailx_marginals** out);
TAILX_API void tailx_marginals_free(tailx_marginals* models);

#ifdef __cplusplus
}
#endif

#endif /* TAILX_H */
