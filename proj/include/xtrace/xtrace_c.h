/*
 * C interface to the trace/diagonal estimation library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return XT_OK on success; on failure they return a status code
 * and leave a human-readable message retrievable with xt_last_error()
 * (thread-local).  Matrices cross the boundary as dense column-major
 * double buffers.
 *
 * Operator handles may be shared across threads for concurrent estimator
 * runs; the matvec counters are atomic.
 */
#ifndef XTRACE_C_H
#define XTRACE_C_H

#include <stdint.h>

#if defined(_WIN32)
#define XT_API __declspec(dllexport)
#else
#define XT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xt_status {
  XT_OK = 0,
  XT_ERR_INVALID_ARGUMENT = 1, /* contract violation */
  XT_ERR_DEGENERATE = 2,       /* numerically degenerate input */
  XT_ERR_IO = 3,               /* file open/parse failure */
  XT_ERR_INTERNAL = 4
} xt_status;

typedef struct xt_operator xt_operator;

/* Message for the most recent failure on this thread. */
XT_API const char* xt_last_error(void);
XT_API const char* xt_version(void);

/* ------------------------------------------------------------ operators */

/* Dense square matrix (column-major n x n).  Symmetry is detected. */
XT_API xt_status xt_operator_create_dense(const double* a, int64_t n, int psd,
                                          xt_operator** out);
XT_API xt_status xt_operator_create_diagonal(const double* d, int64_t n,
                                             xt_operator** out);
/* Synthetic psd instance: Haar eigenbasis with the named eigenvalue
 * profile ("flat" | "poly" | "exp" | "step"). */
XT_API xt_status xt_operator_create_synthetic(const char* spectrum, int64_t n,
                                              uint64_t seed,
                                              xt_operator** out);
/* Transverse-field Ising Hamiltonian on `sites` spins (matrix-free). */
XT_API xt_status xt_operator_create_tfim(int32_t sites, double field,
                                         xt_operator** out);
/* exp(-beta (H + b I)) for the TFIM Hamiltonian, b = (1+h) n; when
 * weight_by_energy is nonzero the operator is (H + b I) exp(-beta (H+bI)).
 * Built by dense eigendecomposition, sites <= 12. */
XT_API xt_status xt_operator_create_tfim_boltzmann(int32_t sites, double field,
                                                   double beta,
                                                   int weight_by_energy,
                                                   xt_operator** out);
/* f(M) of a MatrixMarket adjacency matrix; function is "exp" (subgraph
 * centrality) or "cube_half" (triangle counts, M^3 / 2). */
XT_API xt_status xt_operator_create_adjacency_function(const char* mtx_path,
                                                       const char* function,
                                                       xt_operator** out);

/* Matrix-free operator over caller-supplied apply callbacks operating on
 * column-major n x k blocks.  apply_adjoint may be NULL for symmetric
 * operators. */
typedef void (*xt_apply_fn)(void* ctx, const double* x, double* y, int64_t n,
                            int64_t k);
XT_API xt_status xt_operator_create_callback(int64_t dim, int symmetric,
                                             int psd, xt_apply_fn apply,
                                             xt_apply_fn apply_adjoint,
                                             void* ctx, xt_operator** out);

XT_API void xt_operator_destroy(xt_operator* op);
XT_API int64_t xt_operator_dim(const xt_operator* op);
XT_API int xt_operator_is_symmetric(const xt_operator* op);
XT_API int xt_operator_is_psd(const xt_operator* op);

/* y = A x for a column-major n x k block (y = A^T x for the adjoint). */
XT_API xt_status xt_operator_apply(const xt_operator* op, const double* x,
                                   int64_t k, double* y);
XT_API xt_status xt_operator_apply_adjoint(const xt_operator* op,
                                           const double* x, int64_t k,
                                           double* y);

XT_API int64_t xt_operator_matvec_count(const xt_operator* op);
XT_API int64_t xt_operator_adjoint_matvec_count(const xt_operator* op);
XT_API void xt_operator_reset_counters(const xt_operator* op);

/* Ground truth for testing and benchmark error measurement.  Requires a
 * cached value or a dimension small enough to densify. */
XT_API xt_status xt_exact_trace(const xt_operator* op, double* out);
XT_API xt_status xt_exact_diag(const xt_operator* op, double* out /* n */);

/* ------------------------------------------------------------ utilities */

/* Eigenvalues of the named synthetic profile (length n, descending). */
XT_API xt_status xt_spectrum_eigenvalues(const char* spectrum, int64_t n,
                                         double* out);
/* Eigenvalues of the TFIM Hamiltonian (length 2^sites, ascending),
 * computed by dense diagonalization; sites <= 12. */
XT_API xt_status xt_tfim_eigenvalues(int32_t sites, double field, double* out);
XT_API double xt_tfim_psd_shift(int32_t sites, double field);

/* Largest budget <= m admissible for the estimator (0 when none is). */
XT_API int64_t xt_admissible_budget(const char* estimator, int64_t m);
/* Derives independent substream seeds for parallel trials. */
XT_API uint64_t xt_split_seed(uint64_t seed, uint64_t index);

/* ------------------------------------------------------------ estimates */

typedef struct xt_trace_result {
  double estimate;
  double err_est; /* NaN when the estimator defines no error estimate */
  int64_t matvecs;
  int64_t adjoint_matvecs;
  int64_t per_sample_len;
} xt_trace_result;

/* estimator: "hutch" | "lra" | "hutchpp" | "nystrompp" | "xtrace" |
 *            "xnystrace";  distribution: "signs" | "gaussian" | "sphere".
 * per_sample may be NULL; otherwise it needs capacity m. */
XT_API xt_status xt_trace_estimate(const xt_operator* op,
                                   const char* estimator, int64_t m,
                                   const char* distribution, int normalize,
                                   uint64_t seed, xt_trace_result* result,
                                   double* per_sample);

/* estimator: "bks" | "xdiag" (xdiag ignores the distribution and uses sign
 * vectors).  diag_out needs capacity n. */
XT_API xt_status xt_diag_estimate(const xt_operator* op, const char* estimator,
                                  int64_t m, const char* distribution,
                                  uint64_t seed, double* diag_out,
                                  xt_trace_result* result);

/* Doubling strategy: budgets m0, 2 m0, ... until err_est <= rel_tol *
 * |estimate| or the cap is passed.  estimator: "xtrace" | "xnystrace".
 * Reaching the cap is reported through *converged = 0, not an error. */
XT_API xt_status xt_trace_adaptive(const xt_operator* op,
                                   const char* estimator,
                                   const char* distribution, int normalize,
                                   uint64_t seed, int64_t initial_budget,
                                   double rel_tol, int64_t budget_cap,
                                   xt_trace_result* result, int* converged,
                                   int64_t* rounds);

/* A priori RMSE bound minimized over the approximation rank, for
 * estimator in {"hutchpp", "xtrace", "xnystrace"} with standard normal
 * test vectors; sv is the exact singular value vector, descending. */
XT_API xt_status xt_variance_bound(const char* estimator, const double* sv,
                                   int64_t n, int64_t m, double* bound,
                                   int64_t* r_opt);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* XTRACE_C_H */
