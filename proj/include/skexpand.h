/* skexpand — exact 1/N expansion of the SK overlap second moment.
 *
 * C interface of libskexpand. The engine computes the coefficients c_j of
 *
 *     nu(R_{1,2}^2) = 1/N + sum_{j=1..k0} c_j(beta)/N^j + O(N^{-k0-1/2}),
 *
 * valid for 0 <= beta < 1, as exact rational functions of x = beta^2, and
 * ships the numerical oracles used to cross-check them (exact Gibbs
 * enumeration under disorder Monte Carlo, tensor Gauss-Hermite quadrature).
 *
 * All functions return SKX_OK or an error code; skx_last_error() carries a
 * human-readable detail for the calling thread. Strings returned through
 * char** are heap-allocated and must be released with skx_string_free().
 */
#ifndef SKEXPAND_H
#define SKEXPAND_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t skx_status;

enum {
  SKX_OK = 0,
  SKX_ERR_INVALID = 1,   /* precondition violated / malformed input */
  SKX_ERR_BUDGET = 2,    /* work budget exhausted */
  SKX_ERR_POLE = 3,      /* evaluation at beta = 1 pole */
  SKX_ERR_RESOURCE = 4,  /* size cap exceeded (enumeration, quadrature) */
  SKX_ERR_INTERNAL = 5
};

enum {
  SKX_FORMAT_PLAIN = 0, /* "n0/d0 n1/d1 ... / m0/e0 ..." coefficient lists */
  SKX_FORMAT_LATEX = 1, /* \frac{...}{...} in powers of beta^2 */
  SKX_FORMAT_PRETTY = 2 /* human-readable polynomial quotient */
};

enum {
  SKX_FAULT_NONE = 0,
  SKX_FAULT_RHO_SIGN = 1 /* selftest negative control */
};

const char* skx_version(void);
const char* skx_status_name(skx_status status);
/* Detail message of the last failing call on this thread. */
const char* skx_last_error(void);
void skx_string_free(char* s);

/* ---- expansion ------------------------------------------------------- */

typedef struct skx_expansion skx_expansion;

/* Compute c_1..c_order; budget caps the number of index sequences visited
 * (0 means the default of 2e8). */
skx_status skx_expansion_compute(int32_t order, uint64_t budget, skx_expansion** out);
void skx_expansion_free(skx_expansion* e);

int32_t skx_expansion_order(const skx_expansion* e);

/* Serialize c_j (1-based) in one of the SKX_FORMAT_* renderings. */
skx_status skx_expansion_coefficient(const skx_expansion* e, int32_t j, int32_t format,
                                     char** out);

/* 1/N + sum c_j(beta^2)/N^j, exact rationals until the final conversion. */
skx_status skx_expansion_evaluate(const skx_expansion* e, double beta, int32_t n_sites,
                                  double* out);

typedef struct {
  uint64_t sequences_enumerated;
  uint64_t parity_survivors;
  uint64_t lambda_entries;
  uint64_t budget_used;
  double wall_seconds;
  /* 1 when every denominator is a pure power of (1 - beta^2), else 0. */
  int32_t pole_structure_ok;
} skx_expansion_stats;

skx_status skx_expansion_get_stats(const skx_expansion* e, skx_expansion_stats* out);

/* ---- numerical oracles ------------------------------------------------ */

typedef struct {
  double value;
  double std_error;
  uint64_t samples;
} skx_estimate;

/* Disorder Monte Carlo of nu(R_{1,2}^2); exact Gibbs average per sample.
 * Deterministic for fixed seed, independent of workers. N <= 20. */
skx_status skx_mc_overlap_second_moment(int32_t n_sites, double beta, uint64_t samples,
                                        uint64_t seed, int32_t workers, skx_estimate* out);

/* Same at t = 0 for the cavity-restricted overlap nu_0((R^-_{1,2})^2). */
skx_status skx_mc_cavity_second_moment(int32_t n_sites, double beta, uint64_t samples,
                                       uint64_t seed, int32_t workers, skx_estimate* out);

/* Both sides of the cavity first-derivative identity for f = e1 e2 R^-_{12}
 * at the given t, each evaluated by Gauss-Hermite quadrature (N <= 4). */
skx_status skx_quad_derivative_check(int32_t n_sites, double beta, double t, int32_t nodes,
                                     double* lhs, double* rhs);

/* Max |nu_0(f)| over a family of odd cavity monomials times overlaps. */
skx_status skx_quad_parity_max_abs(int32_t n_sites, double beta, int32_t nodes, double* out);

/* ---- selftest ---------------------------------------------------------- */

/* Fast invariant suite. *ok receives 1/0; report (optional) receives the
 * per-check lines. fault injects SKX_FAULT_* for negative-control runs. */
skx_status skx_selftest(uint64_t budget, int32_t fault, int32_t* ok, char** report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SKEXPAND_H */
