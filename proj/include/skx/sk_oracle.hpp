#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace skx {

/// One disorder realization: the symmetric Gaussian couplings g_{ij},
/// i < j, of an N-site system, in row-major upper-triangle order.
struct DisorderSample {
  int n_sites = 0;
  std::vector<double> couplings;
  std::uint64_t seed = 0;

  double coupling(int i, int j) const;  // i != j, 0-based
};

// Deterministic portable sampling: couplings for (seed, stream) come from a
// splitmix64 stream hashed from both values, turned Gaussian by Box-Muller.
// Identical (seed, stream, n_sites) give identical samples on any platform.
DisorderSample draw_disorder(int n_sites, std::uint64_t seed, std::uint64_t stream);

/// Exact Gibbs data of one disorder sample at inverse-temperature-like beta
/// and interpolation parameter t in [0,1]. t scales the coupling of the
/// last site (the cavity spin) by sqrt(t); t=1 is the full system, t=0
/// decouples the cavity spin.
struct GibbsState {
  int n_sites = 0;
  double beta = 0, t = 1;
  std::vector<double> pair_correlations;  // n*n row-major, diagonal = 1
  double log_partition = 0;

  double corr(int i, int j) const { return pair_correlations[i * n_sites + j]; }
};

// Sums over all 2^N configurations with log-sum-exp stabilization.
// Throws resource_error when n_sites exceeds the cap.
GibbsState gibbs_exact(const DisorderSample& sample, double beta, double t, int cap = 20);

struct EstimateWithError {
  double value = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

// Disorder Monte Carlo of nu(R_{1,2}^2) with the per-sample Gibbs average
// computed exactly: <R^2> = N^-2 sum_{ij} <s_i s_j>^2. Deterministic for a
// fixed seed and independent of the worker count.
EstimateWithError nu_r2_mc(int n_sites, double beta, std::uint64_t samples, std::uint64_t seed,
                           int workers = 1);

// Same at t = 0 for the cavity-restricted overlap:
// nu_0((R^-)^2) = E[ N^-2 sum_{i,j <= N-1} <s_i s_j>_0^2 ].
EstimateWithError nu0_r_minus_sq_mc(int n_sites, double beta, std::uint64_t samples,
                                    std::uint64_t seed, int workers = 1);

/// Monomial observable on replicated configurations: a product of
/// cavity-spin factors eps_a = s_N^a and overlap factors R_{a,b} (full) or
/// R^-_{a,b} (sites 1..N-1, still divided by N).
struct Observable {
  std::vector<int> eps;  // replica indices, multiset (1-based)
  struct OverlapFactor {
    int a = 0, b = 0;
    bool minus = true;
  };
  std::vector<OverlapFactor> overlaps;

  int replica_count() const;
  Observable times_eps_pair_overlap(int a, int b) const;  // f * eps_a eps_b R^-_{a,b}
};

// nu_t(f) by tensor-product Gauss-Hermite quadrature over all couplings of
// the exact configuration sum. Requires n_sites <= 4 and nodes <= 40.
double nu_t_quadrature(const Observable& f, int n_sites, double beta, double t, int nodes);

// d/dt nu_t(f): Richardson-extrapolated centered difference, one-sided at
// the t = 0 boundary.
double nu_t_derivative_fd(const Observable& f, int n_sites, double beta, double t, int nodes,
                          double h = 1e-4);

// The cavity first-derivative identity evaluated by the same quadrature:
// beta^2 [ sum_{a<b<=n} nu_t(f e_a e_b R^-_ab) - n sum_{a<=n} nu_t(f e_a e_{n+1} R^-_{a,n+1})
//          + n(n+1)/2 nu_t(f e_{n+1} e_{n+2} R^-_{n+1,n+2}) ].
double nu_t_derivative_formula(const Observable& f, int n_sites, double beta, double t, int nodes);

// Both sides of the derivative identity for f = e_1 e_2 R^-_{1,2}.
std::pair<double, double> derivative_check(int n_sites, double beta, double t, int nodes);

// Max |nu_0(f)| over a canned family of odd cavity monomials times
// overlap products; should vanish to quadrature accuracy.
double parity_vanishing_max_abs(int n_sites, double beta, int nodes);

namespace detail {
// Exposed for tests: correlations from explicitly provided energies, and
// the raw Gaussian stream.
GibbsState gibbs_from_energies(const std::vector<double>& energies, int n_sites, double beta,
                               double t);
double gaussian_from_stream(std::uint64_t seed, std::uint64_t stream, int index);
std::vector<double> gauss_hermite_nodes(int n);    // physicists' nodes
std::vector<double> gauss_hermite_weights(int n);  // matching weights
}  // namespace detail

}  // namespace skx
