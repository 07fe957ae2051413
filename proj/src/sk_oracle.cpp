// Numerical ground truth for the expansion: exact Gibbs sums over all
// configurations at small N, disorder expectation by Monte Carlo (large-ish
// N) or tensor Gauss-Hermite quadrature (N <= 4), and the finite-difference
// side of the cavity derivative identity.
//
// Per-sample Gibbs data is exact: energies are enumerated over all 2^N
// configurations (Gray-code walk), stabilized by subtracting the maximum,
// and all pair correlations <s_i s_j> are read off one Walsh-Hadamard
// transform of the weight vector.

#include "skx/sk_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <functional>
#include <thread>

#include "skx/errors.hpp"

namespace skx {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// splitmix64 over a state derived from (seed, stream); documented stream
// split: state0 = mix(mix(seed + GOLDEN) + stream).
struct GaussianStream {
  std::uint64_t state;
  double pending = 0;
  bool has_pending = false;

  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : state(mix64(mix64(seed + 0x9E3779B97F4A7C15ull) + stream)) {}

  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ull;
    return mix64(state);
  }

  double next_unit() {  // uniform in (0, 1]
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (has_pending) {
      has_pending = false;
      return pending;
    }
    const double r = std::sqrt(-2.0 * std::log(next_unit()));
    const double a = 2.0 * kPi * next_unit();
    pending = r * std::sin(a);
    has_pending = true;
    return r * std::cos(a);
  }
};

int upper_index(int n, int i, int j) {  // i < j
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

// In-place Walsh-Hadamard transform; v[m] becomes sum_s v0[s] (-1)^{popcount(s & m)}.
void wht(std::vector<double>& v) {
  const size_t n = v.size();
  for (size_t h = 1; h < n; h <<= 1)
    for (size_t i = 0; i < n; i += 2 * h)
      for (size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

struct GibbsScratch {
  std::vector<double> jeff;     // n*n symmetric effective couplings
  std::vector<double> buffer;   // 2^n energies, then weights, then WHT
  std::vector<int> spins;

  // Fills buffer with the transformed weights; returns log Z.
  double transform(const DisorderSample& sample, double beta, double t) {
    const int n = sample.n_sites;
    const std::size_t size = std::size_t{1} << n;
    jeff.assign(static_cast<std::size_t>(n) * n, 0.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double cavity_scale = std::sqrt(t / static_cast<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double s = (j == n - 1) ? cavity_scale : scale;
        const double v = s * sample.coupling(i, j);
        jeff[i * n + j] = v;
        jeff[j * n + i] = v;
      }

    buffer.resize(size);
    spins.assign(n, -1);
    double energy = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) energy += jeff[i * n + j];
    buffer[0] = energy;
    std::uint64_t mask = 0;
    for (std::uint64_t g = 1; g < size; ++g) {
      const int p = std::countr_zero(g);
      mask ^= std::uint64_t{1} << p;
      spins[p] = -spins[p];
      double field = 0;
      for (int j = 0; j < n; ++j) field += jeff[p * n + j] * spins[j];
      energy += 2.0 * spins[p] * field;
      buffer[mask] = energy;
    }

    const double emax = *std::max_element(buffer.begin(), buffer.end());
    for (auto& e : buffer) e = std::exp(beta * (e - emax));
    wht(buffer);
    return std::log(buffer[0]) + beta * emax;
  }

  // After transform(): sum over i < j < site_limit of <s_i s_j>^2.
  double corr_sq_sum(int n, int site_limit) const {
    const double z = buffer[0];
    double s = 0;
    for (int i = 0; i < site_limit; ++i)
      for (int j = i + 1; j < site_limit; ++j) {
        const double c = buffer[(std::size_t{1} << i) | (std::size_t{1} << j)] / z;
        s += c * c;
      }
    return s;
  }
};

double tree_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return tree_sum(v, half) + tree_sum(v + half, n - half);
}

EstimateWithError reduce_estimate(const std::vector<double>& values) {
  const std::size_t n = values.size();
  EstimateWithError est;
  est.samples = n;
  est.value = tree_sum(values.data(), n) / static_cast<double>(n);
  if (n >= 2) {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = values[i] - est.value;
      sq[i] = d * d;
    }
    const double var = tree_sum(sq.data(), n) / static_cast<double>(n - 1);
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

EstimateWithError run_disorder_mc(int n_sites, double beta, double t, int site_limit,
                                  double diagonal, std::uint64_t samples, std::uint64_t seed,
                                  int workers) {
  if (n_sites < 1 || n_sites > 20) throw resource_error("disorder MC: N out of range [1, 20]");
  if (samples < 1) throw contract_violation("disorder MC: need at least one sample");
  std::vector<double> values(samples);
  const double inv_n2 = 1.0 / (static_cast<double>(n_sites) * n_sites);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    GibbsScratch scratch;
    for (std::uint64_t s = begin; s < end; ++s) {
      DisorderSample sample = draw_disorder(n_sites, seed, s);
      scratch.transform(sample, beta, t);
      values[s] = (diagonal + 2.0 * scratch.corr_sq_sum(n_sites, site_limit)) * inv_n2;
    }
  };

  const int nw = std::max(1, workers);
  if (nw == 1 || samples < 64) {
    run_range(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (samples + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const std::uint64_t b = std::min<std::uint64_t>(w * chunk, samples);
      const std::uint64_t e = std::min<std::uint64_t>(b + chunk, samples);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return reduce_estimate(values);
}

}  // namespace

double DisorderSample::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  return couplings[upper_index(n_sites, i, j)];
}

DisorderSample draw_disorder(int n_sites, std::uint64_t seed, std::uint64_t stream) {
  DisorderSample s;
  s.n_sites = n_sites;
  s.seed = seed;
  s.couplings.resize(static_cast<std::size_t>(n_sites) * (n_sites - 1) / 2);
  GaussianStream g(seed, stream);
  for (auto& c : s.couplings) c = g.next_gaussian();
  return s;
}

GibbsState gibbs_exact(const DisorderSample& sample, double beta, double t, int cap) {
  if (sample.n_sites > cap)
    throw resource_error("gibbs_exact: N exceeds the exact-enumeration cap");
  if (sample.n_sites < 1) throw contract_violation("gibbs_exact: N must be >= 1");
  if (!(t >= 0.0)) throw contract_violation("gibbs_exact: t must be >= 0");
  GibbsScratch scratch;
  const double log_z = scratch.transform(sample, beta, t);
  const int n = sample.n_sites;
  GibbsState state;
  state.n_sites = n;
  state.beta = beta;
  state.t = t;
  state.log_partition = log_z;
  state.pair_correlations.assign(static_cast<std::size_t>(n) * n, 1.0);
  const double z = scratch.buffer[0];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double c = scratch.buffer[(std::size_t{1} << i) | (std::size_t{1} << j)] / z;
      state.pair_correlations[i * n + j] = c;
      state.pair_correlations[j * n + i] = c;
    }
  return state;
}

EstimateWithError nu_r2_mc(int n_sites, double beta, std::uint64_t samples, std::uint64_t seed,
                           int workers) {
  return run_disorder_mc(n_sites, beta, /*t=*/1.0, /*site_limit=*/n_sites,
                         /*diagonal=*/static_cast<double>(n_sites), samples, seed, workers);
}

EstimateWithError nu0_r_minus_sq_mc(int n_sites, double beta, std::uint64_t samples,
                                    std::uint64_t seed, int workers) {
  return run_disorder_mc(n_sites, beta, /*t=*/0.0, /*site_limit=*/n_sites - 1,
                         /*diagonal=*/static_cast<double>(n_sites - 1), samples, seed, workers);
}

int Observable::replica_count() const {
  int n = 0;
  for (int e : eps) n = std::max(n, e);
  for (const auto& o : overlaps) n = std::max(n, std::max(o.a, o.b));
  return n;
}

Observable Observable::times_eps_pair_overlap(int a, int b) const {
  Observable out = *this;
  out.eps.push_back(a);
  out.eps.push_back(b);
  out.overlaps.push_back({a, b, true});
  return out;
}

namespace detail {

GibbsState gibbs_from_energies(const std::vector<double>& energies, int n_sites, double beta,
                               double t) {
  if (energies.size() != (std::size_t{1} << n_sites))
    throw contract_violation("gibbs_from_energies: need one energy per configuration");
  std::vector<double> buffer = energies;
  const double emax = *std::max_element(buffer.begin(), buffer.end());
  for (auto& e : buffer) e = std::exp(beta * (e - emax));
  wht(buffer);
  GibbsState state;
  state.n_sites = n_sites;
  state.beta = beta;
  state.t = t;
  state.log_partition = std::log(buffer[0]) + beta * emax;
  state.pair_correlations.assign(static_cast<std::size_t>(n_sites) * n_sites, 1.0);
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j) {
      const double c = buffer[(std::size_t{1} << i) | (std::size_t{1} << j)] / buffer[0];
      state.pair_correlations[i * n_sites + j] = c;
      state.pair_correlations[j * n_sites + i] = c;
    }
  return state;
}

double gaussian_from_stream(std::uint64_t seed, std::uint64_t stream, int index) {
  GaussianStream g(seed, stream);
  double v = 0;
  for (int i = 0; i <= index; ++i) v = g.next_gaussian();
  return v;
}

// Physicists' Gauss-Hermite rule: integrates against exp(-x^2) exactly for
// polynomials of degree < 2n. Nodes by Newton iteration on the orthonormal
// recurrence, standard initial guesses.
static void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  double z = 0, pp = 0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * nodes[1];
    } else {
      z = 2.0 * z - nodes[i - 2];
    }
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = std::pow(kPi, -0.25);
      double p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = z;
    nodes[n - 1 - i] = -z;
    weights[i] = 2.0 / (pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

std::vector<double> gauss_hermite_nodes(int n) {
  std::vector<double> x, w;
  gauss_hermite(n, x, w);
  return x;
}

std::vector<double> gauss_hermite_weights(int n) {
  std::vector<double> x, w;
  gauss_hermite(n, x, w);
  return w;
}

}  // namespace detail

namespace {

// Exact <f>_t for one coupling realization: per-replica spin-mask moments
// from one small WHT, overlap factors expanded over their site sums.
class ReplicaAverager {
 public:
  ReplicaAverager(int n_sites, double beta, double t)
      : n_(n_sites), beta_(beta), t_(t), moments_(std::size_t{1} << n_sites) {}

  void load(const DisorderSample& sample) {
    scratch_.transform(sample, beta_, t_);
    const double z = scratch_.buffer[0];
    for (std::size_t m = 0; m < moments_.size(); ++m) moments_[m] = scratch_.buffer[m] / z;
  }

  double average(const Observable& f) const {
    const int replicas = f.replica_count();
    std::vector<unsigned> masks(replicas + 1, 0);
    for (int e : f.eps) masks[e] ^= 1u << (n_ - 1);
    return expand(f, 0, masks) /
           std::pow(static_cast<double>(n_), static_cast<double>(f.overlaps.size()));
  }

 private:
  double expand(const Observable& f, std::size_t k, std::vector<unsigned>& masks) const {
    if (k == f.overlaps.size()) {
      double prod = 1;
      for (std::size_t r = 1; r < masks.size(); ++r) prod *= moments_[masks[r]];
      return prod;
    }
    const auto& o = f.overlaps[k];
    const int limit = o.minus ? n_ - 1 : n_;
    double sum = 0;
    for (int site = 0; site < limit; ++site) {
      const unsigned bit = 1u << site;
      masks[o.a] ^= bit;
      masks[o.b] ^= bit;
      sum += expand(f, k + 1, masks);
      masks[o.a] ^= bit;
      masks[o.b] ^= bit;
    }
    return sum;
  }

  int n_;
  double beta_, t_;
  std::vector<double> moments_;
  mutable GibbsScratch scratch_;
};

void validate_quadrature(const Observable& f, int n_sites, int nodes) {
  if (n_sites < 2 || n_sites > 4)
    throw resource_error("quadrature: N must be in [2, 4] (dimension N(N-1)/2 <= 6)");
  if (nodes < 1 || nodes > 40) throw resource_error("quadrature: nodes must be in [1, 40]");
  for (const auto& o : f.overlaps)
    if (!(1 <= o.a && o.a < o.b)) throw contract_violation("quadrature: bad overlap pair");
  for (int e : f.eps)
    if (e < 1) throw contract_violation("quadrature: bad replica index");
}

}  // namespace

double nu_t_quadrature(const Observable& f, int n_sites, double beta, double t, int nodes) {
  validate_quadrature(f, n_sites, nodes);
  const auto xs = detail::gauss_hermite_nodes(nodes);
  const auto ws = detail::gauss_hermite_weights(nodes);
  const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);

  const int dim = n_sites * (n_sites - 1) / 2;
  DisorderSample sample;
  sample.n_sites = n_sites;
  sample.couplings.assign(dim, 0.0);
  ReplicaAverager averager(n_sites, beta, t);

  std::vector<int> idx(dim, 0);
  double acc = 0;
  while (true) {
    double weight = 1;
    for (int d = 0; d < dim; ++d) {
      sample.couplings[d] = std::sqrt(2.0) * xs[idx[d]];
      weight *= ws[idx[d]] * inv_sqrt_pi;
    }
    averager.load(sample);
    acc += weight * averager.average(f);

    int d = 0;
    while (d < dim && ++idx[d] == nodes) idx[d++] = 0;
    if (d == dim) break;
  }
  return acc;
}

double nu_t_derivative_fd(const Observable& f, int n_sites, double beta, double t, int nodes,
                          double h) {
  auto value = [&](double tau) { return nu_t_quadrature(f, n_sites, beta, tau, nodes); };
  auto diff = [&](double step) {
    if (t >= step) return (value(t + step) - value(t - step)) / (2.0 * step);
    // One-sided second-order stencil at the t = 0 boundary.
    return (-3.0 * value(t) + 4.0 * value(t + step) - value(t + 2.0 * step)) / (2.0 * step);
  };
  const double d1 = diff(h);
  const double d2 = diff(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

double nu_t_derivative_formula(const Observable& f, int n_sites, double beta, double t,
                               int nodes) {
  const int n = f.replica_count();
  double acc = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      acc += nu_t_quadrature(f.times_eps_pair_overlap(a, b), n_sites, beta, t, nodes);
  for (int a = 1; a <= n; ++a)
    acc -= n * nu_t_quadrature(f.times_eps_pair_overlap(a, n + 1), n_sites, beta, t, nodes);
  acc += 0.5 * n * (n + 1) *
         nu_t_quadrature(f.times_eps_pair_overlap(n + 1, n + 2), n_sites, beta, t, nodes);
  return beta * beta * acc;
}

std::pair<double, double> derivative_check(int n_sites, double beta, double t, int nodes) {
  Observable f;
  f.eps = {1, 2};
  f.overlaps.push_back({1, 2, true});
  return {nu_t_derivative_fd(f, n_sites, beta, t, nodes),
          nu_t_derivative_formula(f, n_sites, beta, t, nodes)};
}

double parity_vanishing_max_abs(int n_sites, double beta, int nodes) {
  auto obs = [](std::vector<int> eps,
                std::vector<Observable::OverlapFactor> overlaps = {}) {
    Observable f;
    f.eps = std::move(eps);
    f.overlaps = std::move(overlaps);
    return f;
  };
  const std::vector<Observable> odd = {
      obs({1}),
      obs({2}),
      obs({1}, {{1, 2, true}}),
      obs({1}, {{1, 2, false}}),
      obs({2}, {{1, 2, true}, {2, 3, true}}),
      obs({1, 2, 3}),
      obs({1, 2, 3}, {{1, 2, true}}),
      obs({1, 2, 3}, {{1, 3, true}, {2, 3, true}}),
      obs({1, 2, 3}, {{1, 2, false}, {1, 3, true}}),
  };
  double worst = 0;
  for (const auto& f : odd)
    worst = std::max(worst, std::abs(nu_t_quadrature(f, n_sites, beta, /*t=*/0.0, nodes)));
  return worst;
}

}  // namespace skx
