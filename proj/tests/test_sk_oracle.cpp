#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "skx/errors.hpp"
#include "skx/sk_oracle.hpp"

using skx::DisorderSample;
using skx::GibbsState;
using skx::Observable;

TEST_CASE("disorder samples are deterministic and correctly sized") {
  DisorderSample a = skx::draw_disorder(6, 42, 7);
  DisorderSample b = skx::draw_disorder(6, 42, 7);
  CHECK(a.couplings.size() == 15);
  CHECK(a.couplings == b.couplings);
  CHECK(a.coupling(2, 4) == a.coupling(4, 2));
  DisorderSample c = skx::draw_disorder(6, 42, 8);
  CHECK(a.couplings != c.couplings);
  CHECK(a.couplings[3] == skx::detail::gaussian_from_stream(42, 7, 3));
}

TEST_CASE("gibbs at beta=0 is the uniform measure, exactly") {
  DisorderSample s = skx::draw_disorder(8, 5, 0);
  GibbsState g = skx::gibbs_exact(s, 0.0, 1.0);
  CHECK(g.log_partition == doctest::Approx(8 * std::log(2.0)).epsilon(1e-14));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(g.corr(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("single spin is trivial") {
  DisorderSample s;
  s.n_sites = 1;
  GibbsState g = skx::gibbs_exact(s, 0.7, 1.0);
  CHECK(g.log_partition == doctest::Approx(std::log(2.0)));
  CHECK(g.corr(0, 0) == 1.0);
}

TEST_CASE("two-spin closed form: <s1 s2> = tanh(beta g / sqrt(2))") {
  DisorderSample s;
  s.n_sites = 2;
  s.couplings = {1.37};
  const double beta = 0.45;
  GibbsState g = skx::gibbs_exact(s, beta, 1.0);
  CHECK(g.corr(0, 1) == doctest::Approx(std::tanh(beta * 1.37 / std::sqrt(2.0))).epsilon(1e-14));
  // t = 0 decouples the pair entirely.
  GibbsState g0 = skx::gibbs_exact(s, beta, 0.0);
  CHECK(g0.corr(0, 1) == 0.0);
}

TEST_CASE("resource cap on exact enumeration") {
  DisorderSample s = skx::draw_disorder(12, 1, 0);
  CHECK_THROWS_AS(skx::gibbs_exact(s, 0.2, 1.0, /*cap=*/10), skx::resource_error);
}

TEST_CASE("log-sum-exp: constant energy shifts leave correlations bit-identical") {
  DisorderSample s = skx::draw_disorder(6, 9, 3);
  GibbsState a = skx::gibbs_exact(s, 0.4, 1.0);
  // Rebuild through the energy-level entry point, shifted by a constant.
  std::vector<double> energies(1 << 6), shifted(1 << 6);
  {
    // Recover energies from scratch: enumerate directly with the same
    // effective couplings used by gibbs_exact.
    const int n = 6;
    const double scale = 1.0 / std::sqrt(6.0);
    for (int mask = 0; mask < (1 << 6); ++mask) {
      double e = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double si = (mask >> i) & 1 ? 1.0 : -1.0;
          const double sj = (mask >> j) & 1 ? 1.0 : -1.0;
          e += scale * s.coupling(i, j) * si * sj;
        }
      energies[mask] = e;
      shifted[mask] = e + 123.456;
    }
  }
  GibbsState b = skx::detail::gibbs_from_energies(energies, 6, 0.4, 1.0);
  GibbsState c = skx::detail::gibbs_from_energies(shifted, 6, 0.4, 1.0);
  CHECK(b.pair_correlations == c.pair_correlations);
  CHECK(c.log_partition == doctest::Approx(b.log_partition + 0.4 * 123.456).epsilon(1e-12));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(a.corr(i, j) == doctest::Approx(b.corr(i, j)).epsilon(1e-12));
}

TEST_CASE("replica identity: <R^2> equals the correlation square sum") {
  // Explicit two-replica enumeration against the N^-2 sum_ij <s_i s_j>^2 route.
  for (int n : {2, 3, 4, 5, 6}) {
    DisorderSample s = skx::draw_disorder(n, 77, n);
    const double beta = 0.35;
    GibbsState g = skx::gibbs_exact(s, beta, 1.0);
    double via_corr = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) via_corr += g.corr(i, j) * g.corr(i, j);
    via_corr /= static_cast<double>(n) * n;

    // Direct double sum over replica pairs.
    const int size = 1 << n;
    std::vector<double> w(size);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    double emax = -1e300;
    for (int mask = 0; mask < size; ++mask) {
      double e = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double si = (mask >> i) & 1 ? 1.0 : -1.0;
          const double sj = (mask >> j) & 1 ? 1.0 : -1.0;
          e += scale * s.coupling(i, j) * si * sj;
        }
      w[mask] = e;
      emax = std::max(emax, e);
    }
    double z = 0;
    for (auto& e : w) {
      e = std::exp(beta * (e - emax));
      z += e;
    }
    double acc = 0;
    for (int m1 = 0; m1 < size; ++m1)
      for (int m2 = 0; m2 < size; ++m2) {
        int overlap = 0;
        for (int i = 0; i < n; ++i)
          overlap += ((m1 >> i) & 1) == ((m2 >> i) & 1) ? 1 : -1;
        const double r = static_cast<double>(overlap) / n;
        acc += w[m1] * w[m2] * r * r;
      }
    acc /= z * z;
    CHECK(via_corr == doctest::Approx(acc).epsilon(1e-12));
  }
}

TEST_CASE("beta=0 Monte Carlo is exactly 1/N with zero spread") {
  for (int n : {2, 5, 9, 14}) {
    auto est = skx::nu_r2_mc(n, 0.0, 3, 123, 1);
    CHECK(est.value == 1.0 / n);
    CHECK(est.std_error == 0.0);
  }
  auto est0 = skx::nu0_r_minus_sq_mc(10, 0.0, 3, 123, 1);
  CHECK(est0.value == 9.0 / 100.0);  // (N-1)/N^2
  CHECK(est0.std_error == 0.0);
}

TEST_CASE("MC estimates are worker-count independent and seed deterministic") {
  auto a = skx::nu_r2_mc(6, 0.4, 500, 99, 1);
  auto b = skx::nu_r2_mc(6, 0.4, 500, 99, 4);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  auto c = skx::nu_r2_mc(6, 0.4, 500, 100, 2);
  CHECK(a.value != c.value);
}

TEST_CASE("two-spin single-sample estimate matches the closed form") {
  // X = (2 + 2 tanh^2(beta g / sqrt 2)) / 4 for one disorder draw.
  const double beta = 0.3;
  auto est = skx::nu_r2_mc(2, beta, 1, 7, 1);
  const double g = skx::detail::gaussian_from_stream(7, 0, 0);
  const double th = std::tanh(beta * g / std::sqrt(2.0));
  CHECK(est.value == doctest::Approx((2.0 + 2.0 * th * th) / 4.0).epsilon(1e-14));
}

TEST_CASE("cavity estimator ignores the cavity couplings at t = 0") {
  // Same non-cavity couplings, different cavity column: identical value.
  DisorderSample s1 = skx::draw_disorder(5, 11, 0);
  DisorderSample s2 = s1;
  // Overwrite the cavity column (pairs (i, 4)) with other values.
  for (int i = 0; i < 4; ++i) {
    // upper-triangle index of (i, 4) in a 5-site system
    int idx = i * (2 * 5 - i - 1) / 2 + (4 - i - 1);
    s2.couplings[idx] = 123.0 + i;
  }
  GibbsState g1 = skx::gibbs_exact(s1, 0.37, 0.0);
  GibbsState g2 = skx::gibbs_exact(s2, 0.37, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(g1.corr(i, j) == g2.corr(i, j));
}

TEST_CASE("quadrature: R^2 at beta=0 is exactly 1/N and nodes converge") {
  Observable r2;
  r2.overlaps = {{1, 2, false}, {1, 2, false}};
  for (int n : {2, 3}) {
    CHECK(skx::nu_t_quadrature(r2, n, 0.0, 1.0, 8) == doctest::Approx(1.0 / n).epsilon(1e-13));
  }
  const double v20 = skx::nu_t_quadrature(r2, 3, 0.5, 1.0, 20);
  const double v40 = skx::nu_t_quadrature(r2, 3, 0.5, 1.0, 40);
  CHECK(std::abs(v40 - v20) < 1e-8);
}

TEST_CASE("quadrature caps") {
  Observable r2;
  r2.overlaps = {{1, 2, false}, {1, 2, false}};
  CHECK_THROWS_AS(skx::nu_t_quadrature(r2, 5, 0.3, 1.0, 10), skx::resource_error);
  CHECK_THROWS_AS(skx::nu_t_quadrature(r2, 3, 0.3, 1.0, 50), skx::resource_error);
}

TEST_CASE("odd cavity monomials vanish at t = 0") {
  CHECK(skx::parity_vanishing_max_abs(2, 0.4, 16) < 1e-10);
  CHECK(skx::parity_vanishing_max_abs(3, 0.4, 12) < 1e-10);
}

TEST_CASE("cavity derivative identity holds to quadrature accuracy") {
  for (double beta : {0.2, 0.4}) {
    for (double t : {0.0, 0.5}) {
      auto [lhs, rhs] = skx::derivative_check(3, beta, t, 30);
      CHECK(std::abs(lhs - rhs) <= 1e-6);
    }
  }
}

TEST_CASE("gauss-hermite rule integrates gaussian moments") {
  auto xs = skx::detail::gauss_hermite_nodes(12);
  auto ws = skx::detail::gauss_hermite_weights(12);
  // E[g^2] = 1 and E[g^4] = 3 for standard normal g.
  double m2 = 0, m4 = 0;
  const double inv_sqrt_pi = 1.0 / std::sqrt(3.14159265358979323846);
  for (int i = 0; i < 12; ++i) {
    const double g = std::sqrt(2.0) * xs[i];
    m2 += ws[i] * inv_sqrt_pi * g * g;
    m4 += ws[i] * inv_sqrt_pi * g * g * g * g;
  }
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
}
