#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/prior_field.hpp"
#include "sphreg/spectra.hpp"

using namespace sphreg;

TEST_SUITE("prior_field") {
  TEST_CASE("degenerate and deterministic draws") {
    const PowerSpectrum zero(2, std::vector<double>(6, 0.0));
    const auto z = sample_prior(zero, 3);
    CHECK(z.coeffs.max_degree() == 5);
    for (double a : z.coeffs.values()) CHECK(a == 0.0);

    const auto s = matern_spectrum(2, 2.0, 1.0, 12);
    const auto a = sample_prior(s, 99);
    const auto b = sample_prior(s, 99);
    const auto c = sample_prior(s, 100);
    CHECK(a.coeffs == b.coeffs);
    CHECK_FALSE(a.coeffs == c.coeffs);
    CHECK(a.seed == 99);
    CHECK(a.coeffs.max_degree() == s.max_degree());

    const auto s3 = matern_spectrum(3, 2.0, 1.0, 4);
    CHECK(sample_prior(s3, 1).coeffs.size() == HarmonicCoefficients(3, 4).size());
  }

  TEST_CASE("per-mode Monte Carlo variance matches the spectrum") {
    const auto s = matern_spectrum(2, 2.0, 1.0, 3);
    std::vector<double> a11;
    a11.reserve(10000);
    for (std::uint64_t k = 0; k < 10000; ++k) a11.push_back(sample_prior(s, k).coeffs.at(1, 1));
    CHECK(std::abs(oracle::sample_variance(a11) / (1.0 / 9.0) - 1.0) <= 0.05);
  }

  TEST_CASE("kernel closed forms") {
    const PowerSpectrum constant(2, {1.0});
    for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(covariance_kernel(constant, t) == doctest::Approx(1.0));
    const auto s = matern_spectrum(2, 2.0, 1.0, 40);
    CHECK(covariance_kernel(s, 1.0) == doctest::Approx(trace(s)).epsilon(1e-13));
    double direct = 0.0;
    for (unsigned l = 0; l <= 40; ++l) direct += s[static_cast<int>(l)] * (2.0 * l + 1.0) * std::legendre(l, 0.3);
    CHECK(covariance_kernel(s, 0.3) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(covariance_kernel(s, 0.3, 2) ==
          doctest::Approx(1.0 + 3.0 * 0.3 / 9.0 + 5.0 * (3 * 0.09 - 1) / 2 / 49.0).epsilon(1e-13));
    CHECK(covariance_kernel(s, 1.0 + 1e-13) == doctest::Approx(trace(s)));
  }

  TEST_CASE("kernel is maximal at coincidence") {
    for (double alpha : {1.5, 2.0, 3.0}) {
      const auto s = matern_spectrum(2, alpha, 1.0, 60);
      const double top = covariance_kernel(s, 1.0);
      for (int i = 0; i <= 400; ++i) CHECK(covariance_kernel(s, -1.0 + i / 200.0) <= top + 1e-12);
    }
  }

  TEST_CASE("empirical covariance at inner product one half") {
    const auto s = matern_spectrum(2, 2.0, 1.0, 30);
    const SpherePoint x(0.0, 0.0, 1.0);
    const SpherePoint y(std::sqrt(0.75), 0.0, 0.5);
    const auto bx = evaluate_basis(30, x);
    const auto by = evaluate_basis(30, y);
    double acc = 0.0;
    const int draws = 20000;
    for (int k = 0; k < draws; ++k) {
      const auto draw = sample_prior(s, 5000000 + static_cast<std::uint64_t>(k)).coeffs;
      const auto c = draw.values();
      double fx = 0.0;
      double fy = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        fx += c[i] * bx[i];
        fy += c[i] * by[i];
      }
      acc += fx * fy;
    }
    const double expected = covariance_kernel(s, 0.5);
    CHECK(std::abs(acc / draws / expected - 1.0) <= 0.05);
  }

  TEST_CASE("grid norm of draws averages to the trace") {
    const auto s = matern_spectrum(2, 2.0, 1.0, 10);
    const QuadratureGrid grid(10);
    std::vector<std::vector<double>> basis;
    for (const auto& node : grid.nodes()) {
      const auto b = evaluate_basis(10, node);
      basis.emplace_back(b.values().begin(), b.values().end());
    }
    std::vector<double> norms;
    std::vector<double> f(grid.size());
    for (std::uint64_t k = 0; k < 2000; ++k) {
      const auto draw = sample_prior(s, 700 + k).coeffs;
      const auto c = draw.values();
      for (std::size_t j = 0; j < grid.size(); ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * basis[j][i];
        f[j] = v * v;
      }
      norms.push_back(grid.integrate(f));
    }
    const auto ms = oracle::mean_se(norms);
    CHECK(std::abs(ms.mean - trace(s)) <= 3.0 * ms.se);
  }

  TEST_CASE("Sobolev regularity trend over truncation degrees") {
    // alpha = 2 on S^2: draws lie in H^s exactly when s < 1.
    const auto s = matern_spectrum(2, 2.0, 1.0, 80);
    const int draws = 400;
    auto mean_norm = [&](double order, int L) {
      double acc = 0.0;
      for (int k = 0; k < draws; ++k)
        acc += sobolev_norm_sq(sample_prior(s, 90000 + static_cast<std::uint64_t>(k)).coeffs.resized(L), order, 2);
      return acc / draws;
    };
    const double low20 = mean_norm(0.5, 20);
    const double low40 = mean_norm(0.5, 40);
    const double low80 = mean_norm(0.5, 80);
    const double high20 = mean_norm(1.5, 20);
    const double high40 = mean_norm(1.5, 40);
    const double high80 = mean_norm(1.5, 80);
    // Bounded: increments shrink and the total barely moves.
    CHECK(low80 - low40 < low40 - low20);
    CHECK(low80 / low20 < 1.1);
    // Unbounded: the norm keeps growing roughly linearly in L.
    CHECK(high40 / high20 > 1.4);
    CHECK(high80 / high40 > 1.4);
  }
}
