#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sphreg/error.hpp"
#include "sphreg/regression.hpp"
#include "sphreg/sequence_model.hpp"
#include "sphreg/spectra.hpp"

using namespace sphreg;

namespace {

HarmonicCoefficients random_coefficients(int d, int L, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  HarmonicCoefficients c(d, L);
  for (double& a : c.values()) a = normal(rng);
  return c;
}

double slope_of(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST_SUITE("sequence_model") {
  TEST_CASE("scalar shrinkage formulas") {
    CHECK(shrinkage_weight(1e12, 1.0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shrinkage_weight(1.0, 1.0, 1) == 0.5);
    CHECK(posterior_variance(1.0, 1.0, 1) == 0.5);
    CHECK(shrinkage_weight(0.0, 1.0, 10) == 0.0);
    CHECK(posterior_variance(0.0, 1.0, 10) == 0.0);
  }

  TEST_CASE("idealized observations") {
    const auto truth = random_coefficients(2, 4, 1);
    const auto quiet = simulate_sequence_observations(truth, 1e-30, 10, 5);
    for (std::size_t i = 0; i < truth.size(); ++i) CHECK(std::abs(quiet.values()[i] - truth.values()[i]) <= 1e-15);
    CHECK(simulate_sequence_observations(truth, 0.5, 10, 5) == simulate_sequence_observations(truth, 0.5, 10, 5));
    CHECK_THROWS_AS((void)simulate_sequence_observations(truth, 0.5, 0, 5), InvalidArgument);

    const HarmonicCoefficients zero(2, 1);
    std::vector<double> mode;
    for (std::uint64_t k = 0; k < 10000; ++k) mode.push_back(simulate_sequence_observations(zero, 2.0, 4, k).at(1, 2));
    CHECK(std::abs(oracle::sample_variance(mode) - 1.0) <= 0.05);

    const auto in3d = simulate_sequence_observations(HarmonicCoefficients(3, 2), 1.0, 1, 2);
    CHECK(in3d.size() == HarmonicCoefficients(3, 2).size());
  }

  TEST_CASE("truncation rule") {
    CHECK(truncation_level(50, 2.0, 2, 2.5) == 4);
    CHECK(truncation_level(3200, 2.0, 2, 2.5) == 9);
    CHECK(truncation_level(100, 1.0, 2, 2.5) == 7);
    const int expected[] = {4, 5, 6, 6, 7, 8, 9};
    int i = 0;
    for (std::size_t n = 50; n <= 3200; n *= 2) CHECK(truncation_level(n, 2.0, 2, 2.5) == expected[i++]);
    CHECK(truncation_level(1, 2.0, 2, 0.5) == 0);
    CHECK_THROWS_AS((void)truncation_level(0, 2.0, 2, 2.5), InvalidArgument);
    CHECK_THROWS_AS((void)truncation_level(10, 2.0, 2, 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)truncation_level(10, 0.5, 2, 2.5), InvalidArgument);
  }

  TEST_CASE("posterior structure") {
    const auto spec = matern_spectrum(2, 2.0, 1.0, 8);
    const auto obs = random_coefficients(2, 8, 3);
    const auto model = posterior(obs, spec, 0.7, 25, 5);
    CHECK(model.truncation == 5);
    CHECK(model.n == 25);
    CHECK(model.noise_var == doctest::Approx(0.49));
    REQUIRE(model.level_variances.size() == 6);
    for (int l = 0; l <= 5; ++l) {
      const double c = spec[l];
      const double v = model.level_variances[static_cast<std::size_t>(l)];
      CHECK(std::abs(v - c * 0.49 / (25 * c + 0.49)) <= 1e-14);
      CHECK(v >= 0.0);
      CHECK(v < std::min(c, 0.49 / 25));
      const double w = model.shrinkage_weight(l);
      for (std::size_t m = 0; m < obs.level_size(l); ++m) CHECK(model.means.at(l, m) == w * obs.at(l, m));
    }
    CHECK(model.means.max_degree() == 5);
    CHECK(model.shrinkage_weight(6) == 0.0);

    CHECK_THROWS_AS((void)posterior(obs, spec, 0.7, 25, 9), InvalidArgument);
    CHECK_THROWS_AS((void)posterior(obs.resized(3), spec, 0.7, 25, 4), InvalidArgument);
    CHECK_THROWS_AS((void)posterior(obs, spec, 0.7, 0, 4), InvalidArgument);
    CHECK_THROWS_AS((void)posterior(obs, spec, 0.0, 10, 4), InvalidArgument);
  }

  TEST_CASE("posterior limiting cases") {
    const auto obs = random_coefficients(2, 2, 8);
    const auto flat = posterior(obs, PowerSpectrum(2, {1e12, 1e12, 1e12}), 1.0, 1, 2);
    for (std::size_t i = 0; i < obs.size(); ++i)
      CHECK(flat.means.values()[i] == doctest::Approx(obs.values()[i]).epsilon(1e-12));
    const auto balanced = posterior(obs, PowerSpectrum(2, {1.0, 1.0, 1.0}), 1.0, 1, 2);
    CHECK(balanced.shrinkage_weight(1) == 0.5);
    CHECK(balanced.level_variances[1] == 0.5);
    const auto dead = posterior(obs, PowerSpectrum(2, {0.0, 0.0, 0.0}), 1.0, 5, 2);
    for (double a : dead.means.values()) CHECK(a == 0.0);
    for (double v : dead.level_variances) CHECK(v == 0.0);
  }

  TEST_CASE("posterior means are linear in the observations") {
    const auto spec = matern_spectrum(2, 2.5, 0.8, 6);
    const auto x = random_coefficients(2, 6, 10);
    const auto y = random_coefficients(2, 6, 11);
    const double a = 1.7;
    const double b = -0.4;
    const auto lhs = posterior(a * x + b * y, spec, 0.3, 40, 6).means;
    const auto rhs = a * posterior(x, spec, 0.3, 40, 6).means + b * posterior(y, spec, 0.3, 40, 6).means;
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs.values()[i] - rhs.values()[i]) <= 1e-12);
  }

  TEST_CASE("shrinkage weights are nonincreasing") {
    for (double alpha : {1.2, 2.0, 4.0}) {
      const auto spec = matern_spectrum(2, alpha, 1.3, 40);
      const auto model = posterior(HarmonicCoefficients(2, 40), spec, 0.5, 100, 40);
      for (int l = 1; l <= 40; ++l) CHECK(model.shrinkage_weight(l) <= model.shrinkage_weight(l - 1));
    }
  }

  TEST_CASE("posterior draws") {
    const auto obs = random_coefficients(2, 3, 20);
    auto frozen = posterior(obs, PowerSpectrum(2, {0.0, 0.0, 0.0, 0.0}), 1.0, 3, 3);
    CHECK(posterior_draw(frozen, 1) == frozen.means);

    const auto spec = matern_spectrum(2, 2.0, 1.0, 3);
    const auto model = posterior(obs, spec, 1.0, 4, 2);
    CHECK(posterior_draw(model, 17) == posterior_draw(model, 17));
    CHECK_FALSE(posterior_draw(model, 17) == posterior_draw(model, 18));
    std::vector<double> mode;
    for (std::uint64_t k = 0; k < 10000; ++k) mode.push_back(posterior_draw(model, k).at(1, 0));
    CHECK(std::abs(oracle::sample_variance(mode) / model.level_variances[1] - 1.0) <= 0.05);
  }

  TEST_CASE("risk decomposition closed cases") {
    const auto spec = matern_spectrum(2, 2.0, 1.0, 10);
    const auto zero = expected_posterior_risk(HarmonicCoefficients(2, 6), spec, 0.5, 100, 4);
    CHECK(zero.shrinkage_bias == 0.0);
    CHECK(zero.truncation_tail == 0.0);
    CHECK(zero.total > 0.0);

    const auto truth = generate_truth({2.0, 10, 4, true});
    double tail = 0.0;
    for (int l = 5; l <= 10; ++l)
      for (double a : truth.level(l)) tail += a * a;
    const auto big = expected_posterior_risk(truth, spec, 0.5, 1000000000000ULL, 4);
    CHECK(big.shrinkage_bias < 1e-9);
    CHECK(big.stochastic_variance < 1e-9);
    CHECK(big.posterior_spread < 1e-9);
    CHECK(big.truncation_tail == doctest::Approx(tail).epsilon(1e-14));

    const auto r = expected_posterior_risk(truth, spec, 0.5, 300, 6);
    CHECK(std::abs(r.total - (r.shrinkage_bias + r.stochastic_variance + r.posterior_spread + r.truncation_tail)) <=
          1e-12);
    CHECK(r.shrinkage_bias >= 0.0);
    CHECK(r.stochastic_variance >= 0.0);
    CHECK(r.posterior_spread >= 0.0);
    CHECK(r.truncation_tail >= 0.0);
    CHECK_THROWS_AS((void)expected_posterior_risk(truth, spec, 0.5, 300, 11), InvalidArgument);
  }

  TEST_CASE("risk decomposition matches brute-force Monte Carlo") {
    const auto truth = generate_truth({2.0, 5, 77, true});
    const auto spec = matern_spectrum(2, 2.0, 1.0, 5);
    for (std::size_t n : {std::size_t{10}, std::size_t{100}}) {
      for (int L : {1, 3}) {
        CAPTURE(n);
        CAPTURE(L);
        std::vector<double> losses;
        for (std::uint64_t rep = 0; rep < 2000; ++rep) {
          const auto obs = simulate_sequence_observations(truth, 0.5, n, derive_seed(1, {n, rep, 0}));
          const auto model = posterior(obs, spec, 0.5, n, L);
          const auto draw = posterior_draw(model, derive_seed(1, {n, rep, 1}));
          losses.push_back(squared_distance(draw, truth));
        }
        const auto ms = oracle::mean_se(losses);
        const double exact = expected_posterior_risk(truth, spec, 0.5, n, L).total;
        CHECK(std::abs(ms.mean - exact) <= 3.0 * ms.se);
      }
    }
  }

  TEST_CASE("expected risk contracts at the calibrated rate") {
    const auto truth = generate_truth({2.0, 10, 20240101, true});
    const auto spec = matern_spectrum(2, 2.0, 1.0, 20);
    std::vector<double> logn;
    std::vector<double> logr;
    double prev = INFINITY;
    for (std::size_t n = 50; n <= 3200; n *= 2) {
      const int L = truncation_level(n, 2.0, 2, 2.5);
      const double total = expected_posterior_risk(truth, spec, 0.5, n, L).total;
      CHECK(total < prev);
      prev = total;
      logn.push_back(std::log(static_cast<double>(n)));
      logr.push_back(0.5 * std::log(total));
    }
    CHECK(std::abs(slope_of(logn, logr) - (-1.0 / 3.0)) <= 0.05);
  }

  TEST_CASE("rates") {
    CHECK(theoretical_rate(2, 2, 2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(theoretical_rate(3, 2, 2) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(theoretical_rate(1, 2, 2) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(nominal_rate(1, 2, 2) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(nominal_rate(2, 2, 2) == theoretical_rate(2, 2, 2));
    CHECK_THROWS_AS((void)theoretical_rate(2, 0, 2), InvalidArgument);
    CHECK_THROWS_AS((void)theoretical_rate(0.5, 1, 2), InvalidArgument);
  }
}
