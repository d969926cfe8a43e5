// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sphreg/experiments.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/prior_field.hpp"
#include "sphreg/regression.hpp"
#include "sphreg/sequence_model.hpp"
#include "sphreg/spectra.hpp"
#include "sphreg/variational.hpp"

using namespace sphreg;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<std::size_t> kSizes{50, 100, 200, 400, 800, 1600, 3200};

Outcome truncation_schedule() {
  const std::vector<int> expected{4, 5, 6, 6, 7, 8, 9};
  std::string got;
  bool ok = true;
  for (std::size_t i = 0; i < kSizes.size(); ++i) {
    const int l = truncation_level(kSizes[i], 2.0, 2, 2.5);
    ok = ok && l == expected[i];
    got += (i ? "," : "") + std::to_string(l);
  }
  return {ok, "L_n=" + got};
}

Outcome reference_slope_replay() {
  const std::vector<std::pair<double, double>> rows{{50, 0.245},  {100, 0.204},  {200, 0.174}, {400, 0.127},
                                                    {800, 0.103}, {1600, 0.0841}, {3200, 0.0690}};
  const double s = fit_loglog_slope(rows).slope;
  return {std::abs(s - (-0.313)) <= 0.01, "slope=" + num(s)};
}

Outcome contraction_reproduction() {
  const ContractionReport r = run_contraction_study(ExperimentConfig{});
  bool monotone = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i) monotone = monotone && r.rows[i].rmse_mean < r.rows[i - 1].rmse_mean;
  const bool in_band = r.slope >= -0.40 && r.slope <= -0.25;
  return {monotone && in_band && r.rows.size() == kSizes.size(),
          "slope=" + num(r.slope) + " theoretical=" + num(r.theoretical_slope) +
              (monotone ? " monotone" : " NOT monotone")};
}

Outcome miscalibration_ordering() {
  const std::vector<double> alphas{1.0, 2.0, 3.0};
  const auto reports = run_miscalibration_study(ExperimentConfig{}, alphas);
  const double s1 = reports[0].slope;
  const double s2 = reports[1].slope;
  const double s3 = reports[2].slope;
  const bool calibrated_fastest = s2 < s1 && s2 < s3;
  const bool alpha3 = std::abs(s3 - (-0.25)) <= 0.08;
  const bool alpha1 = std::abs(s1 - theoretical_rate(1.0, 2.0, 2)) <= 0.08;
  return {calibrated_fastest && alpha3 && alpha1,
          "slopes alpha1=" + num(s1) + " alpha2=" + num(s2) + " alpha3=" + num(s3) +
              " (alpha1 saturated target " + num(theoretical_rate(1.0, 2.0, 2)) + ", nominal " +
              num(nominal_rate(1.0, 2.0, 2)) + " not asserted)"};
}

Outcome variational_equivalence() {
  Rng rng = make_rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> normal;
  double worst_seq = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int L = static_cast<int>(u(rng) * 10);
    std::vector<double> table(static_cast<std::size_t>(L) + 1);
    for (double& c : table) c = std::exp(-8.0 * u(rng));
    const PowerSpectrum spec(2, table);
    HarmonicCoefficients obs(2, L);
    for (double& a : obs.values()) a = normal(rng);
    const double sigma = 0.05 + 2.0 * u(rng);
    const auto n = static_cast<std::size_t>(1 + 5000 * u(rng));
    const auto a = minimize_sequence_objective(obs, spec, sigma, n, L);
    const auto b = posterior(obs, spec, sigma, n, L).means;
    for (std::size_t i = 0; i < a.size(); ++i) worst_seq = std::max(worst_seq, std::abs(a.values()[i] - b.values()[i]));
  }
  double worst_dual = 0.0;
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    const auto truth = generate_truth({2.0, 8, 100 + inst, true});
    const auto data = generate_dataset(truth, 50, 0.5, 200 + inst);
    const auto spec = matern_spectrum(2, 2.0, 1.0, 4);
    const auto primal = empirical_ridge(data, spec, 4);
    const auto dual = krr_dual(data, spec, 4);
    for (const auto& x : sample_uniform(100, 2, 300 + inst))
      worst_dual = std::max(worst_dual, std::abs(dual.predict(x) - synthesize(primal, x)));
  }
  return {worst_seq <= 1e-14 && worst_dual <= 1e-8,
          "max sequence gap=" + num(worst_seq) + " max primal/dual gap=" + num(worst_dual)};
}

Outcome risk_decomposition_oracle() {
  const auto truth = generate_truth({2.0, 5, 9, true});
  const auto spec = matern_spectrum(2, 2.0, 1.0, 5);
  const double sigma = 0.5;
  bool ok = true;
  std::string detail;
  for (std::size_t n : {std::size_t{10}, std::size_t{100}})
    for (int L : {0, 1, 2, 3}) {
      std::vector<double> losses;
      for (std::uint64_t rep = 0; rep < 2000; ++rep) {
        const auto obs = simulate_sequence_observations(truth, sigma, n, derive_seed(61, {n, rep, 0}));
        const auto draw = posterior_draw(posterior(obs, spec, sigma, n, L), derive_seed(61, {n, rep, 1}));
        losses.push_back(squared_distance(draw, truth));
      }
      const auto ms = oracle::mean_se(losses);
      const double exact = expected_posterior_risk(truth, spec, sigma, n, L).total;
      const double z = (ms.mean - exact) / ms.se;
      ok = ok && std::abs(z) <= 3.0;
      detail += " n" + std::to_string(n) + "L" + std::to_string(L) + ":z=" + num(z);
    }
  return {ok, detail.substr(1)};
}

Outcome harmonic_exactness() {
  const auto xs = sample_uniform(100, 2, 71);
  const auto ys = sample_uniform(100, 2, 72);
  double addition = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto bx = evaluate_basis(20, xs[i]);
    const auto by = evaluate_basis(20, ys[i]);
    const double t = clamped_inner(xs[i], ys[i]);
    for (int l = 0; l <= 20; ++l) {
      const auto a = bx.level(l);
      const auto b = by.level(l);
      double s = 0.0;
      for (std::size_t m = 0; m < a.size(); ++m) s += a[m] * b[m];
      addition = std::max(addition, std::abs(s - (2.0 * l + 1.0) * std::legendre(static_cast<unsigned>(l), t)));
    }
  }

  const QuadratureGrid grid(12);
  const std::size_t dim = basis_size(12);
  std::vector<double> gram(dim * dim, 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto b = evaluate_basis(12, grid.nodes()[j]);
    const double w = grid.weights()[j];
    for (std::size_t p = 0; p < dim; ++p)
      for (std::size_t q = 0; q < dim; ++q) gram[p * dim + q] += w * b[p] * b[q];
  }
  double ortho = 0.0;
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = 0; q < dim; ++q) ortho = std::max(ortho, std::abs(gram[p * dim + q] - (p == q ? 1.0 : 0.0)));

  Rng rng = make_rng(73);
  std::normal_distribution<double> normal;
  const auto spec = matern_spectrum(2, 2.0, 1.0, 10);
  const auto truth = generate_truth({2.0, 10, 74, true});
  const QuadratureGrid fine(22);
  double parseval = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    HarmonicCoefficients obs(2, 10);
    for (double& a : obs.values()) a = normal(rng);
    const auto model = posterior(obs, spec, 0.5, 100, trial % 11);
    const double r = rmse(model, truth, fine);
    parseval = std::max(parseval, std::abs(r * r - squared_distance(model.means, truth)));
  }
  return {addition <= 1e-9 && ortho <= 1e-10 && parseval <= 1e-10,
          "addition=" + num(addition) + " gram=" + num(ortho) + " parseval=" + num(parseval)};
}

Outcome prior_law() {
  const auto spec = matern_spectrum(2, 2.0, 1.0, 30);
  std::vector<std::vector<double>> modes(3);
  const SpherePoint x(0.0, 0.0, 1.0);
  const SpherePoint y(std::sqrt(0.75), 0.0, 0.5);
  const auto bx = evaluate_basis(30, x);
  const auto by = evaluate_basis(30, y);
  double cov = 0.0;
  const int draws = 20000;
  for (int k = 0; k < draws; ++k) {
    const auto draw = sample_prior(spec, 810000 + static_cast<std::uint64_t>(k)).coeffs;
    if (k < 10000) {
      modes[0].push_back(draw.at(1, 1));
      modes[1].push_back(draw.at(2, 0));
      modes[2].push_back(draw.at(4, 7));
    }
    const auto c = draw.values();
    double fx = 0.0;
    double fy = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      fx += c[i] * bx[i];
      fy += c[i] * by[i];
    }
    cov += fx * fy;
  }
  const int levels[] = {1, 2, 4};
  double worst_var = 0.0;
  for (int i = 0; i < 3; ++i)
    worst_var = std::max(worst_var, std::abs(oracle::sample_variance(modes[i]) / spec[levels[i]] - 1.0));
  const double kernel = covariance_kernel(spec, 0.5);
  const double cov_err = std::abs(cov / draws / kernel - 1.0);
  return {worst_var <= 0.05 && cov_err <= 0.05,
          "max variance rel err=" + num(worst_var) + " covariance rel err=" + num(cov_err)};
}

Outcome determinism() {
  ExperimentConfig cfg;
  cfg.repetitions = 10;
  const auto a = run_contraction_study(cfg);
  const auto b = run_contraction_study(cfg);
  const std::vector<double> alphas{1.0, 3.0};
  const auto m1 = run_miscalibration_study(cfg, alphas);
  const auto m2 = run_miscalibration_study(cfg, alphas);
  bool same = report_csv(a) == report_csv(b) && to_json(a).dump() == to_json(b).dump();
  for (std::size_t i = 0; i < m1.size(); ++i)
    same = same && report_csv(m1[i]) == report_csv(m2[i]) && to_json(m1[i]).dump() == to_json(m2[i]).dump();
  // The thread count is echoed in the JSON config, so only rows are compared here.
  cfg.threads = 3;
  const bool threads_agree = report_csv(run_contraction_study(cfg)) == report_csv(a);
  return {same && threads_agree, std::string(same ? "CSV and JSON byte-identical" : "outputs differ") +
                                     (threads_agree ? ", CSV independent of thread count" : ", thread count changes CSV")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 truncation schedule", truncation_schedule},
      {"2 reference slope replay", reference_slope_replay},
      {"3 contraction reproduction", contraction_reproduction},
      {"4 miscalibration ordering", miscalibration_ordering},
      {"5 variational equivalence", variational_equivalence},
      {"6 risk decomposition oracle", risk_decomposition_oracle},
      {"7 harmonic analysis exactness", harmonic_exactness},
      {"8 prior law checks", prior_law},
      {"9 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%s] %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
