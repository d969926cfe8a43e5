#include "sphreg/regression.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sphreg/error.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/random.hpp"

namespace sphreg {

Dataset::Dataset(std::vector<SpherePoint> pts, std::vector<double> ys, double var)
    : points(std::move(pts)), responses(std::move(ys)), noise_var(var) {
  if (points.size() != responses.size())
    throw InvalidArgument("dataset has " + std::to_string(points.size()) + " points but " +
                          std::to_string(responses.size()) + " responses");
  if (points.empty()) throw InvalidArgument("dataset must contain at least one observation");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) throw InvalidArgument("noise variance must be > 0");
  for (const auto& x : points)
    if (x.dimension() != 2) throw UnsupportedDimension(x.dimension());
}

HarmonicCoefficients generate_truth(const TruthSpec& spec) {
  if (spec.max_degree < 0) throw InvalidArgument("truth degree must be >= 0");
  if (!(spec.beta > 0.0)) throw InvalidArgument("truth smoothness beta must be > 0");
  Rng rng = make_rng(spec.seed);
  std::bernoulli_distribution coin(0.5);
  HarmonicCoefficients a(2, spec.max_degree);
  for (int l = 0; l <= spec.max_degree; ++l) {
    const double magnitude = std::pow(1.0 + eigenvalue(2, l), -0.5 * spec.beta);
    for (double& v : a.level(l)) v = coin(rng) ? magnitude : -magnitude;
  }
  if (spec.normalized) a *= 1.0 / std::sqrt(a.squared_norm());
  return a;
}

Dataset generate_dataset(const HarmonicCoefficients& truth, std::size_t n, double sigma, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  if (!(sigma > 0.0)) throw InvalidArgument("noise level sigma must be > 0");
  Rng rng = make_rng(seed);
  std::vector<SpherePoint> points = sample_uniform(n, 2, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> basis(basis_size(truth.max_degree()));
  const auto a = truth.values();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    evaluate_basis_into(truth.max_degree(), points[i], basis);
    double f = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) f += a[k] * basis[k];
    y[i] = f + sigma * normal(rng);
  }
  return Dataset(std::move(points), std::move(y), sigma * sigma);
}

HarmonicCoefficients empirical_coefficients(const Dataset& data, int max_degree) {
  HarmonicCoefficients out(2, max_degree);
  auto acc = out.values();
  std::vector<double> basis(basis_size(max_degree));
  for (std::size_t i = 0; i < data.size(); ++i) {
    evaluate_basis_into(max_degree, data.points[i], basis);
    const double y = data.responses[i];
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += y * basis[k];
  }
  out *= 1.0 / static_cast<double>(data.size());
  return out;
}

PosteriorModel fit(const Dataset& data, const PowerSpectrum& spec, int truncation) {
  if (spec.dimension() != 2) throw UnsupportedDimension(spec.dimension());
  if (truncation > spec.max_degree())
    throw InvalidArgument("truncation level " + std::to_string(truncation) + " exceeds spectrum degree " +
                          std::to_string(spec.max_degree()));
  const HarmonicCoefficients observed = empirical_coefficients(data, truncation);
  return posterior(observed, spec, std::sqrt(data.noise_var), data.size(), truncation);
}

double grid_l2_distance(const HarmonicCoefficients& a, const HarmonicCoefficients& b, const QuadratureGrid& grid) {
  const int degree = std::max(a.max_degree(), b.max_degree());
  if (grid.max_exact_degree() < degree)
    throw InvalidArgument("insufficient grid degree: grid exact to " + std::to_string(grid.max_exact_degree()) +
                          ", need " + std::to_string(degree));
  const HarmonicCoefficients diff = a.resized(degree) - b.resized(degree);
  const auto c = diff.values();
  std::vector<double> basis(basis_size(degree));
  std::vector<double> sq(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    evaluate_basis_into(degree, grid.nodes()[i], basis);
    double f = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) f += c[k] * basis[k];
    sq[i] = f * f;
  }
  return std::sqrt(std::max(0.0, grid.integrate(sq)));
}

double rmse(const PosteriorModel& model, const HarmonicCoefficients& truth, const QuadratureGrid& grid) {
  return grid_l2_distance(model.means, truth, grid);
}

double coefficient_rmse(const HarmonicCoefficients& estimate, const HarmonicCoefficients& truth) {
  return std::sqrt(squared_distance(estimate, truth));
}

}  // namespace sphreg
