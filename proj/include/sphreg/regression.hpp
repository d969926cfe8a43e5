#pragma once

#include <cstdint>
#include <vector>

#include "sphreg/coefficients.hpp"
#include "sphreg/sequence_model.hpp"
#include "sphreg/spectra.hpp"
#include "sphreg/sphere_geometry.hpp"

namespace sphreg {

/// Observations y_i = f0(x_i) + eps_i on S^2 with known noise variance.
struct Dataset {
  std::vector<SpherePoint> points;
  std::vector<double> responses;
  double noise_var;

  Dataset(std::vector<SpherePoint> points, std::vector<double> responses, double noise_var);
  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

/// Finite harmonic expansion with |a_{0;l,m}| = (1 + lambda_l)^{-beta/2}
/// and Rademacher signs drawn from `seed`.
struct TruthSpec {
  double beta = 2.0;
  int max_degree = 10;
  std::uint64_t seed = 0;
  bool normalized = true;  // rescale to unit L^2 norm
};

[[nodiscard]] HarmonicCoefficients generate_truth(const TruthSpec& spec);

/// Uniform random design on S^2 with Gaussian noise of standard deviation sigma.
[[nodiscard]] Dataset generate_dataset(const HarmonicCoefficients& truth, std::size_t n, double sigma,
                                       std::uint64_t seed);

/// a_hat_{l,m} = (1/n) sum_i y_i Y_{l,m}(x_i) for l <= max_degree.
[[nodiscard]] HarmonicCoefficients empirical_coefficients(const Dataset& data, int max_degree);

/// Posterior under the sequence-model formula applied to the empirical
/// coefficients, with the dataset's n and sigma^2.
///
/// Under a finite random design the empirical coefficients carry extra
/// variance from f0 itself, so sigma^2/n understates their spread; the
/// formula is still the one used for the fit.
[[nodiscard]] PosteriorModel fit(const Dataset& data, const PowerSpectrum& spec, int truncation);

/// L^2 distance between the posterior mean and the truth, by quadrature on
/// `grid`. Throws InvalidArgument when the grid is not exact for the
/// degrees involved.
[[nodiscard]] double rmse(const PosteriorModel& model, const HarmonicCoefficients& truth,
                          const QuadratureGrid& grid);

/// Same distance through Parseval in coefficient space.
[[nodiscard]] double coefficient_rmse(const HarmonicCoefficients& estimate, const HarmonicCoefficients& truth);

/// Grid L^2 distance between two arbitrary coefficient sets.
[[nodiscard]] double grid_l2_distance(const HarmonicCoefficients& a, const HarmonicCoefficients& b,
                                      const QuadratureGrid& grid);

}  // namespace sphreg
