#include "sphreg/prior_field.hpp"

#include <cmath>
#include <random>

#include "sphreg/error.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/random.hpp"

namespace sphreg {

PriorDraw sample_prior(const PowerSpectrum& spec, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  HarmonicCoefficients coeffs(spec.dimension(), spec.max_degree());
  for (int l = 0; l <= spec.max_degree(); ++l) {
    const double sd = std::sqrt(spec[l]);
    for (double& a : coeffs.level(l)) a = sd * normal(rng);
  }
  return PriorDraw{std::move(coeffs), spec, seed};
}

double covariance_kernel(const PowerSpectrum& spec, double t, int max_degree) {
  if (spec.dimension() != 2) throw UnsupportedDimension(spec.dimension());
  if (max_degree < 0 || max_degree > spec.max_degree())
    throw InvalidArgument("kernel truncation degree exceeds the spectrum's stored degree");
  const std::vector<double> p = legendre_all(max_degree, t);
  double acc = 0.0;
  for (int l = 0; l <= max_degree; ++l) acc += spec[l] * (2.0 * l + 1.0) * p[l];
  return acc;
}

double covariance_kernel(const PowerSpectrum& spec, double t) {
  return covariance_kernel(spec, t, spec.max_degree());
}

}  // namespace sphreg
