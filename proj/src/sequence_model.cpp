#include "sphreg/sequence_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sphreg/error.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/random.hpp"

namespace sphreg {

namespace {

void check_common(const PowerSpectrum& spec, double sigma, std::size_t n, int truncation, int available) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("noise level sigma must be > 0");
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  if (truncation < 0) throw InvalidArgument("truncation level must be >= 0");
  if (truncation > available || truncation > spec.max_degree()) {
    std::ostringstream msg;
    msg << "truncation level " << truncation << " exceeds available degree "
        << std::min(available, spec.max_degree());
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

double shrinkage_weight(double prior_var, double noise_var, std::size_t n) {
  const double nc = static_cast<double>(n) * prior_var;
  return nc / (nc + noise_var);
}

double posterior_variance(double prior_var, double noise_var, std::size_t n) {
  return prior_var * noise_var / (static_cast<double>(n) * prior_var + noise_var);
}

double PosteriorModel::shrinkage_weight(int l) const {
  if (l < 0 || l > truncation) return 0.0;
  return sphreg::shrinkage_weight(spectrum[l], noise_var, n);
}

HarmonicCoefficients simulate_sequence_observations(const HarmonicCoefficients& truth, double sigma,
                                                    std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  if (!(sigma >= 0.0)) throw InvalidArgument("noise level sigma must be >= 0");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = sigma / std::sqrt(static_cast<double>(n));
  HarmonicCoefficients out = truth;
  for (double& a : out.values()) a += scale * normal(rng);
  return out;
}

int truncation_level(std::size_t n, double alpha, int d, double c) {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  if (!(c > 0.0)) throw InvalidArgument("truncation constant c must be > 0");
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d));
  if (!(alpha >= 0.5 * d)) throw InvalidArgument("alpha must be at least d/2");
  const double level = c * std::pow(static_cast<double>(n), 1.0 / (2.0 * alpha + d));
  return std::max(0, static_cast<int>(std::floor(level)));
}

PosteriorModel posterior(const HarmonicCoefficients& observed, const PowerSpectrum& spec, double sigma,
                         std::size_t n, int truncation) {
  check_common(spec, sigma, n, truncation, observed.max_degree());
  if (observed.dimension() != spec.dimension())
    throw InvalidArgument("observation and spectrum dimensions differ");
  const double noise_var = sigma * sigma;
  PosteriorModel model{HarmonicCoefficients(observed.dimension(), truncation),
                       std::vector<double>(static_cast<std::size_t>(truncation) + 1),
                       truncation,
                       n,
                       noise_var,
                       spec};
  for (int l = 0; l <= truncation; ++l) {
    const double w = shrinkage_weight(spec[l], noise_var, n);
    model.level_variances[l] = posterior_variance(spec[l], noise_var, n);
    const auto src = observed.level(l);
    auto dst = model.means.level(l);
    for (std::size_t m = 0; m < src.size(); ++m) dst[m] = w * src[m];
  }
  return model;
}

HarmonicCoefficients posterior_draw(const PosteriorModel& model, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  HarmonicCoefficients draw = model.means;
  for (int l = 0; l <= model.truncation; ++l) {
    const double sd = std::sqrt(model.level_variances[l]);
    for (double& a : draw.level(l)) {
      const double z = normal(rng);
      if (sd > 0.0) a += sd * z;
    }
  }
  return draw;
}

RiskDecomposition expected_posterior_risk(const HarmonicCoefficients& truth, const PowerSpectrum& spec,
                                          double sigma, std::size_t n, int truncation) {
  check_common(spec, sigma, n, truncation, spec.max_degree());
  if (truth.dimension() != spec.dimension()) throw InvalidArgument("truth and spectrum dimensions differ");
  const double noise_var = sigma * sigma;
  const int d = spec.dimension();
  RiskDecomposition r{0.0, 0.0, 0.0, 0.0, 0.0};
  for (int l = 0; l <= truncation; ++l) {
    const double c = spec[l];
    const double w = shrinkage_weight(c, noise_var, n);
    const double keep = noise_var / (static_cast<double>(n) * c + noise_var);
    const auto mult = static_cast<double>(multiplicity(d, l));
    if (l <= truth.max_degree()) {
      double level = 0.0;
      for (double a : truth.level(l)) level += a * a;
      r.shrinkage_bias += keep * keep * level;
    }
    r.stochastic_variance += mult * w * w * noise_var / static_cast<double>(n);
    r.posterior_spread += mult * posterior_variance(c, noise_var, n);
  }
  for (int l = truncation + 1; l <= truth.max_degree(); ++l)
    for (double a : truth.level(l)) r.truncation_tail += a * a;
  r.total = r.shrinkage_bias + r.stochastic_variance + r.posterior_spread + r.truncation_tail;
  return r;
}

double theoretical_rate(double alpha, double beta, int d) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d));
  if (!(alpha >= 0.5 * d)) throw InvalidArgument("alpha must be at least d/2");
  if (!(beta > 0.0)) throw InvalidArgument("beta must be > 0");
  return -std::min(beta, alpha) / (2.0 * alpha + d);
}

double nominal_rate(double alpha, double beta, int d) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d));
  if (!(alpha >= 0.5 * d)) throw InvalidArgument("alpha must be at least d/2");
  if (!(beta > 0.0)) throw InvalidArgument("beta must be > 0");
  return -beta / (2.0 * alpha + d);
}

}  // namespace sphreg
