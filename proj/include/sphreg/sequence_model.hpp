#pragma once

#include <cstdint>
#include <vector>

#include "sphreg/coefficients.hpp"
#include "sphreg/spectra.hpp"

namespace sphreg {

/// Conjugate posterior of a truncated Gaussian prior in the harmonic
/// sequence model. Per retained mode the law is N(mean, level_variance);
/// every mode above the truncation degree is zero.
struct PosteriorModel {
  HarmonicCoefficients means;           // zero above truncation
  std::vector<double> level_variances;  // v_l for l <= truncation
  int truncation;                       // L_n
  std::size_t n;
  double noise_var;                     // sigma^2
  PowerSpectrum spectrum;

  /// w_l = n C_l / (n C_l + sigma^2).
  [[nodiscard]] double shrinkage_weight(int l) const;
};

/// Exact expected squared L^2 error of a posterior draw, split into its
/// independent parts. Cross terms vanish because noise and posterior draw
/// are independent and centered, so the four parts add up exactly.
struct RiskDecomposition {
  double shrinkage_bias;       // sum_{l<=L_n} (sigma^2/(nC_l+sigma^2))^2 a0^2
  double stochastic_variance;  // sum_{l<=L_n} M_l w_l^2 sigma^2/n
  double posterior_spread;     // sum_{l<=L_n} M_l v_l
  double truncation_tail;      // sum_{l>L_n} a0^2
  double total;
};

/// Shrinkage weight n C / (n C + sigma^2) as a standalone formula.
[[nodiscard]] double shrinkage_weight(double prior_var, double noise_var, std::size_t n);

/// Posterior variance C sigma^2 / (n C + sigma^2).
[[nodiscard]] double posterior_variance(double prior_var, double noise_var, std::size_t n);

/// a_hat = a0 + (sigma / sqrt n) xi with xi i.i.d. N(0, 1).
[[nodiscard]] HarmonicCoefficients simulate_sequence_observations(const HarmonicCoefficients& truth,
                                                                  double sigma, std::size_t n,
                                                                  std::uint64_t seed);

/// floor(c n^{1/(2 alpha + d)}). Accepts alpha >= d/2; the boundary is
/// allowed because truncated priors stay proper there.
[[nodiscard]] int truncation_level(std::size_t n, double alpha, int d, double c);

[[nodiscard]] PosteriorModel posterior(const HarmonicCoefficients& observed, const PowerSpectrum& spec,
                                       double sigma, std::size_t n, int truncation);

[[nodiscard]] HarmonicCoefficients posterior_draw(const PosteriorModel& model, std::uint64_t seed);

[[nodiscard]] RiskDecomposition expected_posterior_risk(const HarmonicCoefficients& truth,
                                                        const PowerSpectrum& spec, double sigma,
                                                        std::size_t n, int truncation);

/// Exponent of the contraction rate, -min(beta, alpha)/(2 alpha + d).
/// For beta > alpha this is the prior-limited (saturated) rate.
[[nodiscard]] double theoretical_rate(double alpha, double beta, int d);

/// Unsaturated exponent -beta/(2 alpha + d), valid as a rate only for beta <= alpha.
[[nodiscard]] double nominal_rate(double alpha, double beta, int d);

}  // namespace sphreg
