#pragma once

#include <cstdint>

#include "sphreg/coefficients.hpp"
#include "sphreg/spectra.hpp"

namespace sphreg {

/// One Karhunen-Loeve draw a_{l,m} ~ N(0, C_l), truncated at the spectrum's
/// stored degree.
struct PriorDraw {
  HarmonicCoefficients coeffs;
  PowerSpectrum spectrum;
  std::uint64_t seed;
};

[[nodiscard]] PriorDraw sample_prior(const PowerSpectrum& spec, std::uint64_t seed);

/// Isotropic covariance on S^2 as a function of t = <x, x'>:
/// sum_l C_l (2l+1) P_l(t). t is clamped to [-1, 1].
[[nodiscard]] double covariance_kernel(const PowerSpectrum& spec, double t);

/// Same kernel truncated at degree `max_degree` (<= spectrum degree).
[[nodiscard]] double covariance_kernel(const PowerSpectrum& spec, double t, int max_degree);

}  // namespace sphreg
