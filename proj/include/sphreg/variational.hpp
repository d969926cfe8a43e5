#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "sphreg/coefficients.hpp"
#include "sphreg/regression.hpp"
#include "sphreg/spectra.hpp"

namespace sphreg {

/// Penalized least-squares functional on the truncated harmonic space:
/// data term + sum_{l<=L_n,m} penalty_l a_{l,m}^2, with penalty_l = sigma^2/(n C_l).
/// A level with C_l = 0 has infinite penalty and is pinned to zero.
struct PenalizedObjective {
  std::vector<double> penalty_weights;  // per level; +inf when pinned
  int truncation;

  [[nodiscard]] bool pinned(int l) const { return std::isinf(penalty_weights.at(static_cast<std::size_t>(l))); }
  [[nodiscard]] double penalty(const HarmonicCoefficients& coeffs) const;
};

[[nodiscard]] PenalizedObjective make_objective(const PowerSpectrum& spec, double sigma, std::size_t n,
                                                int truncation);

/// Sequence-coordinate objective sum (a - a_hat)^2 + penalty(a), i.e. the
/// empirical functional once the design is orthonormal, minus a constant.
[[nodiscard]] double sequence_objective(const PenalizedObjective& objective, const HarmonicCoefficients& candidate,
                                        const HarmonicCoefficients& observed);

/// Literal empirical functional (1/n) sum_i (y_i - f(x_i))^2 + penalty(a).
[[nodiscard]] double empirical_objective(const PenalizedObjective& objective, const HarmonicCoefficients& candidate,
                                         const Dataset& data);

/// Closed-form minimizer of the sequence objective: a = n C/(n C + sigma^2) a_hat.
[[nodiscard]] HarmonicCoefficients minimize_sequence_objective(const HarmonicCoefficients& observed,
                                                               const PowerSpectrum& spec, double sigma,
                                                               std::size_t n, int truncation);

/// sum_l (kappa^2 + lambda_l)^alpha sum_m a_{l,m}^2.
[[nodiscard]] double matern_penalty(const HarmonicCoefficients& coeffs, double alpha, double kappa, int d);

/// sum_l sum_m a_{l,m}^2 / C_l over levels with C_l > 0 (RKHS norm squared).
[[nodiscard]] double spectral_penalty(const HarmonicCoefficients& coeffs, const PowerSpectrum& spec);

/// Normal equations (G^T G / n + (sigma^2/n) D) a = G^T y / n of the
/// empirical functional, restricted to the unpinned modes.
struct RidgeSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<std::size_t> active_modes;  // flat mode index of each row
  int truncation;
};

[[nodiscard]] RidgeSystem assemble_ridge_system(const Dataset& data, const PowerSpectrum& spec, int truncation);

/// Exact minimizer of the empirical functional on the finite design.
[[nodiscard]] HarmonicCoefficients empirical_ridge(const Dataset& data, const PowerSpectrum& spec, int truncation);

/// Kernel ridge regression with the rank-truncated kernel
/// K(x, x') = sum_{l<=L_n} C_l (2l+1) P_l(<x, x'>) and ridge sigma^2 on the
/// Gram diagonal (n lambda_n with lambda_n = sigma^2/n).
class KrrFit {
 public:
  KrrFit(std::vector<SpherePoint> points, Eigen::VectorXd dual_weights, PowerSpectrum spectrum, int truncation);

  [[nodiscard]] double predict(const SpherePoint& x) const;
  [[nodiscard]] std::vector<double> predict(const std::vector<SpherePoint>& xs) const;
  [[nodiscard]] const Eigen::VectorXd& dual_weights() const noexcept { return dual_weights_; }
  /// Harmonic coefficients of the fitted function, C_l sum_i alpha_i Y_{l,m}(x_i).
  [[nodiscard]] HarmonicCoefficients coefficients() const;

 private:
  std::vector<SpherePoint> points_;
  Eigen::VectorXd dual_weights_;
  PowerSpectrum spectrum_;
  int truncation_;
};

[[nodiscard]] KrrFit krr_dual(const Dataset& data, const PowerSpectrum& spec, int truncation);

}  // namespace sphreg
