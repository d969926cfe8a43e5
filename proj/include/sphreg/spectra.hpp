#pragma once

#include <variant>
#include <vector>

#include "sphreg/coefficients.hpp"

namespace sphreg {

struct MaternKind {
  double alpha;
  double kappa;
  friend bool operator==(const MaternKind&, const MaternKind&) = default;
};

struct TableKind {
  friend bool operator==(const TableKind&, const TableKind&) = default;
};

/// Angular power spectrum C_0..C_L of an isotropic field on S^d.
///
/// Only finitely many levels are stored; anything beyond max_degree() is
/// treated as absent by every consumer (inference is truncated anyway).
class PowerSpectrum {
 public:
  /// Tabulated spectrum; all values must be finite and >= 0.
  PowerSpectrum(int d, std::vector<double> values);

  [[nodiscard]] static PowerSpectrum matern(int d, double alpha, double kappa, int max_degree);
  [[nodiscard]] static PowerSpectrum truncated_matern(int d, double alpha, double kappa, int max_degree);

  [[nodiscard]] int dimension() const noexcept { return d_; }
  [[nodiscard]] int max_degree() const noexcept { return static_cast<int>(values_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] double operator[](int l) const { return values_.at(static_cast<std::size_t>(l)); }
  [[nodiscard]] const std::variant<MaternKind, TableKind>& kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_matern() const noexcept { return std::holds_alternative<MaternKind>(kind_); }

  friend bool operator==(const PowerSpectrum&, const PowerSpectrum&) = default;

 private:
  PowerSpectrum(int d, std::vector<double> values, MaternKind kind);

  int d_;
  std::vector<double> values_;
  std::variant<MaternKind, TableKind> kind_;
};

/// C_l = (kappa^2 + lambda_l)^(-alpha) for l = 0..L. Requires alpha > d/2
/// (otherwise the prior is not supported on L^2) and kappa > 0.
[[nodiscard]] PowerSpectrum matern_spectrum(int d, double alpha, double kappa, int max_degree);

/// Matern levels for a prior that is truncated at `max_degree` from the
/// start. A finite expansion is trace class for any alpha > 0, so only
/// alpha > 0 is required; this is what the posterior pipeline uses, and it
/// admits the boundary case alpha = d/2 of the miscalibration study.
[[nodiscard]] PowerSpectrum truncated_matern_spectrum(int d, double alpha, double kappa, int max_degree);

struct DecayBounds {
  double c1;
  double c2;
};

/// Tightest c1 <= C_l (1 + lambda_l)^alpha <= c2 over the stored levels.
/// This is a finite-level check; the asymptotic statement is not decidable
/// from a table. Throws ConditionUnverifiable when some C_l == 0.
[[nodiscard]] DecayBounds check_polydecay(const PowerSpectrum& spec, double alpha);

/// sum_l (1 + lambda_l)^s sum_m a_{l,m}^2.
[[nodiscard]] double sobolev_norm_sq(const HarmonicCoefficients& coeffs, double s, int d);

/// sum_l M_{d,l} C_l over stored levels.
[[nodiscard]] double trace(const PowerSpectrum& spec);

/// Cumulative partial traces; element l is sum_{k<=l} M_{d,k} C_k.
[[nodiscard]] std::vector<double> cumulative_trace(const PowerSpectrum& spec);

}  // namespace sphreg
