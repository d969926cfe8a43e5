#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sphreg/coefficients.hpp"
#include "sphreg/sphere_geometry.hpp"

namespace sphreg {

/// Dimension of the degree-l eigenspace of the Laplace-Beltrami operator
/// on S^d (degree-l harmonic polynomials in d+1 variables).
[[nodiscard]] std::uint64_t multiplicity(int d, int l);

/// Laplace-Beltrami eigenvalue l(l+d-1); exact in double for l < 2^26.
[[nodiscard]] double eigenvalue(int d, int l);

struct LevelInfo {
  int degree;
  double eigenvalue;
  std::uint64_t multiplicity;
  int dimension;
};

[[nodiscard]] LevelInfo level_info(int d, int l);

/// Legendre polynomial P_l(t) by the three-term recurrence; t is clamped to [-1, 1].
[[nodiscard]] double legendre(int l, double t);

/// P_0(t) .. P_L(t).
[[nodiscard]] std::vector<double> legendre_all(int max_degree, double t);

/// Number of real harmonics on S^2 up to degree L, i.e. (L+1)^2.
[[nodiscard]] constexpr std::size_t basis_size(int max_degree) noexcept {
  const auto n = static_cast<std::size_t>(max_degree) + 1;
  return n * n;
}

/// Values Y_{l,m}(x) for 0 <= l <= L on S^2, degree-major.
///
/// The basis is orthonormal for the uniform probability measure, so
/// Y_{0,0} = 1 and sum_m Y_{l,m}(x)^2 = 2l+1.
class BasisEvaluation {
 public:
  BasisEvaluation(int max_degree, std::vector<double> values);

  [[nodiscard]] int max_degree() const noexcept { return max_degree_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<const double> level(int l) const;
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

 private:
  int max_degree_;
  std::vector<double> values_;
};

/// Real spherical harmonics on S^2 up to degree L at x. Throws
/// UnsupportedDimension for any other sphere.
[[nodiscard]] BasisEvaluation evaluate_basis(int max_degree, const SpherePoint& x);

/// Writes the (L+1)^2 basis values at x into `out` without allocating.
void evaluate_basis_into(int max_degree, const SpherePoint& x, std::span<double> out);

/// sum_{l,m} a_{l,m} Y_{l,m}(x) on S^2.
[[nodiscard]] double synthesize(const HarmonicCoefficients& coeffs, const SpherePoint& x);

}  // namespace sphreg
