#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "sphreg/random.hpp"

namespace sphreg {

/// A unit vector on S^d, stored in ambient (d+1)-space.
///
/// Every constructor normalizes its input, so |x| = 1 holds to rounding.
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<double> coords);
  SpherePoint(double x, double y, double z);

  [[nodiscard]] int dimension() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
  [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
  [[nodiscard]] SpherePoint antipode() const;

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  std::vector<double> coords_;
};

/// Inner product <x, x'> clamped to [-1, 1]. Throws on dimension mismatch.
[[nodiscard]] double clamped_inner(const SpherePoint& x, const SpherePoint& y);

/// Geodesic (great-circle) distance in radians, in [0, pi].
[[nodiscard]] double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

/// n i.i.d. uniform points on S^d via normalized standard Gaussian vectors.
[[nodiscard]] std::vector<SpherePoint> sample_uniform(std::size_t n, int d, std::uint64_t seed);
[[nodiscard]] std::vector<SpherePoint> sample_uniform(std::size_t n, int d, Rng& rng);

/// Haar-distributed rotation of R^3.
[[nodiscard]] Eigen::Matrix3d random_rotation(Rng& rng);
[[nodiscard]] SpherePoint rotate(const Eigen::Matrix3d& rotation, const SpherePoint& x);

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
[[nodiscard]] GaussLegendreRule gauss_legendre(std::size_t n);

/// Product quadrature on S^2 for the uniform probability measure.
///
/// Gauss-Legendre in cos(colatitude) with L+1 nodes, crossed with 2L+1
/// equispaced longitudes. Exact for products Y_{l,m} Y_{l',m'} with
/// l, l' <= max_exact_degree.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int max_exact_degree);

  [[nodiscard]] int max_exact_degree() const noexcept { return max_exact_degree_; }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] const std::vector<SpherePoint>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

  [[nodiscard]] double integrate(const std::function<double(const SpherePoint&)>& f) const;
  /// Weighted sum of precomputed node values.
  [[nodiscard]] double integrate(std::span<const double> values) const;

 private:
  int max_exact_degree_;
  std::vector<SpherePoint> nodes_;
  std::vector<double> weights_;
};

[[nodiscard]] QuadratureGrid quadrature_grid(int max_exact_degree);

}  // namespace sphreg
