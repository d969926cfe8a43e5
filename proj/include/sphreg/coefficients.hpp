#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sphreg {

/// Real coefficients a_{l,m} over the harmonic index set of S^d,
/// 0 <= l <= L, 0 <= m < M_{d,l}, stored degree-major in one flat buffer.
///
/// On S^2 the within-level order is (zonal, cos m=1..l, sin m=1..l).
class HarmonicCoefficients {
 public:
  HarmonicCoefficients() : HarmonicCoefficients(2, 0) {}
  /// All-zero coefficients up to degree `max_degree`.
  HarmonicCoefficients(int d, int max_degree);

  [[nodiscard]] int dimension() const noexcept { return d_; }
  [[nodiscard]] int max_degree() const noexcept { return static_cast<int>(offsets_.size()) - 2; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::size_t level_size(int l) const;
  [[nodiscard]] std::size_t level_offset(int l) const;

  [[nodiscard]] std::span<double> level(int l);
  [[nodiscard]] std::span<const double> level(int l) const;
  [[nodiscard]] double& at(int l, std::size_t m);
  [[nodiscard]] double at(int l, std::size_t m) const;

  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// Copy truncated or zero-padded to `max_degree`.
  [[nodiscard]] HarmonicCoefficients resized(int max_degree) const;
  [[nodiscard]] double squared_norm() const noexcept;

  HarmonicCoefficients& operator+=(const HarmonicCoefficients& other);
  HarmonicCoefficients& operator-=(const HarmonicCoefficients& other);
  HarmonicCoefficients& operator*=(double s) noexcept;

  friend bool operator==(const HarmonicCoefficients&, const HarmonicCoefficients&) = default;

 private:
  int d_;
  std::vector<std::size_t> offsets_;  // size L+2
  std::vector<double> values_;
};

[[nodiscard]] HarmonicCoefficients operator+(HarmonicCoefficients a, const HarmonicCoefficients& b);
[[nodiscard]] HarmonicCoefficients operator-(HarmonicCoefficients a, const HarmonicCoefficients& b);
[[nodiscard]] HarmonicCoefficients operator*(double s, HarmonicCoefficients a);

/// Squared l2 distance over the union of both index sets (missing entries are 0).
[[nodiscard]] double squared_distance(const HarmonicCoefficients& a, const HarmonicCoefficients& b);

}  // namespace sphreg
