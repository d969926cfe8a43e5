#include "sphreg/coefficients.hpp"

#include <algorithm>
#include <string>

#include "sphreg/error.hpp"
#include "sphreg/harmonics.hpp"

namespace sphreg {

HarmonicCoefficients::HarmonicCoefficients(int d, int max_degree) : d_(d) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d));
  if (max_degree < 0) throw InvalidArgument("max degree must be >= 0");
  offsets_.resize(static_cast<std::size_t>(max_degree) + 2);
  offsets_[0] = 0;
  for (int l = 0; l <= max_degree; ++l)
    offsets_[l + 1] = offsets_[l] + static_cast<std::size_t>(multiplicity(d, l));
  values_.assign(offsets_.back(), 0.0);
}

std::size_t HarmonicCoefficients::level_size(int l) const {
  return offsets_.at(static_cast<std::size_t>(l) + 1) - offsets_.at(static_cast<std::size_t>(l));
}

std::size_t HarmonicCoefficients::level_offset(int l) const {
  return offsets_.at(static_cast<std::size_t>(l));
}

std::span<double> HarmonicCoefficients::level(int l) {
  return std::span<double>(values_).subspan(level_offset(l), level_size(l));
}

std::span<const double> HarmonicCoefficients::level(int l) const {
  return std::span<const double>(values_).subspan(level_offset(l), level_size(l));
}

double& HarmonicCoefficients::at(int l, std::size_t m) {
  if (m >= level_size(l)) throw InvalidArgument("harmonic order index out of range");
  return values_[level_offset(l) + m];
}

double HarmonicCoefficients::at(int l, std::size_t m) const {
  if (m >= level_size(l)) throw InvalidArgument("harmonic order index out of range");
  return values_[level_offset(l) + m];
}

HarmonicCoefficients HarmonicCoefficients::resized(int max_degree) const {
  HarmonicCoefficients out(d_, max_degree);
  const std::size_t n = std::min(out.values_.size(), values_.size());
  std::copy_n(values_.begin(), n, out.values_.begin());
  return out;
}

double HarmonicCoefficients::squared_norm() const noexcept {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return acc;
}

HarmonicCoefficients& HarmonicCoefficients::operator+=(const HarmonicCoefficients& other) {
  if (other.d_ != d_ || other.values_.size() != values_.size())
    throw InvalidArgument("coefficient sets have different shapes");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

HarmonicCoefficients& HarmonicCoefficients::operator-=(const HarmonicCoefficients& other) {
  if (other.d_ != d_ || other.values_.size() != values_.size())
    throw InvalidArgument("coefficient sets have different shapes");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

HarmonicCoefficients& HarmonicCoefficients::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

HarmonicCoefficients operator+(HarmonicCoefficients a, const HarmonicCoefficients& b) { return a += b; }
HarmonicCoefficients operator-(HarmonicCoefficients a, const HarmonicCoefficients& b) { return a -= b; }
HarmonicCoefficients operator*(double s, HarmonicCoefficients a) { return a *= s; }

double squared_distance(const HarmonicCoefficients& a, const HarmonicCoefficients& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("coefficient sets have different dimensions");
  const auto va = a.values();
  const auto vb = b.values();
  const std::size_t common = std::min(va.size(), vb.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < common; ++i) acc += (va[i] - vb[i]) * (va[i] - vb[i]);
  for (std::size_t i = common; i < va.size(); ++i) acc += va[i] * va[i];
  for (std::size_t i = common; i < vb.size(); ++i) acc += vb[i] * vb[i];
  return acc;
}

}  // namespace sphreg
