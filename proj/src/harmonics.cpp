#include "sphreg/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphreg/error.hpp"

namespace sphreg {

namespace {

// Binomial coefficient with exact integer arithmetic; 0 when k > n or n < 0.
std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw InvalidArgument("harmonic multiplicity overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

void check_level_args(int d, int l) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d) + " (need d >= 1)");
  if (l < 0) throw InvalidArgument("degree must be >= 0, got " + std::to_string(l));
}

}  // namespace

std::uint64_t multiplicity(int d, int l) {
  check_level_args(d, l);
  // dim(homogeneous degree l) - dim(homogeneous degree l-2) in d+1 variables.
  return binomial(l + d, d) - binomial(static_cast<std::int64_t>(l) + d - 2, d);
}

double eigenvalue(int d, int l) {
  check_level_args(d, l);
  return static_cast<double>(static_cast<std::int64_t>(l) * (static_cast<std::int64_t>(l) + d - 1));
}

LevelInfo level_info(int d, int l) { return {l, eigenvalue(d, l), multiplicity(d, l), d}; }

double legendre(int l, double t) {
  if (l < 0) throw InvalidArgument("degree must be >= 0");
  t = std::clamp(t, -1.0, 1.0);
  if (l == 0) return 1.0;
  double p0 = 1.0;
  double p1 = t;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> legendre_all(int max_degree, double t) {
  if (max_degree < 0) throw InvalidArgument("degree must be >= 0");
  t = std::clamp(t, -1.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(max_degree) + 1);
  p[0] = 1.0;
  if (max_degree >= 1) p[1] = t;
  for (int k = 2; k <= max_degree; ++k)
    p[k] = ((2.0 * k - 1.0) * t * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
  return p;
}

BasisEvaluation::BasisEvaluation(int max_degree, std::vector<double> values)
    : max_degree_(max_degree), values_(std::move(values)) {
  if (values_.size() != basis_size(max_degree))
    throw InvalidArgument("basis evaluation has wrong length");
}

std::span<const double> BasisEvaluation::level(int l) const {
  if (l < 0 || l > max_degree_) throw InvalidArgument("degree outside evaluated range");
  const auto off = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
  return std::span<const double>(values_).subspan(off, 2 * static_cast<std::size_t>(l) + 1);
}

void evaluate_basis_into(int max_degree, const SpherePoint& x, std::span<double> out) {
  if (x.dimension() != 2) throw UnsupportedDimension(x.dimension());
  if (max_degree < 0) throw InvalidArgument("degree must be >= 0");
  if (out.size() < basis_size(max_degree)) throw InvalidArgument("output buffer too small");

  const double t = std::clamp(x[2], -1.0, 1.0);
  const double s = std::hypot(x[0], x[1]);
  // cos(m phi), sin(m phi) from the planar unit vector (1, 0) at the poles.
  const double cphi = s > 0.0 ? x[0] / s : 1.0;
  const double sphi = s > 0.0 ? x[1] / s : 0.0;
  const auto L = static_cast<std::size_t>(max_degree);

  // Normalized associated Legendre functions with the sin^m(theta) factor
  // pulled out: Pbar_{l,m}(t) = q_{l,m}(t) * s^m. The recurrences are
  // linear in q, so s^m is applied once per entry and only underflows
  // where the true value does.
  double q_mm = 1.0;  // q_{m,m}, Condon-Shortley phase included
  double cos_m = 1.0;
  double sin_m = 0.0;
  double s_pow = 1.0;
  for (std::size_t m = 0; m <= L; ++m) {
    if (m > 0) {
      const double md = static_cast<double>(m);
      q_mm *= -std::sqrt((2.0 * md + 1.0) / (2.0 * md));
      const double c = cos_m * cphi - sin_m * sphi;
      sin_m = sin_m * cphi + cos_m * sphi;
      cos_m = c;
      s_pow *= s;
    }
    const double md = static_cast<double>(m);
    double q_prev2 = 0.0;
    double q_prev = q_mm;
    for (std::size_t l = m; l <= L; ++l) {
      double q;
      if (l == m) {
        q = q_mm;
      } else {
        const double ld = static_cast<double>(l);
        const double a = std::sqrt((4.0 * ld * ld - 1.0) / (ld * ld - md * md));
        const double b = std::sqrt(((ld - 1.0) * (ld - 1.0) - md * md) / (4.0 * (ld - 1.0) * (ld - 1.0) - 1.0));
        q = a * (t * q_prev - b * q_prev2);
        q_prev2 = q_prev;
        q_prev = q;
      }
      const double pbar = q * s_pow;  // sqrt((2l+1)(l-m)!/(l+m)!) P_l^m(t)
      const std::size_t base = l * l;
      if (m == 0) {
        out[base] = pbar;
      } else {
        out[base + m] = std::numbers::sqrt2 * pbar * cos_m;
        out[base + l + m] = std::numbers::sqrt2 * pbar * sin_m;
      }
    }
  }
}

BasisEvaluation evaluate_basis(int max_degree, const SpherePoint& x) {
  if (max_degree < 0) throw InvalidArgument("degree must be >= 0");
  std::vector<double> values(basis_size(max_degree));
  evaluate_basis_into(max_degree, x, values);
  return BasisEvaluation(max_degree, std::move(values));
}

double synthesize(const HarmonicCoefficients& coeffs, const SpherePoint& x) {
  if (coeffs.dimension() != 2 || x.dimension() != 2)
    throw UnsupportedDimension(coeffs.dimension() != 2 ? coeffs.dimension() : x.dimension());
  const BasisEvaluation basis = evaluate_basis(coeffs.max_degree(), x);
  const auto a = coeffs.values();
  const auto y = basis.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * y[i];
  return acc;
}

}  // namespace sphreg
