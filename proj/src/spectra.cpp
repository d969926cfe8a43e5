#include "sphreg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sphreg/error.hpp"
#include "sphreg/harmonics.hpp"

namespace sphreg {

PowerSpectrum::PowerSpectrum(int d, std::vector<double> values)
    : d_(d), values_(std::move(values)), kind_(TableKind{}) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d));
  if (values_.empty()) throw InvalidArgument("power spectrum needs at least one level");
  for (double c : values_)
    if (!std::isfinite(c) || c < 0.0) throw InvalidArgument("power spectrum values must be finite and >= 0");
}

PowerSpectrum::PowerSpectrum(int d, std::vector<double> values, MaternKind kind)
    : d_(d), values_(std::move(values)), kind_(kind) {}

PowerSpectrum PowerSpectrum::matern(int d, double alpha, double kappa, int max_degree) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d));
  if (!(alpha > 0.5 * d)) {
    std::ostringstream msg;
    msg << "Matern smoothness must satisfy alpha > d/2 (got alpha=" << alpha << ", d=" << d << ")";
    throw InvalidArgument(msg.str());
  }
  return truncated_matern(d, alpha, kappa, max_degree);
}

PowerSpectrum PowerSpectrum::truncated_matern(int d, double alpha, double kappa, int max_degree) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d));
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("Matern smoothness alpha must be > 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("Matern scale kappa must be > 0");
  if (max_degree < 0) throw InvalidArgument("max degree must be >= 0");
  std::vector<double> values(static_cast<std::size_t>(max_degree) + 1);
  for (int l = 0; l <= max_degree; ++l) values[l] = std::pow(kappa * kappa + eigenvalue(d, l), -alpha);
  return PowerSpectrum(d, std::move(values), MaternKind{alpha, kappa});
}

PowerSpectrum matern_spectrum(int d, double alpha, double kappa, int max_degree) {
  return PowerSpectrum::matern(d, alpha, kappa, max_degree);
}

PowerSpectrum truncated_matern_spectrum(int d, double alpha, double kappa, int max_degree) {
  return PowerSpectrum::truncated_matern(d, alpha, kappa, max_degree);
}

DecayBounds check_polydecay(const PowerSpectrum& spec, double alpha) {
  DecayBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (int l = 0; l <= spec.max_degree(); ++l) {
    const double c = spec[l];
    if (c == 0.0)
      throw ConditionUnverifiable("polynomial decay is unverifiable: C_" + std::to_string(l) + " = 0");
    const double ratio = c * std::pow(1.0 + eigenvalue(spec.dimension(), l), alpha);
    b.c1 = std::min(b.c1, ratio);
    b.c2 = std::max(b.c2, ratio);
  }
  return b;
}

double sobolev_norm_sq(const HarmonicCoefficients& coeffs, double s, int d) {
  if (coeffs.dimension() != d) throw InvalidArgument("coefficient dimension does not match d");
  double acc = 0.0;
  for (int l = 0; l <= coeffs.max_degree(); ++l) {
    double level = 0.0;
    for (double a : coeffs.level(l)) level += a * a;
    if (level != 0.0) acc += std::pow(1.0 + eigenvalue(d, l), s) * level;
  }
  return acc;
}

std::vector<double> cumulative_trace(const PowerSpectrum& spec) {
  std::vector<double> out(spec.values().size());
  double acc = 0.0;
  for (int l = 0; l <= spec.max_degree(); ++l) {
    acc += static_cast<double>(multiplicity(spec.dimension(), l)) * spec[l];
    out[l] = acc;
  }
  return out;
}

double trace(const PowerSpectrum& spec) { return cumulative_trace(spec).back(); }

}  // namespace sphreg
