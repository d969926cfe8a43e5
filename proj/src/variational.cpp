#include "sphreg/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "sphreg/error.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/prior_field.hpp"

namespace sphreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_truncation(const PowerSpectrum& spec, int truncation) {
  if (truncation < 0 || truncation > spec.max_degree())
    throw InvalidArgument("truncation level " + std::to_string(truncation) + " outside spectrum degree range 0.." +
                          std::to_string(spec.max_degree()));
}

Eigen::MatrixXd design_matrix(const Dataset& data, int truncation) {
  const auto dim = static_cast<Eigen::Index>(basis_size(truncation));
  Eigen::MatrixXd g(static_cast<Eigen::Index>(data.size()), dim);
  std::vector<double> row(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < data.size(); ++i) {
    evaluate_basis_into(truncation, data.points[i], row);
    for (Eigen::Index k = 0; k < dim; ++k) g(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
  }
  return g;
}

}  // namespace

double PenalizedObjective::penalty(const HarmonicCoefficients& coeffs) const {
  double acc = 0.0;
  for (int l = 0; l <= coeffs.max_degree(); ++l) {
    double level = 0.0;
    for (double a : coeffs.level(l)) level += a * a;
    if (level == 0.0) continue;
    if (l > truncation) return kInf;  // outside the truncated space
    acc += pinned(l) ? kInf : penalty_weights[l] * level;
  }
  return acc;
}

PenalizedObjective make_objective(const PowerSpectrum& spec, double sigma, std::size_t n, int truncation) {
  check_truncation(spec, truncation);
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  if (!(sigma > 0.0)) throw InvalidArgument("noise level sigma must be > 0");
  PenalizedObjective obj{std::vector<double>(static_cast<std::size_t>(truncation) + 1), truncation};
  for (int l = 0; l <= truncation; ++l) {
    const double c = spec[l];
    const double w = sigma * sigma / (static_cast<double>(n) * c);
    obj.penalty_weights[l] = (c == 0.0 || !std::isfinite(w)) ? kInf : w;
  }
  return obj;
}

double sequence_objective(const PenalizedObjective& objective, const HarmonicCoefficients& candidate,
                          const HarmonicCoefficients& observed) {
  const int t = objective.truncation;
  return squared_distance(candidate.resized(t), observed.resized(t)) + objective.penalty(candidate);
}

double empirical_objective(const PenalizedObjective& objective, const HarmonicCoefficients& candidate,
                           const Dataset& data) {
  double acc = 0.0;
  std::vector<double> basis(basis_size(candidate.max_degree()));
  const auto a = candidate.values();
  for (std::size_t i = 0; i < data.size(); ++i) {
    evaluate_basis_into(candidate.max_degree(), data.points[i], basis);
    double f = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) f += a[k] * basis[k];
    const double r = data.responses[i] - f;
    acc += r * r;
  }
  return acc / static_cast<double>(data.size()) + objective.penalty(candidate);
}

HarmonicCoefficients minimize_sequence_objective(const HarmonicCoefficients& observed, const PowerSpectrum& spec,
                                                 double sigma, std::size_t n, int truncation) {
  // Per mode: d/da [(a - a_hat)^2 + (sigma^2/(n C)) a^2] = 0.
  return posterior(observed, spec, sigma, n, truncation).means;
}

double matern_penalty(const HarmonicCoefficients& coeffs, double alpha, double kappa, int d) {
  if (coeffs.dimension() != d) throw InvalidArgument("coefficient dimension does not match d");
  double acc = 0.0;
  for (int l = 0; l <= coeffs.max_degree(); ++l) {
    double level = 0.0;
    for (double a : coeffs.level(l)) level += a * a;
    if (level != 0.0) acc += std::pow(kappa * kappa + eigenvalue(d, l), alpha) * level;
  }
  return acc;
}

double spectral_penalty(const HarmonicCoefficients& coeffs, const PowerSpectrum& spec) {
  if (coeffs.dimension() != spec.dimension()) throw InvalidArgument("coefficient and spectrum dimensions differ");
  double acc = 0.0;
  for (int l = 0; l <= coeffs.max_degree(); ++l) {
    double level = 0.0;
    for (double a : coeffs.level(l)) level += a * a;
    if (level == 0.0) continue;
    if (l > spec.max_degree() || spec[l] == 0.0) return kInf;
    acc += level / spec[l];
  }
  return acc;
}

RidgeSystem assemble_ridge_system(const Dataset& data, const PowerSpectrum& spec, int truncation) {
  if (spec.dimension() != 2) throw UnsupportedDimension(spec.dimension());
  check_truncation(spec, truncation);
  const PenalizedObjective obj = make_objective(spec, std::sqrt(data.noise_var), data.size(), truncation);

  RidgeSystem sys;
  sys.truncation = truncation;
  for (int l = 0; l <= truncation; ++l) {
    if (obj.pinned(l)) continue;
    const auto off = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
    for (std::size_t m = 0; m < 2 * static_cast<std::size_t>(l) + 1; ++m) sys.active_modes.push_back(off + m);
  }
  const Eigen::MatrixXd g_full = design_matrix(data, truncation);
  const auto k = static_cast<Eigen::Index>(sys.active_modes.size());
  Eigen::MatrixXd g(g_full.rows(), k);
  for (Eigen::Index j = 0; j < k; ++j) g.col(j) = g_full.col(static_cast<Eigen::Index>(sys.active_modes[j]));

  const double inv_n = 1.0 / static_cast<double>(data.size());
  const Eigen::Map<const Eigen::VectorXd> y(data.responses.data(), static_cast<Eigen::Index>(data.size()));
  sys.matrix = inv_n * (g.transpose() * g);
  sys.rhs = inv_n * (g.transpose() * y);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto flat = sys.active_modes[j];
    const int l = static_cast<int>(std::sqrt(static_cast<double>(flat)));
    sys.matrix(j, j) += obj.penalty_weights[l];
  }
  return sys;
}

HarmonicCoefficients empirical_ridge(const Dataset& data, const PowerSpectrum& spec, int truncation) {
  const RidgeSystem sys = assemble_ridge_system(data, spec, truncation);
  HarmonicCoefficients out(2, truncation);
  if (sys.active_modes.empty()) return out;
  const Eigen::LLT<Eigen::MatrixXd> llt(sys.matrix);
  if (llt.info() != Eigen::Success) {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(sys.matrix);
    throw SingularSystem("ridge normal equations are not positive definite", ldlt.rcond());
  }
  if (const double rcond = llt.rcond(); !(rcond > std::numeric_limits<double>::epsilon()))
    throw SingularSystem("ridge normal equations are numerically singular", rcond);
  const Eigen::VectorXd sol = llt.solve(sys.rhs);
  auto v = out.values();
  for (std::size_t j = 0; j < sys.active_modes.size(); ++j) v[sys.active_modes[j]] = sol[static_cast<Eigen::Index>(j)];
  return out;
}

KrrFit::KrrFit(std::vector<SpherePoint> points, Eigen::VectorXd dual_weights, PowerSpectrum spectrum, int truncation)
    : points_(std::move(points)),
      dual_weights_(std::move(dual_weights)),
      spectrum_(std::move(spectrum)),
      truncation_(truncation) {}

double KrrFit::predict(const SpherePoint& x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    acc += dual_weights_[static_cast<Eigen::Index>(i)] *
           covariance_kernel(spectrum_, clamped_inner(x, points_[i]), truncation_);
  return acc;
}

std::vector<double> KrrFit::predict(const std::vector<SpherePoint>& xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(predict(x));
  return out;
}

HarmonicCoefficients KrrFit::coefficients() const {
  HarmonicCoefficients out(2, truncation_);
  auto v = out.values();
  std::vector<double> basis(basis_size(truncation_));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    evaluate_basis_into(truncation_, points_[i], basis);
    const double w = dual_weights_[static_cast<Eigen::Index>(i)];
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += w * basis[k];
  }
  for (int l = 0; l <= truncation_; ++l)
    for (double& a : out.level(l)) a *= spectrum_[l];
  return out;
}

KrrFit krr_dual(const Dataset& data, const PowerSpectrum& spec, int truncation) {
  if (spec.dimension() != 2) throw UnsupportedDimension(spec.dimension());
  check_truncation(spec, truncation);
  const auto n = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k = covariance_kernel(spec, clamped_inner(data.points[i], data.points[j]), truncation);
      gram(i, j) = k;
      gram(j, i) = k;
    }
    gram(i, i) += data.noise_var;
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  // Eigen's estimate skips exactly-zero pivots, so bound it by the pivot ratio too.
  const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
  const double rcond = std::min(ldlt.rcond(), pivots.minCoeff() / pivots.maxCoeff());
  if (ldlt.info() != Eigen::Success || !(rcond > std::numeric_limits<double>::epsilon()))
    throw SingularSystem("kernel Gram system is numerically singular", rcond);
  const Eigen::Map<const Eigen::VectorXd> y(data.responses.data(), n);
  Eigen::VectorXd alpha = ldlt.solve(y);
  return KrrFit(data.points, std::move(alpha), spec, truncation);
}

}  // namespace sphreg
