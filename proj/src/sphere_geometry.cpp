#include "sphreg/sphere_geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/LU>
#include <Eigen/QR>

#include "sphreg/error.hpp"

namespace sphreg {

namespace {

void normalize_in_place(std::vector<double>& v) {
  if (v.size() < 2) throw InvalidArgument("sphere point needs at least 2 coordinates");
  double norm_sq = 0.0;
  for (double c : v) {
    if (!std::isfinite(c)) throw InvalidArgument("sphere point has non-finite coordinate");
    norm_sq += c * c;
  }
  if (norm_sq == 0.0) throw InvalidArgument("cannot normalize the zero vector onto the sphere");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& c : v) c *= inv;
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  normalize_in_place(coords_);
}

SpherePoint::SpherePoint(double x, double y, double z) : SpherePoint(std::vector<double>{x, y, z}) {}

SpherePoint SpherePoint::antipode() const {
  std::vector<double> neg(coords_);
  for (double& c : neg) c = -c;
  return SpherePoint(std::move(neg));
}

double clamped_inner(const SpherePoint& x, const SpherePoint& y) {
  if (x.dimension() != y.dimension())
    throw InvalidArgument("sphere points of different dimension (" + std::to_string(x.dimension()) +
                          " vs " + std::to_string(y.dimension()) + ")");
  const auto a = x.coords();
  const auto b = y.coords();
  const double t = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  return std::clamp(t, -1.0, 1.0);
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
  return std::acos(clamped_inner(x, y));
}

std::vector<SpherePoint> sample_uniform(std::size_t n, int d, Rng& rng) {
  if (d < 1) throw InvalidArgument("invalid dimension d=" + std::to_string(d) + " (need d >= 1)");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<SpherePoint> points;
  points.reserve(n);
  std::vector<double> v(static_cast<std::size_t>(d) + 1);
  while (points.size() < n) {
    double norm_sq = 0.0;
    for (double& c : v) {
      c = normal(rng);
      norm_sq += c * c;
    }
    if (norm_sq < 1e-300) continue;  // measure-zero event; redraw
    points.emplace_back(v);
  }
  return points;
}

std::vector<SpherePoint> sample_uniform(std::size_t n, int d, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_uniform(n, d, rng);
}

Eigen::Matrix3d random_rotation(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Sign fix makes Q Haar distributed.
  for (int j = 0; j < 3; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

SpherePoint rotate(const Eigen::Matrix3d& rotation, const SpherePoint& x) {
  if (x.dimension() != 2) throw UnsupportedDimension(x.dimension());
  const Eigen::Vector3d v(x[0], x[1], x[2]);
  const Eigen::Vector3d w = rotation * v;
  return SpherePoint(w[0], w[1], w[2]);
}

GaussLegendreRule gauss_legendre(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : p1;
      const double pn1 = n == 0 ? 0.0 : (n == 1 ? 1.0 : p0);
      dp = static_cast<double>(n) * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    const double pn1 = n == 1 ? 1.0 : p0;
    dp = static_cast<double>(n) * (x * p1 - pn1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureGrid::QuadratureGrid(int max_exact_degree) : max_exact_degree_(max_exact_degree) {
  if (max_exact_degree < 0) throw InvalidArgument("quadrature degree must be >= 0");
  const auto n_lat = static_cast<std::size_t>(max_exact_degree) + 1;
  const auto n_lon = 2 * static_cast<std::size_t>(max_exact_degree) + 1;
  const GaussLegendreRule rule = gauss_legendre(n_lat);
  nodes_.reserve(n_lat * n_lon);
  weights_.reserve(n_lat * n_lon);
  double total = 0.0;
  for (std::size_t i = 0; i < n_lat; ++i) {
    const double z = rule.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (std::size_t j = 0; j < n_lon; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_lon);
      nodes_.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
      weights_.push_back(rule.weights[i]);
      total += rule.weights[i];
    }
  }
  for (double& w : weights_) w /= total;
}

double QuadratureGrid::integrate(const std::function<double(const SpherePoint&)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
  return acc;
}

double QuadratureGrid::integrate(std::span<const double> values) const {
  if (values.size() != nodes_.size())
    throw InvalidArgument("node value count does not match quadrature grid size");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights_[i] * values[i];
  return acc;
}

QuadratureGrid quadrature_grid(int max_exact_degree) { return QuadratureGrid(max_exact_degree); }

}  // namespace sphreg
