#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sphreg/error.hpp"
#include "sphreg/experiments.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/prior_field.hpp"
#include "sphreg/regression.hpp"
#include "sphreg/sequence_model.hpp"
#include "sphreg/spectra.hpp"
#include "sphreg/variational.hpp"

namespace py = pybind11;
using namespace sphreg;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<SpherePoint> to_points(const Array& xyz) {
  if (xyz.ndim() != 2 || xyz.shape(1) != 3) throw InvalidArgument("points must have shape (n, 3)");
  const auto r = xyz.unchecked<2>();
  std::vector<SpherePoint> pts;
  pts.reserve(static_cast<std::size_t>(r.shape(0)));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) pts.emplace_back(r(i, 0), r(i, 1), r(i, 2));
  return pts;
}

Array from_points(const std::vector<SpherePoint>& pts) {
  Array out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{3}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (py::ssize_t k = 0; k < 3; ++k) w(static_cast<py::ssize_t>(i), k) = pts[i][static_cast<std::size_t>(k)];
  return out;
}

Array to_array(std::span<const double> v) { return Array(static_cast<py::ssize_t>(v.size()), v.data()); }

HarmonicCoefficients to_coeffs(const Array& flat) {
  const auto n = static_cast<std::size_t>(flat.size());
  const auto L = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))) - 1;
  if (L < 0 || basis_size(L) != n) throw InvalidArgument("coefficient vector length must be (L+1)^2");
  HarmonicCoefficients c(2, L);
  std::copy(flat.data(), flat.data() + n, c.values().begin());
  return c;
}

Dataset to_dataset(const Array& xyz, const Array& y, double sigma) {
  if (y.ndim() != 1) throw InvalidArgument("responses must be one-dimensional");
  return Dataset(to_points(xyz), std::vector<double>(y.data(), y.data() + y.size()), sigma * sigma);
}

PowerSpectrum spectrum_for(double alpha, double kappa, int L) { return truncated_matern_spectrum(2, alpha, kappa, L); }

}  // namespace

PYBIND11_MODULE(_sphreg, m) {
  m.doc() = "Bayesian nonparametric regression on the sphere";

  // Later registrations are tried first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", PyExc_IOError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("multiplicity", &multiplicity, py::arg("d"), py::arg("l"));
  m.def("eigenvalue", &eigenvalue, py::arg("d"), py::arg("l"));
  m.def("legendre", &legendre, py::arg("l"), py::arg("t"));
  m.def("basis_size", &basis_size, py::arg("max_degree"));

  m.def("sample_uniform", [](std::size_t n, std::uint64_t seed) { return from_points(sample_uniform(n, 2, seed)); },
        py::arg("n"), py::arg("seed"), "Uniform points on S^2 as an (n, 3) array.");
  m.def(
      "evaluate_basis",
      [](int L, const Array& xyz) {
        const auto pts = to_points(xyz);
        const auto dim = static_cast<py::ssize_t>(basis_size(L));
        Array out({static_cast<py::ssize_t>(pts.size()), dim});
        for (std::size_t i = 0; i < pts.size(); ++i)
          evaluate_basis_into(L, pts[i], std::span<double>(out.mutable_data(static_cast<py::ssize_t>(i)), dim));
        return out;
      },
      py::arg("max_degree"), py::arg("points"), "Real orthonormal harmonics, one row of (L+1)^2 values per point.");
  m.def(
      "quadrature_grid",
      [](int L) {
        const QuadratureGrid g(L);
        return py::make_tuple(from_points(g.nodes()), to_array(g.weights()));
      },
      py::arg("max_degree"));

  m.def(
      "matern_spectrum",
      [](int d, double alpha, double kappa, int L) { return matern_spectrum(d, alpha, kappa, L).values(); },
      py::arg("d"), py::arg("alpha"), py::arg("kappa"), py::arg("max_degree"));
  m.def(
      "covariance_kernel",
      [](double alpha, double kappa, int L, double t) { return covariance_kernel(spectrum_for(alpha, kappa, L), t); },
      py::arg("alpha"), py::arg("kappa"), py::arg("max_degree"), py::arg("t"));
  m.def(
      "sample_prior",
      [](double alpha, double kappa, int L, std::uint64_t seed) {
        return to_array(sample_prior(spectrum_for(alpha, kappa, L), seed).coeffs.values());
      },
      py::arg("alpha"), py::arg("kappa"), py::arg("max_degree"), py::arg("seed"));

  m.def("truncation_level", &truncation_level, py::arg("n"), py::arg("alpha"), py::arg("d"), py::arg("c"));
  m.def("theoretical_rate", &theoretical_rate, py::arg("alpha"), py::arg("beta"), py::arg("d"));
  m.def("nominal_rate", &nominal_rate, py::arg("alpha"), py::arg("beta"), py::arg("d"));
  m.def("shrinkage_weight", &shrinkage_weight, py::arg("prior_var"), py::arg("noise_var"), py::arg("n"));

  m.def(
      "generate_truth",
      [](double beta, int L, std::uint64_t seed, bool normalized) {
        return to_array(generate_truth({beta, L, seed, normalized}).values());
      },
      py::arg("beta") = 2.0, py::arg("max_degree") = 10, py::arg("seed") = 0, py::arg("normalized") = true);
  m.def(
      "synthesize",
      [](const Array& coeffs, const Array& xyz) {
        const auto c = to_coeffs(coeffs);
        const auto pts = to_points(xyz);
        std::vector<double> out;
        for (const auto& x : pts) out.push_back(synthesize(c, x));
        return to_array(out);
      },
      py::arg("coeffs"), py::arg("points"));
  m.def(
      "generate_dataset",
      [](const Array& coeffs, std::size_t n, double sigma, std::uint64_t seed) {
        const auto data = generate_dataset(to_coeffs(coeffs), n, sigma, seed);
        return py::make_tuple(from_points(data.points), to_array(data.responses));
      },
      py::arg("truth"), py::arg("n"), py::arg("sigma"), py::arg("seed"));
  m.def(
      "fit",
      [](const Array& xyz, const Array& y, double sigma, double alpha, double kappa, int L) {
        const auto model = fit(to_dataset(xyz, y, sigma), spectrum_for(alpha, kappa, L), L);
        return py::make_tuple(to_array(model.means.values()), to_array(model.level_variances));
      },
      py::arg("points"), py::arg("responses"), py::arg("sigma"), py::arg("alpha") = 2.0, py::arg("kappa") = 1.0,
      py::arg("truncation"), "Posterior means (flat, (L+1)^2) and per-level variances.");
  m.def(
      "empirical_ridge",
      [](const Array& xyz, const Array& y, double sigma, double alpha, double kappa, int L) {
        return to_array(empirical_ridge(to_dataset(xyz, y, sigma), spectrum_for(alpha, kappa, L), L).values());
      },
      py::arg("points"), py::arg("responses"), py::arg("sigma"), py::arg("alpha") = 2.0, py::arg("kappa") = 1.0,
      py::arg("truncation"));
  m.def(
      "krr_predict",
      [](const Array& xyz, const Array& y, double sigma, double alpha, double kappa, int L, const Array& at) {
        const auto f = krr_dual(to_dataset(xyz, y, sigma), spectrum_for(alpha, kappa, L), L);
        return to_array(f.predict(to_points(at)));
      },
      py::arg("points"), py::arg("responses"), py::arg("sigma"), py::arg("alpha") = 2.0, py::arg("kappa") = 1.0,
      py::arg("truncation"), py::arg("at"));

  m.def(
      "fit_loglog_slope",
      [](const std::vector<double>& n, const std::vector<double>& rmse) {
        if (n.size() != rmse.size()) throw InvalidArgument("n and rmse differ in length");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n.size(); ++i) pts.emplace_back(n[i], rmse[i]);
        const auto f = fit_loglog_slope(pts);
        return py::make_tuple(f.slope, f.intercept, f.standard_error);
      },
      py::arg("n"), py::arg("rmse"));
  m.def(
      "_run_contraction_study",
      [](const std::string& config_json) {
        const auto cfg = config_from_json(nlohmann::json::parse(config_json));
        py::gil_scoped_release release;
        return to_json(run_contraction_study(cfg)).dump();
      },
      py::arg("config_json"));
  m.def("_default_config", [] { return to_json(ExperimentConfig{}).dump(); });
}
