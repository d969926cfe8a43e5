#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace sphreg {

enum class Pathway {
  empirical,  // random design, empirical harmonic coefficients
  sequence,   // idealized a_hat = a0 + (sigma/sqrt n) xi
};

[[nodiscard]] std::string to_string(Pathway p);
[[nodiscard]] Pathway parse_pathway(const std::string& text);

/// Parameters of one contraction study on S^2.
struct ExperimentConfig {
  int d = 2;
  double alpha = 2.0;   // prior smoothness
  double beta = 2.0;    // truth smoothness
  double kappa = 1.0;
  double sigma = 0.5;
  double c = 2.5;       // truncation constant
  int truth_degree = 10;
  std::vector<std::size_t> sample_sizes{50, 100, 200, 400, 800, 1600, 3200};
  std::size_t repetitions = 50;
  std::uint64_t seed = 20240101;
  Pathway pathway = Pathway::empirical;
  int grid_degree = -1;  // < 0: 2 * truth_degree + 2
  bool normalize_truth = true;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Throws InvalidArgument naming every violated field.
  void validate() const;
  /// Degree of the RMSE quadrature grid, raised if needed to cover every L_n and the truth.
  [[nodiscard]] int resolved_grid_degree() const;
  [[nodiscard]] std::uint64_t truth_seed() const;
  [[nodiscard]] std::uint64_t cell_seed(std::size_t n, std::size_t rep) const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ReportRow {
  std::size_t n;
  int truncation;
  double rmse_mean;
  double rmse_sd;
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SlopeFit {
  double slope;
  double intercept;
  double standard_error;  // 0 with only two points (no residual degrees of freedom)
};

struct ContractionReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double theoretical_slope = 0.0;  // saturated: -min(alpha, beta)/(2 alpha + d)
  double nominal_slope = 0.0;      // -beta/(2 alpha + d)

  friend bool operator==(const ContractionReport&, const ContractionReport&) = default;
};

/// Ordinary least squares of log(rmse) on log(n). Needs >= 2 positive points.
[[nodiscard]] SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> points);

[[nodiscard]] ContractionReport run_contraction_study(const ExperimentConfig& cfg);

/// One study per alpha; truth, noise level and per-cell seeds are shared.
[[nodiscard]] std::vector<ContractionReport> run_miscalibration_study(const ExperimentConfig& base,
                                                                      std::span<const double> alphas);

/// RMSE of a single (n, repetition) cell.
[[nodiscard]] double run_cell(const ExperimentConfig& cfg, std::size_t n, std::size_t rep);

[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const ContractionReport& report);
[[nodiscard]] ContractionReport report_from_json(const nlohmann::json& j);

[[nodiscard]] std::string report_csv(const ContractionReport& report);
[[nodiscard]] std::string report_svg(std::span<const ContractionReport> reports);

enum class ReportFormat { csv, json, svg };

/// Writes `<stem>.<ext>` into `dir`; returns the path written. I/O
/// failures raise DataError naming the path.
std::filesystem::path emit_report(const ContractionReport& report, ReportFormat format,
                                  const std::filesystem::path& dir, const std::string& stem);

}  // namespace sphreg
