#include "sphreg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "sphreg/error.hpp"
#include "sphreg/io.hpp"
#include "sphreg/random.hpp"
#include "sphreg/regression.hpp"
#include "sphreg/sequence_model.hpp"

namespace sphreg {

namespace {

constexpr std::uint64_t kTruthStream = 0x7472757468ULL;

std::size_t worker_count(unsigned requested, std::size_t jobs) {
  std::size_t w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(w, jobs));
}

// Runs f(i) for i in [0, count) on a small pool; results are written by
// index, so scheduling order never affects the output.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  const std::size_t workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          f(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_string(Pathway p) { return p == Pathway::empirical ? "empirical" : "sequence"; }

Pathway parse_pathway(const std::string& text) {
  if (text == "empirical") return Pathway::empirical;
  if (text == "sequence") return Pathway::sequence;
  throw InvalidArgument("pathway must be 'empirical' or 'sequence', got '" + text + "'");
}

void ExperimentConfig::validate() const {
  std::vector<std::string> bad;
  if (d != 2) bad.emplace_back("d (spatial studies run on S^2 only)");
  if (!(alpha >= 0.5 * d)) bad.emplace_back("alpha (must be at least d/2)");
  if (!(beta > 0.0)) bad.emplace_back("beta (must be > 0)");
  if (!(kappa > 0.0)) bad.emplace_back("kappa (must be > 0)");
  if (!(sigma > 0.0)) bad.emplace_back("sigma (must be > 0)");
  if (!(c > 0.0)) bad.emplace_back("c (must be > 0)");
  if (truth_degree < 0) bad.emplace_back("truth_degree (must be >= 0)");
  bool increasing = !sample_sizes.empty() && sample_sizes.front() >= 1;
  for (std::size_t i = 1; i < sample_sizes.size(); ++i) increasing = increasing && sample_sizes[i] > sample_sizes[i - 1];
  if (!increasing) bad.emplace_back("sample_sizes (must be nonempty, >= 1, strictly increasing)");
  if (repetitions < 1) bad.emplace_back("repetitions (must be >= 1)");
  if (!bad.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw InvalidArgument(msg);
  }
}

int ExperimentConfig::resolved_grid_degree() const {
  int degree = grid_degree >= 0 ? grid_degree : 2 * truth_degree + 2;
  degree = std::max(degree, truth_degree);
  for (std::size_t n : sample_sizes) degree = std::max(degree, truncation_level(n, alpha, d, c));
  return degree;
}

std::uint64_t ExperimentConfig::truth_seed() const { return derive_seed(seed, {kTruthStream}); }

std::uint64_t ExperimentConfig::cell_seed(std::size_t n, std::size_t rep) const { return derive_seed(seed, {n, rep}); }

SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw InvalidArgument("slope fit needs at least 2 points");
  std::vector<double> lx, ly;
  for (const auto& [n, r] : points) {
    if (!(n > 0.0) || !(r > 0.0)) throw InvalidArgument("slope fit needs positive n and rmse");
    lx.push_back(std::log(n));
    ly.push_back(std::log(r));
  }
  const auto k = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("slope fit needs at least two distinct n");
  SlopeFit fit{sxy / sxx, 0.0, 0.0};
  fit.intercept = my - fit.slope * mx;
  if (lx.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
      ssr += r * r;
    }
    fit.standard_error = std::sqrt(ssr / (k - 2.0) / sxx);
  }
  return fit;
}

namespace {

double cell_rmse(const ExperimentConfig& cfg, const HarmonicCoefficients& truth, const QuadratureGrid& grid,
                 std::size_t n, std::size_t rep) {
  const int ln = truncation_level(n, cfg.alpha, cfg.d, cfg.c);
  const PowerSpectrum spec = truncated_matern_spectrum(cfg.d, cfg.alpha, cfg.kappa, ln);
  const std::uint64_t seed = cfg.cell_seed(n, rep);
  if (cfg.pathway == Pathway::empirical) return rmse(fit(generate_dataset(truth, n, cfg.sigma, seed), spec, ln), truth, grid);
  const HarmonicCoefficients observed =
      simulate_sequence_observations(truth.resized(std::max(ln, cfg.truth_degree)), cfg.sigma, n, seed);
  return rmse(posterior(observed, spec, cfg.sigma, n, ln), truth, grid);
}

}  // namespace

double run_cell(const ExperimentConfig& cfg, std::size_t n, std::size_t rep) {
  cfg.validate();
  const HarmonicCoefficients truth =
      generate_truth({cfg.beta, cfg.truth_degree, cfg.truth_seed(), cfg.normalize_truth});
  return cell_rmse(cfg, truth, QuadratureGrid(cfg.resolved_grid_degree()), n, rep);
}

ContractionReport run_contraction_study(const ExperimentConfig& cfg) {
  cfg.validate();
  ContractionReport report;
  report.config = cfg;
  report.theoretical_slope = theoretical_rate(cfg.alpha, cfg.beta, cfg.d);
  report.nominal_slope = nominal_rate(cfg.alpha, cfg.beta, cfg.d);

  const HarmonicCoefficients truth =
      generate_truth({cfg.beta, cfg.truth_degree, cfg.truth_seed(), cfg.normalize_truth});
  const QuadratureGrid grid(cfg.resolved_grid_degree());
  const std::size_t reps = cfg.repetitions;
  const std::size_t cells = cfg.sample_sizes.size() * reps;
  std::vector<double> errors(cells);

  parallel_for(cells, cfg.threads, [&](std::size_t idx) {
    errors[idx] = cell_rmse(cfg, truth, grid, cfg.sample_sizes[idx / reps], idx % reps);
  });

  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < cfg.sample_sizes.size(); ++i) {
    const std::size_t n = cfg.sample_sizes[i];
    // Fixed rep order keeps the aggregate bit-identical for any thread count.
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r) mean += errors[i * reps + r];
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) ss += (errors[i * reps + r] - mean) * (errors[i * reps + r] - mean);
    const double sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
    report.rows.push_back({n, truncation_level(n, cfg.alpha, cfg.d, cfg.c), mean, sd});
    points.emplace_back(static_cast<double>(n), mean);
  }
  if (points.size() >= 2) {
    const SlopeFit f = fit_loglog_slope(points);
    report.slope = f.slope;
    report.intercept = f.intercept;
    report.slope_stderr = f.standard_error;
  }
  return report;
}

std::vector<ContractionReport> run_miscalibration_study(const ExperimentConfig& base, std::span<const double> alphas) {
  if (alphas.empty()) throw InvalidArgument("miscalibration study needs at least one alpha");
  std::vector<ContractionReport> out;
  for (double a : alphas) {
    ExperimentConfig cfg = base;
    cfg.alpha = a;
    out.push_back(run_contraction_study(cfg));
  }
  return out;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {{"d", cfg.d},
          {"alpha", cfg.alpha},
          {"beta", cfg.beta},
          {"kappa", cfg.kappa},
          {"sigma", cfg.sigma},
          {"c", cfg.c},
          {"truth_degree", cfg.truth_degree},
          {"sample_sizes", cfg.sample_sizes},
          {"repetitions", cfg.repetitions},
          {"seed", cfg.seed},
          {"truth_seed", cfg.truth_seed()},
          {"pathway", to_string(cfg.pathway)},
          {"grid_degree", cfg.grid_degree},
          {"resolved_grid_degree", cfg.resolved_grid_degree()},
          {"normalize_truth", cfg.normalize_truth},
          {"threads", cfg.threads}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.d = j.at("d").get<int>();
  cfg.alpha = j.at("alpha").get<double>();
  cfg.beta = j.at("beta").get<double>();
  cfg.kappa = j.at("kappa").get<double>();
  cfg.sigma = j.at("sigma").get<double>();
  cfg.c = j.at("c").get<double>();
  cfg.truth_degree = j.at("truth_degree").get<int>();
  cfg.sample_sizes = j.at("sample_sizes").get<std::vector<std::size_t>>();
  cfg.repetitions = j.at("repetitions").get<std::size_t>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.pathway = parse_pathway(j.at("pathway").get<std::string>());
  cfg.grid_degree = j.at("grid_degree").get<int>();
  cfg.normalize_truth = j.at("normalize_truth").get<bool>();
  cfg.threads = j.at("threads").get<unsigned>();
  return cfg;
}

nlohmann::json to_json(const ContractionReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"n", r.n}, {"L_n", r.truncation}, {"rmse_mean", r.rmse_mean}, {"rmse_sd", r.rmse_sd}});
  return {{"config", to_json(report.config)},
          {"rows", rows},
          {"slope", report.slope},
          {"intercept", report.intercept},
          {"slope_stderr", report.slope_stderr},
          {"theoretical_slope", report.theoretical_slope},
          {"nominal_slope", report.nominal_slope}};
}

ContractionReport report_from_json(const nlohmann::json& j) {
  ContractionReport report;
  report.config = config_from_json(j.at("config"));
  for (const auto& r : j.at("rows"))
    report.rows.push_back({r.at("n").get<std::size_t>(), r.at("L_n").get<int>(), r.at("rmse_mean").get<double>(),
                           r.at("rmse_sd").get<double>()});
  report.slope = j.at("slope").get<double>();
  report.intercept = j.at("intercept").get<double>();
  report.slope_stderr = j.at("slope_stderr").get<double>();
  report.theoretical_slope = j.at("theoretical_slope").get<double>();
  report.nominal_slope = j.at("nominal_slope").get<double>();
  return report;
}

std::string report_csv(const ContractionReport& report) {
  std::string out = "n,L_n,rmse_mean,rmse_sd\n";
  for (const auto& r : report.rows)
    out += std::to_string(r.n) + ',' + std::to_string(r.truncation) + ',' + format_double(r.rmse_mean) + ',' +
           format_double(r.rmse_sd) + '\n';
  return out;
}

std::string report_svg(std::span<const ContractionReport> reports) {
  constexpr double width = 640, height = 440, left = 70, right = 20, top = 20, bottom = 50;
  static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& rep : reports)
    for (const auto& r : rep.rows) {
      xmin = std::min(xmin, std::log10(static_cast<double>(r.n)));
      xmax = std::max(xmax, std::log10(static_cast<double>(r.n)));
      ymin = std::min(ymin, std::log10(r.rmse_mean));
      ymax = std::max(ymax, std::log10(r.rmse_mean));
    }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  const double ypad = 0.08 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;
  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * (width - left - right); };
  auto py = [&](double ly) { return top + (ymax - ly) / (ymax - ymin) * (height - top - bottom); };
  auto f = [](double v) { return format_double(std::round(v * 100.0) / 100.0); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">log10 n</text>\n";
  svg << "<text x=\"16\" y=\"" << height / 2 << "\" transform=\"rotate(-90 16 " << height / 2
      << ")\" text-anchor=\"middle\">log10 RMSE</text>\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& rep = reports[k];
    if (rep.rows.empty()) continue;
    const char* color = palette[k % std::size(palette)];
    std::string pts;
    for (const auto& r : rep.rows) {
      const double x = px(std::log10(static_cast<double>(r.n)));
      const double y = py(std::log10(r.rmse_mean));
      pts += f(x) + "," + f(y) + " ";
      svg << "<circle cx=\"" << f(x) << "\" cy=\"" << f(y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    svg << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    // Least-squares line (dashed) and theoretical slope through the same centroid (dotted).
    const double lx0 = std::log10(static_cast<double>(rep.rows.front().n));
    const double lx1 = std::log10(static_cast<double>(rep.rows.back().n));
    const double ln10 = std::log(10.0);
    auto fitted = [&](double lx) { return (rep.intercept + rep.slope * lx * ln10) / ln10; };
    const double cx = 0.5 * (lx0 + lx1);
    const double cy = fitted(cx);
    auto theory = [&](double lx) { return cy + rep.theoretical_slope * (lx - cx); };
    svg << "<line x1=\"" << f(px(lx0)) << "\" y1=\"" << f(py(fitted(lx0))) << "\" x2=\"" << f(px(lx1)) << "\" y2=\""
        << f(py(fitted(lx1))) << "\" stroke=\"" << color << "\" stroke-dasharray=\"6,4\"/>\n";
    svg << "<line x1=\"" << f(px(lx0)) << "\" y1=\"" << f(py(theory(lx0))) << "\" x2=\"" << f(px(lx1)) << "\" y2=\""
        << f(py(theory(lx1))) << "\" stroke=\"" << color << "\" stroke-dasharray=\"1,3\"/>\n";
    svg << "<text x=\"" << f(width - right - 220) << "\" y=\"" << f(top + 16 + 16 * static_cast<double>(k))
        << "\" fill=\"" << color << "\">alpha=" << format_double(rep.config.alpha)
        << " slope=" << format_double(std::round(rep.slope * 1000.0) / 1000.0)
        << " theory=" << format_double(std::round(rep.theoretical_slope * 1000.0) / 1000.0) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::filesystem::path emit_report(const ContractionReport& report, ReportFormat format,
                                  const std::filesystem::path& dir, const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::filesystem::path path = dir / stem;
  switch (format) {
    case ReportFormat::csv:
      path += ".csv";
      write_text_file(path, report_csv(report));
      break;
    case ReportFormat::json:
      path += ".json";
      write_text_file(path, to_json(report).dump(2) + "\n");
      break;
    case ReportFormat::svg:
      path += ".svg";
      write_text_file(path, report_svg(std::span<const ContractionReport>(&report, 1)));
      break;
  }
  return path;
}

}  // namespace sphreg
