#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sphreg/config.hpp"
#include "sphreg/error.hpp"
#include "sphreg/experiments.hpp"
#include "sphreg/harmonics.hpp"
#include "sphreg/io.hpp"
#include "sphreg/prior_field.hpp"
#include "sphreg/regression.hpp"
#include "sphreg/sequence_model.hpp"
#include "sphreg/spectra.hpp"

namespace sphreg::cli {

namespace {

constexpr double kFlatPriorVariance = 1e12;

struct SpectrumArgs {
  int d = 2;
  double alpha = 2.0;
  double kappa = 1.0;
  int degree = 10;
  std::string csv;
};

struct PriorArgs {
  int d = 2;
  double alpha = 2.0;
  double kappa = 1.0;
  int degree = 30;
  std::uint64_t seed = 20240101;
  std::string out;
  std::size_t points = 0;
  std::string points_out;
};

struct FitArgs {
  std::string data;
  double sigma = 0.5;
  double alpha = 2.0;
  double kappa = 1.0;
  double c = 2.5;
  std::string degree = "auto";
  bool n_from_data = false;
  bool flat = false;
  std::string out;
};

struct BenchmarkArgs {
  std::string study;
  std::string config;
  std::string out_dir;
  std::string formats;
  std::string alphas;
  std::string pathway;
  std::uint64_t seed = 0;
  std::size_t repetitions = 0;
  unsigned threads = 0;
  bool svg = false;
};

struct SlopeArgs {
  std::string input;
  double alpha = 0.0;
  double beta = 0.0;
  int d = 2;
};

std::string fmt(double v) { return format_double(v); }

void print_config(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& entries) {
  out << "# resolved config\n";
  for (const auto& [k, v] : entries) out << "#   " << k << " = " << v << '\n';
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_double(item));
    } catch (const DataError&) {
      throw ConfigError({key}, "not a comma-separated list of numbers: '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigError({key}, "empty list");
  return out;
}

std::vector<ReportFormat> parse_formats(const std::string& text) {
  std::vector<ReportFormat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") out.push_back(ReportFormat::csv);
    else if (item == "json") out.push_back(ReportFormat::json);
    else if (item == "svg") out.push_back(ReportFormat::svg);
    else throw ConfigError({"formats"}, "unknown format '" + item + "' (expected csv, json, svg)");
  }
  return out;
}

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  print_config(out, {{"d", std::to_string(a.d)},
                     {"alpha", fmt(a.alpha)},
                     {"kappa", fmt(a.kappa)},
                     {"L", std::to_string(a.degree)},
                     {"csv", a.csv.empty() ? "-" : a.csv}});
  const PowerSpectrum spec = matern_spectrum(a.d, a.alpha, a.kappa, a.degree);
  const std::vector<double> cumulative = cumulative_trace(spec);
  out << "ell,lambda,multiplicity,C,cumulative_trace\n";
  for (int l = 0; l <= spec.max_degree(); ++l)
    out << l << ',' << fmt(eigenvalue(a.d, l)) << ',' << multiplicity(a.d, l) << ',' << fmt(spec[l]) << ','
        << fmt(cumulative[l]) << '\n';
  if (!a.csv.empty()) write_text_file(a.csv, spectrum_csv(spec));
  return kOk;
}

int cmd_simulate_prior(const PriorArgs& a, std::ostream& out) {
  print_config(out, {{"d", std::to_string(a.d)},
                     {"alpha", fmt(a.alpha)},
                     {"kappa", fmt(a.kappa)},
                     {"L", std::to_string(a.degree)},
                     {"seed", std::to_string(a.seed)},
                     {"out", a.out.empty() ? "-" : a.out},
                     {"points", std::to_string(a.points)},
                     {"points_out", a.points_out.empty() ? "-" : a.points_out}});
  const PowerSpectrum spec = matern_spectrum(a.d, a.alpha, a.kappa, a.degree);
  const PriorDraw draw = sample_prior(spec, a.seed);
  out << "trace=" << fmt(trace(spec)) << " squared_l2_norm=" << fmt(draw.coeffs.squared_norm()) << '\n';
  if (!a.out.empty()) write_text_file(a.out, coefficients_csv(draw.coeffs));
  if (a.points > 0) {
    if (a.d != 2) throw UnsupportedDimension(a.d);
    const auto pts = sample_uniform(a.points, 2, derive_seed(a.seed, {1}));
    std::string csv = "x,y,z,value\n";
    for (const auto& x : pts)
      csv += fmt(x[0]) + ',' + fmt(x[1]) + ',' + fmt(x[2]) + ',' + fmt(synthesize(draw.coeffs, x)) + '\n';
    if (a.points_out.empty()) out << csv;
    else write_text_file(a.points_out, csv);
  }
  return kOk;
}

int cmd_fit(const FitArgs& a, std::ostream& out) {
  print_config(out, {{"data", a.data},
                     {"sigma", fmt(a.sigma)},
                     {"prior", a.flat ? "flat" : "matern"},
                     {"alpha", fmt(a.alpha)},
                     {"kappa", fmt(a.kappa)},
                     {"c", fmt(a.c)},
                     {"L", a.degree},
                     {"out", a.out.empty() ? "-" : a.out}});
  if (!(a.sigma > 0.0)) throw InvalidArgument("sigma must be > 0");
  int truncation = 0;
  if (a.degree != "auto") {
    try {
      std::size_t pos = 0;
      truncation = std::stoi(a.degree, &pos);
      if (pos != a.degree.size() || truncation < 0) throw std::invalid_argument(a.degree);
    } catch (const std::exception&) {
      throw InvalidArgument("--L must be a nonnegative integer or 'auto', got '" + a.degree + "'");
    }
  }
  const Dataset data = read_dataset_csv(a.data, a.sigma * a.sigma);
  if (a.degree == "auto") truncation = truncation_level(data.size(), a.alpha, 2, a.c);
  const PowerSpectrum spec = a.flat ? PowerSpectrum(2, std::vector<double>(static_cast<std::size_t>(truncation) + 1,
                                                                          kFlatPriorVariance))
                                    : truncated_matern_spectrum(2, a.alpha, a.kappa, truncation);
  const PosteriorModel model = fit(data, spec, truncation);

  double sum = 0.0;
  double sum_sq = 0.0;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.responses[i] - synthesize(model.means, data.points[i]);
    sum += r;
    sum_sq += r * r;
    max_abs = std::max(max_abs, std::abs(r));
  }
  const auto n = static_cast<double>(data.size());
  out << "n=" << data.size() << " L_n=" << truncation << " modes=" << basis_size(truncation) << '\n';
  out << "residual_mean=" << fmt(sum / n) << " residual_rms=" << fmt(std::sqrt(sum_sq / n))
      << " residual_max_abs=" << fmt(max_abs) << '\n';
  const std::string csv = posterior_csv(model);
  if (a.out.empty()) out << csv;
  else write_text_file(a.out, csv);
  return kOk;
}

void print_report(std::ostream& out, const ContractionReport& r) {
  out << "n,L_n,rmse_mean,rmse_sd\n";
  for (const auto& row : r.rows)
    out << row.n << ',' << row.truncation << ',' << fmt(row.rmse_mean) << ',' << fmt(row.rmse_sd) << '\n';
}

void print_slope(std::ostream& out, const ContractionReport& r, bool with_alpha) {
  out << "slope=" << fmt(r.slope) << " theoretical=" << fmt(r.theoretical_slope);
  if (with_alpha) out << " alpha=" << fmt(r.config.alpha);
  if (r.nominal_slope != r.theoretical_slope) out << " nominal=" << fmt(r.nominal_slope) << " (saturated: beta > alpha)";
  out << '\n';
}

int cmd_benchmark(const BenchmarkArgs& a, const CLI::App& sub, std::ostream& out) {
  if (a.study != "contraction" && a.study != "miscalibration")
    throw ConfigError({"study"}, "study must be 'contraction' or 'miscalibration', got '" + a.study + "'");
  ExperimentConfig cfg;
  std::string out_dir = ".";
  std::string formats = "csv,json";
  std::string alphas = "1,2,3";
  bool svg = false;
  if (!a.config.empty()) {
    const KeyValues kv = parse_key_values(read_text_file(a.config));
    apply_config(kv, cfg, {"out_dir", "formats", "alphas", "svg"});
    if (auto it = kv.find("out_dir"); it != kv.end()) out_dir = it->second;
    if (auto it = kv.find("formats"); it != kv.end()) formats = it->second;
    if (auto it = kv.find("alphas"); it != kv.end()) alphas = it->second;
    if (auto it = kv.find("svg"); it != kv.end()) {
      if (it->second != "true" && it->second != "false") throw ConfigError({"svg"}, "expected true or false");
      svg = it->second == "true";
    }
  }
  if (sub.count("--out")) out_dir = a.out_dir;
  if (sub.count("--formats")) formats = a.formats;
  if (sub.count("--alphas")) alphas = a.alphas;
  if (sub.count("--seed")) cfg.seed = a.seed;
  if (sub.count("--reps")) cfg.repetitions = a.repetitions;
  if (sub.count("--threads")) cfg.threads = a.threads;
  if (sub.count("--pathway")) cfg.pathway = parse_pathway(a.pathway);
  if (a.svg) svg = true;

  std::vector<ReportFormat> fmts = parse_formats(formats);
  if (svg && std::find(fmts.begin(), fmts.end(), ReportFormat::svg) == fmts.end()) fmts.push_back(ReportFormat::svg);
  const std::vector<double> alpha_list =
      a.study == "miscalibration" ? parse_double_list(alphas, "alphas") : std::vector<double>{cfg.alpha};
  cfg.validate();
  for (double al : alpha_list) {
    ExperimentConfig probe = cfg;
    probe.alpha = al;
    probe.validate();
  }

  out << "# resolved config\n";
  std::istringstream lines(format_config(cfg));
  for (std::string line; std::getline(lines, line);) out << "#   " << line << '\n';
  out << "#   study = " << a.study << '\n' << "#   out_dir = " << out_dir << '\n' << "#   formats = " << formats
      << (svg ? ",svg" : "") << '\n';
  if (a.study == "miscalibration") out << "#   alphas = " << alphas << '\n';
  out << "#   master seed = " << cfg.seed << '\n';

  if (a.study == "contraction") {
    const ContractionReport report = run_contraction_study(cfg);
    for (ReportFormat f : fmts) out << "wrote " << emit_report(report, f, out_dir, "contraction").string() << '\n';
    print_report(out, report);
    print_slope(out, report, false);
    return kOk;
  }
  const std::vector<ContractionReport> reports = run_miscalibration_study(cfg, alpha_list);
  for (const auto& report : reports) {
    const std::string stem = "miscalibration_alpha" + fmt(report.config.alpha);
    for (ReportFormat f : fmts) {
      if (f == ReportFormat::svg) continue;
      out << "wrote " << emit_report(report, f, out_dir, stem).string() << '\n';
    }
  }
  if (std::find(fmts.begin(), fmts.end(), ReportFormat::svg) != fmts.end()) {
    const auto path = std::filesystem::path(out_dir) / "miscalibration.svg";
    write_text_file(path, report_svg(reports));
    out << "wrote " << path.string() << '\n';
  }
  for (const auto& report : reports) {
    out << "# alpha=" << fmt(report.config.alpha) << '\n';
    print_report(out, report);
  }
  for (const auto& report : reports) print_slope(out, report, true);
  return kOk;
}

int cmd_slope(const SlopeArgs& a, std::ostream& out) {
  print_config(out, {{"input", a.input}});
  const std::string text = read_text_file(a.input);
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  int n_col = -1;
  int r_col = -1;
  std::vector<std::pair<double, double>> points;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (n_col < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "n") n_col = static_cast<int>(i);
        if (fields[i] == "rmse" || fields[i] == "rmse_mean") r_col = static_cast<int>(i);
      }
      if (n_col < 0 || r_col < 0) throw DataError("slope input needs columns 'n' and 'rmse' (or 'rmse_mean')", number);
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max(n_col, r_col));
    if (fields.size() <= need) throw DataError("too few fields", number);
    points.emplace_back(parse_double(fields[static_cast<std::size_t>(n_col)], number),
                        parse_double(fields[static_cast<std::size_t>(r_col)], number));
  }
  if (n_col < 0) throw DataError("empty slope input");
  const SlopeFit f = fit_loglog_slope(points);
  out << "slope=" << fmt(f.slope) << " intercept=" << fmt(f.intercept) << " stderr=" << fmt(f.standard_error);
  if (a.alpha > 0.0 && a.beta > 0.0) out << " theoretical=" << fmt(theoretical_rate(a.alpha, a.beta, a.d));
  out << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian regression on the sphere: spectra, priors, fits and contraction benchmarks", "sphreg"};
  app.require_subcommand(1);

  SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "Tabulate a Matern angular power spectrum");
  sp->add_option("--d", spectrum.d, "Sphere dimension")->capture_default_str();
  sp->add_option("--alpha", spectrum.alpha, "Smoothness (must exceed d/2)")->capture_default_str();
  sp->add_option("--kappa", spectrum.kappa, "Scale")->capture_default_str();
  sp->add_option("--L", spectrum.degree, "Maximum degree")->capture_default_str();
  sp->add_option("--csv", spectrum.csv, "Also write `ell,C` CSV to this path");

  PriorArgs prior;
  auto* pr = app.add_subcommand("simulate-prior", "Draw one truncated Karhunen-Loeve field");
  pr->add_option("--d", prior.d, "Sphere dimension")->capture_default_str();
  pr->add_option("--alpha", prior.alpha, "Smoothness")->capture_default_str();
  pr->add_option("--kappa", prior.kappa, "Scale")->capture_default_str();
  pr->add_option("--L", prior.degree, "Truncation degree")->capture_default_str();
  pr->add_option("--seed", prior.seed, "Seed")->capture_default_str();
  pr->add_option("--out", prior.out, "Coefficient CSV `ell,m,value`");
  pr->add_option("--points", prior.points, "Evaluate the field at this many uniform points (d=2)");
  pr->add_option("--points-out", prior.points_out, "CSV for point evaluations (default stdout)");

  FitArgs fitargs;
  auto* ft = app.add_subcommand("fit", "Fit the truncated posterior to a dataset CSV");
  ft->add_option("--data", fitargs.data, "Dataset CSV `x,y,z,response`")->required();
  ft->add_option("--sigma", fitargs.sigma, "Known noise standard deviation")->capture_default_str();
  ft->add_option("--alpha", fitargs.alpha, "Prior smoothness")->capture_default_str();
  ft->add_option("--kappa", fitargs.kappa, "Prior scale")->capture_default_str();
  ft->add_option("--c", fitargs.c, "Truncation constant for --L auto")->capture_default_str();
  ft->add_option("--L", fitargs.degree, "Truncation degree or 'auto'")->capture_default_str();
  ft->add_flag("--n-from-data", fitargs.n_from_data, "Take n for --L auto from the dataset (always the case)");
  ft->add_flag("--flat", fitargs.flat, "Use a flat (C = 1e12) prior instead of Matern");
  ft->add_option("--out", fitargs.out, "Coefficient CSV `ell,m,mean,variance` (default stdout)");

  BenchmarkArgs bench;
  auto* bm = app.add_subcommand("benchmark", "Run a contraction or miscalibration study");
  bm->add_option("study", bench.study, "contraction | miscalibration")->required();
  bm->add_option("--config", bench.config, "Flat key = value config file");
  bm->add_option("--out", bench.out_dir, "Output directory");
  bm->add_option("--formats", bench.formats, "Comma list of csv,json,svg");
  bm->add_option("--alphas", bench.alphas, "Comma list of prior smoothness values (miscalibration)");
  bm->add_option("--pathway", bench.pathway, "empirical | sequence");
  bm->add_option("--seed", bench.seed, "Master seed");
  bm->add_option("--reps", bench.repetitions, "Repetitions per sample size");
  bm->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
  bm->add_flag("--svg", bench.svg, "Also write an SVG log-log plot");

  SlopeArgs slope;
  auto* sl = app.add_subcommand("slope", "Fit a log-log slope to (n, rmse) rows");
  sl->add_option("--input", slope.input, "CSV with columns n and rmse (or rmse_mean)")->required();
  sl->add_option("--alpha", slope.alpha, "Prior smoothness (to print the theoretical slope)");
  sl->add_option("--beta", slope.beta, "Truth smoothness (to print the theoretical slope)");
  sl->add_option("--d", slope.d, "Sphere dimension")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidParameters;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(spectrum, out);
    if (pr->parsed()) return cmd_simulate_prior(prior, out);
    if (ft->parsed()) return cmd_fit(fitargs, out);
    if (bm->parsed()) return cmd_benchmark(bench, *bm, out);
    if (sl->parsed()) return cmd_slope(slope, out);
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const SingularSystem& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  }
  return kInvalidParameters;
}

}  // namespace sphreg::cli
