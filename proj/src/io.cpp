#include "sphreg/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sphreg/error.hpp"

namespace sphreg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// Iterates non-empty lines with 1-based line numbers.
template <typename F>
void for_each_line(const std::string& text, F&& f) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    f(number, line);
  }
}

void expect_header(const std::string& line, const std::string& header, std::size_t number) {
  if (trim(line) != header) throw DataError("expected header '" + header + "', got '" + trim(line) + "'", number);
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last)
    throw DataError("not a number: '" + t + "'", line);
  return v;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Dataset parse_dataset_csv(const std::string& text, double noise_var) {
  std::vector<SpherePoint> points;
  std::vector<double> ys;
  bool header_seen = false;
  for_each_line(text, [&](std::size_t number, const std::string& line) {
    if (!header_seen) {
      expect_header(line, "x,y,z,response", number);
      header_seen = true;
      return;
    }
    const auto f = split_fields(line);
    if (f.size() != 4) throw DataError("expected 4 fields, got " + std::to_string(f.size()), number);
    const double x = parse_double(f[0], number);
    const double y = parse_double(f[1], number);
    const double z = parse_double(f[2], number);
    const double r = parse_double(f[3], number);
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(r)) throw DataError("non-finite response", number);
    if (!(std::abs(norm - 1.0) <= 1e-6)) throw DataError("point is not on the unit sphere (|x| = " + format_double(norm) + ")", number);
    points.emplace_back(x, y, z);
    ys.push_back(r);
  });
  if (!header_seen) throw DataError("empty dataset file");
  if (points.empty()) throw DataError("dataset has no observations");
  return Dataset(std::move(points), std::move(ys), noise_var);
}

Dataset read_dataset_csv(const std::filesystem::path& path, double noise_var) {
  try {
    return parse_dataset_csv(read_text_file(path), noise_var);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string dataset_csv(const Dataset& data) {
  std::string out = "x,y,z,response\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& p = data.points[i];
    out += format_double(p[0]) + ',' + format_double(p[1]) + ',' + format_double(p[2]) + ',' +
           format_double(data.responses[i]) + '\n';
  }
  return out;
}

std::string posterior_csv(const PosteriorModel& model) {
  std::string out = "ell,m,mean,variance\n";
  for (int l = 0; l <= model.truncation; ++l) {
    const auto means = model.means.level(l);
    for (std::size_t m = 0; m < means.size(); ++m)
      out += std::to_string(l) + ',' + std::to_string(m) + ',' + format_double(means[m]) + ',' +
             format_double(model.level_variances[l]) + '\n';
  }
  return out;
}

std::string spectrum_csv(const PowerSpectrum& spec) {
  std::string out = "ell,C\n";
  for (int l = 0; l <= spec.max_degree(); ++l) out += std::to_string(l) + ',' + format_double(spec[l]) + '\n';
  return out;
}

PowerSpectrum parse_spectrum_csv(const std::string& text, int d) {
  std::vector<double> values;
  bool header_seen = false;
  for_each_line(text, [&](std::size_t number, const std::string& line) {
    if (!header_seen) {
      expect_header(line, "ell,C", number);
      header_seen = true;
      return;
    }
    const auto f = split_fields(line);
    if (f.size() != 2) throw DataError("expected 2 fields, got " + std::to_string(f.size()), number);
    const double ell = parse_double(f[0], number);
    if (ell != static_cast<double>(values.size()))
      throw DataError("spectrum degrees must be consecutive from 0", number);
    values.push_back(parse_double(f[1], number));
  });
  if (values.empty()) throw DataError("spectrum file has no levels");
  return PowerSpectrum(d, std::move(values));
}

std::string coefficients_csv(const HarmonicCoefficients& coeffs) {
  std::string out = "ell,m,value\n";
  for (int l = 0; l <= coeffs.max_degree(); ++l) {
    const auto v = coeffs.level(l);
    for (std::size_t m = 0; m < v.size(); ++m)
      out += std::to_string(l) + ',' + std::to_string(m) + ',' + format_double(v[m]) + '\n';
  }
  return out;
}

}  // namespace sphreg
