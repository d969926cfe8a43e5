#pragma once

#include <filesystem>
#include <string>

#include "sphreg/regression.hpp"
#include "sphreg/sequence_model.hpp"
#include "sphreg/spectra.hpp"

namespace sphreg {

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] std::string format_double(double v);

/// Parses a full decimal float; throws DataError otherwise.
[[nodiscard]] double parse_double(const std::string& text, std::size_t line = 0);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Dataset CSV with header `x,y,z,response`. sigma is not stored in the file.
[[nodiscard]] Dataset parse_dataset_csv(const std::string& text, double noise_var);
[[nodiscard]] Dataset read_dataset_csv(const std::filesystem::path& path, double noise_var);
[[nodiscard]] std::string dataset_csv(const Dataset& data);

/// Fitted coefficients, header `ell,m,mean,variance`, one row per retained mode.
[[nodiscard]] std::string posterior_csv(const PosteriorModel& model);

/// Tabulated spectrum, header `ell,C`.
[[nodiscard]] std::string spectrum_csv(const PowerSpectrum& spec);
[[nodiscard]] PowerSpectrum parse_spectrum_csv(const std::string& text, int d);

/// Coefficient table, header `ell,m,value`.
[[nodiscard]] std::string coefficients_csv(const HarmonicCoefficients& coeffs);

}  // namespace sphreg
