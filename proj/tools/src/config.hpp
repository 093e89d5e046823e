#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "lgof/alternatives.hpp"
#include "lgof/estimation.hpp"
#include "lgof/statistics.hpp"

namespace lgof::cli {

// Flat "key = value" power-study description. `alternative` may repeat;
// list-valued keys take comma-separated values.
//
//   statistics = T3, T4, T5, S, R1, R2, R3, KS, CM, AD, WA
//   n = 20, 50
//   alpha = 0.05
//   reps = 10000
//   calibration_reps = 100000
//   seed = 2024
//   method = moments
//   alternative = C
//   alternative = LN(1)
//
// A local-power study replaces the alternatives by
//   contaminant = C
//   p = 0, 0.2, 0.5, 0.8, 1
struct PowerConfig {
  std::vector<StatisticId> statistics;
  std::vector<std::size_t> sizes;
  std::vector<double> alphas{0.05};
  std::size_t reps = 10000;
  std::size_t calibration_reps = 100000;
  std::uint64_t seed = 20240601;
  FitMethod method = FitMethod::Moments;
  std::vector<AlternativeSpec> alternatives;
  std::optional<AlternativeSpec> contaminant;
  std::vector<double> mixing_p;
};

// Throws InputError naming the line and key of the first problem.
PowerConfig parse_power_config(std::istream& in, const std::string& source);
PowerConfig read_power_config(const std::filesystem::path& path);

// Comma-separated lists, locale-independent.
std::vector<double> parse_double_list(const std::string& text, const std::string& what);
std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what);

}  // namespace lgof::cli
