#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "dataset.hpp"
#include "lgof/errors.hpp"

namespace lgof::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(trim(std::string_view(text).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, const std::string& what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError(what + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(text)) out.push_back(parse_number<double>(item, what));
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text)) out.push_back(parse_number<std::size_t>(item, what));
  return out;
}

PowerConfig parse_power_config(std::istream& in, const std::string& source) {
  PowerConfig cfg;
  bool have_stats = false, have_n = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    const std::string body = trim(s);
    if (body.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw InputError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const std::string ctx = where + ": " + key;
    if (value.empty()) throw InputError(ctx + ": missing value");
    try {
      if (key == "statistics") {
        cfg.statistics.clear();
        for (const auto& name : split(value)) cfg.statistics.push_back(StatisticId::parse(name));
        have_stats = true;
      } else if (key == "n") {
        cfg.sizes = parse_size_list(value, ctx);
        have_n = true;
      } else if (key == "alpha") {
        cfg.alphas = parse_double_list(value, ctx);
      } else if (key == "reps") {
        cfg.reps = parse_number<std::size_t>(value, ctx);
      } else if (key == "calibration_reps") {
        cfg.calibration_reps = parse_number<std::size_t>(value, ctx);
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, ctx);
      } else if (key == "method") {
        cfg.method = parse_fit_method(value);
      } else if (key == "alternative") {
        cfg.alternatives.push_back(AlternativeSpec::parse(value));
      } else if (key == "contaminant") {
        cfg.contaminant = AlternativeSpec::parse(value);
      } else if (key == "p") {
        cfg.mixing_p = parse_double_list(value, ctx);
      } else {
        throw InputError(ctx + ": unknown key");
      }
    } catch (const lgof::Error& e) {
      throw InputError(ctx + ": " + e.what());
    }
  }
  if (!have_stats) throw InputError(source + ": missing 'statistics'");
  if (!have_n) throw InputError(source + ": missing 'n'");
  if (cfg.reps == 0 || cfg.calibration_reps == 0) throw InputError(source + ": reps must be positive");
  for (const double a : cfg.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw InputError(source + ": alpha must lie in (0, 1)");
  }
  for (const auto n : cfg.sizes) {
    if (n < 2) throw InputError(source + ": n must be at least 2");
  }
  if (cfg.contaminant.has_value() == cfg.mixing_p.empty()) {
    throw InputError(source + ": 'contaminant' and 'p' go together");
  }
  for (const double p : cfg.mixing_p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError(source + ": p must lie in [0, 1]");
  }
  if (cfg.alternatives.empty() && !cfg.contaminant) {
    throw InputError(source + ": no 'alternative' lines and no 'contaminant'");
  }
  return cfg;
}

PowerConfig read_power_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return parse_power_config(in, path.string());
}

}  // namespace lgof::cli
