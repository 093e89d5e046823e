#include "dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

namespace lgof::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\f\v");
  return s.substr(first, last - first + 1);
}

}  // namespace

Dataset read_dataset(std::istream& in, const std::string& source, Transform transform) {
  Dataset d;
  d.source = source;
  d.transform = transform;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw InputError(source + ":" + std::to_string(lineno) + ": not a finite number: '" + std::string(s) + "'");
    }
    if (transform == Transform::Log) {
      if (!(v > 0.0)) {
        throw InputError(source + ":" + std::to_string(lineno) + ": --log needs positive values, got " +
                         std::string(s));
      }
      v = std::log(v);
    }
    d.values.push_back(v);
  }
  if (in.bad()) throw InputError(source + ": read error");
  if (d.values.empty()) throw InputError(source + ": no data values");
  return d;
}

Dataset read_dataset(const std::filesystem::path& path, Transform transform) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return read_dataset(in, path.string(), transform);
}

}  // namespace lgof::cli
