#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgof::cli {

// Malformed input or usage; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Transform { None, Log };

struct Dataset {
  std::vector<double> values;
  std::string source;
  Transform transform = Transform::None;
};

// One number per line. Blank lines and '#' comments are skipped; parsing is
// locale-independent. Any other line aborts with its line number.
Dataset read_dataset(std::istream& in, const std::string& source, Transform transform);
Dataset read_dataset(const std::filesystem::path& path, Transform transform);

}  // namespace lgof::cli
