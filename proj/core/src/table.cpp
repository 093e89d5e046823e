#include "lgof/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <vector>

namespace lgof {
namespace {

std::string tuning_text(const StatisticId& id) { return id.has_tuning() ? format_number(id.tuning) : ""; }

// Quotes a CSV field when it contains a separator or a quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

template <class T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

void write_grid(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c == 0) {
        os << std::left << std::setw(static_cast<int>(width[c])) << r[c];
      } else {
        os << "  " << std::right << std::setw(static_cast<int>(width[c])) << r[c];
      }
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

void write_critical_csv(std::ostream& os, const CriticalTable& table) {
  os << "statistic,tuning,n,alpha,value,mc_std_error,excluded_reps\n";
  for (const auto& e : table.entries()) {
    os << e.id.family() << ',' << tuning_text(e.id) << ',' << e.n << ',' << format_number(e.alpha) << ','
       << format_number(e.value) << ',' << format_number(e.mc_std_error) << ',' << e.excluded << '\n';
  }
}

void write_power_csv(std::ostream& os, std::span<const PowerCell> cells) {
  os << "statistic,tuning,n,alpha,alternative,p,value,percent,mc_std_error,excluded_reps\n";
  for (const auto& c : cells) {
    os << c.id.family() << ',' << tuning_text(c.id) << ',' << c.n << ',' << format_number(c.alpha) << ','
       << csv_field(c.alternative) << ',' << (c.mixing_p ? format_number(*c.mixing_p) : "") << ','
       << format_number(c.power) << ',' << c.percent() << ',' << format_number(c.mc_std_error) << ','
       << c.excluded << '\n';
  }
}

void write_critical_text(std::ostream& os, const CriticalTable& table) {
  std::vector<std::pair<std::string, std::size_t>> columns;
  std::vector<double> alphas;
  for (const auto& e : table.entries()) {
    push_unique(columns, {e.id.name(), e.n});
    if (std::none_of(alphas.begin(), alphas.end(), [&](double a) { return a == e.alpha; })) alphas.push_back(e.alpha);
  }
  std::sort(alphas.begin(), alphas.end());
  std::vector<std::string> header{"alpha"};
  for (const auto& [name, n] : columns) header.push_back(name + " n=" + std::to_string(n));
  std::vector<std::vector<std::string>> rows;
  for (const double a : alphas) {
    std::vector<std::string> r{format_number(a)};
    for (const auto& [name, n] : columns) {
      const CriticalValue* cv = nullptr;
      for (const auto& e : table.entries()) {
        if (e.id.name() == name && e.n == n && e.alpha == a) cv = &e;
      }
      r.push_back(cv ? format_number(cv->value) : "-");
    }
    rows.push_back(std::move(r));
  }
  write_grid(os, header, rows);
}

void write_power_text(std::ostream& os, std::span<const PowerCell> cells) {
  std::vector<std::string> stats;
  std::vector<std::tuple<std::string, std::size_t, double>> keys;
  auto row_label = [](const PowerCell& c) { return c.mixing_p ? "p=" + format_number(*c.mixing_p) : c.alternative; };
  for (const auto& c : cells) {
    push_unique(stats, c.id.name());
    push_unique(keys, {row_label(c), c.n, c.alpha});
  }
  std::vector<std::string> header{"alternative", "n", "alpha"};
  header.insert(header.end(), stats.begin(), stats.end());
  std::vector<std::vector<std::string>> rows;
  for (const auto& [label, n, alpha] : keys) {
    std::vector<std::string> r{label, std::to_string(n), format_number(alpha)};
    for (const auto& s : stats) {
      std::string v = "-";
      for (const auto& c : cells) {
        if (c.id.name() == s && c.n == n && c.alpha == alpha && row_label(c) == label) v = std::to_string(c.percent());
      }
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  write_grid(os, header, rows);
}

}  // namespace lgof
