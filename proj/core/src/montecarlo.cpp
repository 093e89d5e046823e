#include "lgof/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "lgof/errors.hpp"
#include "lgof/logistic.hpp"

namespace lgof {
namespace {

constexpr double kMaxExcludedFraction = 1e-3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

unsigned resolve_workers(unsigned w) { return w == 0 ? default_workers() : w; }

void check_exclusions(std::size_t excluded, std::size_t reps, const std::string& what) {
  if (static_cast<double>(excluded) > kMaxExcludedFraction * static_cast<double>(reps)) {
    throw NumericError(what + ": " + std::to_string(excluded) + " of " + std::to_string(reps) +
                       " replications failed");
  }
}

// One replication: draw, fit, evaluate. Failures leave NaN in `row`.
void replicate(std::span<const StatisticId> ids, const AlternativeSpec& alt, const McConfig& cfg,
               std::uint64_t seed, std::size_t r, std::span<double> row) {
  std::fill(row.begin(), row.end(), kNaN);
  RngStream stream(seed, r);
  const std::vector<double> x = sample_alternative(alt, cfg.n, stream);
  std::vector<double> y;
  try {
    const ScaledResiduals res = scaled_residuals(x, cfg.fit);
    y.assign(res.values().begin(), res.values().end());
  } catch (const Error&) {
    return;
  }
  try {
    evaluate_many(ids, y, row);
    return;
  } catch (const Error&) {
  }
  // Some statistic failed; keep the others.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    try {
      row[i] = evaluate(ids[i], y).value;
    } catch (const Error&) {
      row[i] = kNaN;
    }
  }
}

double power_se(double p, std::size_t reps) {
  return reps == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

bool same_alpha(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)); }

}  // namespace

unsigned default_workers() {
  if (const char* env = std::getenv("LGOF_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void McConfig::validate() const {
  if (reps < 1) throw DomainError("reps must be at least 1");
  if (n < 2) throw SizeError("sample size n must be at least 2");
  for (const double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  }
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = resolve_workers(workers);
  if (count < workers) workers = static_cast<unsigned>(std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

namespace {

std::vector<std::vector<double>> simulate_with_seed(std::span<const StatisticId> ids, const AlternativeSpec& alt,
                                                    const McConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::size_t k = ids.size();
  std::vector<double> flat(cfg.reps * k);
  parallel_for(cfg.reps, cfg.workers, [&](std::size_t r) {
    replicate(ids, alt, cfg, seed, r, std::span<double>(flat).subspan(r * k, k));
  });
  std::vector<std::vector<double>> out(k, std::vector<double>(cfg.reps));
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    for (std::size_t i = 0; i < k; ++i) out[i][r] = flat[r * k + i];
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> simulate_statistics(std::span<const StatisticId> ids, const AlternativeSpec& alt,
                                                     const McConfig& cfg) {
  return simulate_with_seed(ids, alt, cfg, cfg.seed);
}

std::vector<NullDistribution> simulate_null(std::span<const StatisticId> ids, const McConfig& cfg) {
  auto raw = simulate_with_seed(ids, AlternativeSpec::logistic(), cfg, cfg.seed);
  std::vector<NullDistribution> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    NullDistribution d;
    d.id = ids[i];
    d.n = cfg.n;
    d.values.reserve(cfg.reps);
    for (const double v : raw[i]) {
      if (std::isnan(v)) {
        ++d.excluded;
      } else {
        d.values.push_back(v);
      }
    }
    check_exclusions(d.excluded, cfg.reps, "null simulation of " + ids[i].name());
    std::sort(d.values.begin(), d.values.end());
    out.push_back(std::move(d));
  }
  return out;
}

double empirical_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw SizeError("quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("quantile probability must lie in [0, 1]");
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void CriticalTable::add(const CriticalValue& cv) {
  for (auto& e : entries_) {
    if (e.id == cv.id && e.n == cv.n && same_alpha(e.alpha, cv.alpha)) {
      e = cv;
      return;
    }
  }
  entries_.push_back(cv);
}

void CriticalTable::merge(const CriticalTable& other) {
  for (const auto& e : other.entries_) add(e);
}

const CriticalValue* CriticalTable::find(const StatisticId& id, std::size_t n, double alpha) const {
  for (const auto& e : entries_) {
    if (e.id == id && e.n == n && same_alpha(e.alpha, alpha)) return &e;
  }
  return nullptr;
}

const CriticalValue& CriticalTable::at(const StatisticId& id, std::size_t n, double alpha) const {
  if (const auto* e = find(id, n, alpha)) return *e;
  throw DomainError("no critical value for " + id.name() + " at n = " + std::to_string(n) +
                    ", alpha = " + std::to_string(alpha));
}

CriticalTable critical_values(const NullDistribution& null, std::span<const double> alphas) {
  CriticalTable table;
  const std::size_t m = null.values.size();
  if (m == 0) throw NumericError("no successful replications for " + null.id.name());
  for (const double alpha : alphas) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    CriticalValue cv;
    cv.id = null.id;
    cv.n = null.n;
    cv.alpha = alpha;
    cv.value = empirical_quantile(null.values, 1.0 - alpha);
    cv.reps = m + null.excluded;
    cv.excluded = null.excluded;
    // Order statistics one binomial standard deviation either side bracket
    // the quantile with ~68% coverage.
    const double md = static_cast<double>(m);
    const double d = std::sqrt(md * alpha * (1.0 - alpha));
    const double centre = (1.0 - alpha) * (md - 1.0);
    const auto lo = static_cast<std::size_t>(std::clamp(std::floor(centre - d), 0.0, md - 1.0));
    const auto hi = static_cast<std::size_t>(std::clamp(std::ceil(centre + d), 0.0, md - 1.0));
    cv.mc_std_error = 0.5 * (null.values[hi] - null.values[lo]);
    table.add(cv);
  }
  return table;
}

CriticalTable critical_values(std::span<const StatisticId> ids, const McConfig& cfg) {
  CriticalTable table;
  for (const auto& null : simulate_null(ids, cfg)) table.merge(critical_values(null, cfg.alphas));
  return table;
}

long PowerCell::percent() const { return std::lround(100.0 * power); }

namespace {

std::vector<PowerCell> rejection_rates(std::span<const StatisticId> ids, const AlternativeSpec& alt,
                                       std::optional<double> mixing_p, const McConfig& cfg, std::uint64_t seed,
                                       const CriticalTable& table) {
  for (const auto& id : ids) {
    for (const double alpha : cfg.alphas) table.at(id, cfg.n, alpha);
  }
  const auto raw = simulate_with_seed(ids, alt, cfg, seed);
  std::vector<PowerCell> cells;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::size_t excluded = 0;
    for (const double v : raw[i]) excluded += std::isnan(v) ? 1 : 0;
    check_exclusions(excluded, cfg.reps, ids[i].name() + " under " + alt.label());
    const std::size_t used = cfg.reps - excluded;
    for (const double alpha : cfg.alphas) {
      const double crit = table.at(ids[i], cfg.n, alpha).value;
      std::size_t rejected = 0;
      for (const double v : raw[i]) rejected += (!std::isnan(v) && v > crit) ? 1 : 0;
      PowerCell cell;
      cell.alternative = alt.label();
      cell.mixing_p = mixing_p;
      cell.id = ids[i];
      cell.n = cfg.n;
      cell.alpha = alpha;
      cell.power = used == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(used);
      cell.mc_std_error = power_se(cell.power, used);
      cell.reps = cfg.reps;
      cell.excluded = excluded;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace

std::vector<PowerCell> power_study(std::span<const StatisticId> ids, std::span<const AlternativeSpec> alts,
                                   const McConfig& cfg, const CriticalTable& table) {
  std::vector<PowerCell> cells;
  for (const auto& alt : alts) {
    auto part = rejection_rates(ids, alt, std::nullopt, cfg, mix_seed(cfg.seed, alt.label()), table);
    cells.insert(cells.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return cells;
}

std::vector<PowerCell> local_power_curve(const AlternativeSpec& contaminant, std::span<const double> p_grid,
                                         std::span<const StatisticId> ids, const McConfig& cfg,
                                         const CriticalTable& table) {
  const std::uint64_t seed = mix_seed(cfg.seed, "local:" + contaminant.label());
  std::vector<PowerCell> cells;
  for (const double p : p_grid) {
    const AlternativeSpec alt = AlternativeSpec::mixture(p, contaminant);
    auto part = rejection_rates(ids, alt, p, cfg, seed, table);
    cells.insert(cells.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return cells;
}

PValueResult pvalue_from_null(const NullDistribution& null, double observed) {
  if (!std::isfinite(observed)) throw DomainError("observed statistic must be finite");
  const auto first = std::lower_bound(null.values.begin(), null.values.end(), observed);
  const auto at_least = static_cast<std::size_t>(null.values.end() - first);
  PValueResult r;
  r.reps = null.values.size();
  r.excluded = null.excluded;
  r.pvalue = static_cast<double>(1 + at_least) / static_cast<double>(r.reps + 1);
  return r;
}

PValueResult pvalue_simulated(const StatisticId& id, double observed, const McConfig& cfg) {
  if (!std::isfinite(observed)) throw DomainError("observed statistic must be finite");
  const StatisticId ids[] = {id};
  return pvalue_from_null(simulate_null(ids, cfg).front(), observed);
}

}  // namespace lgof
