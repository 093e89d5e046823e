#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgof/alternatives.hpp"
#include "lgof/estimation.hpp"
#include "lgof/statistics.hpp"

namespace lgof {

// Worker count from LGOF_WORKERS, else the hardware concurrency (at least 1).
unsigned default_workers();

struct McConfig {
  std::size_t reps = 10000;
  std::size_t n = 20;
  std::vector<double> alphas{0.05};
  std::uint64_t seed = 20240601;
  // Affects speed only; every result is a function of (seed, reps, n).
  unsigned workers = 0;  // 0: default_workers()
  FitOptions fit{};

  void validate() const;
};

// Runs body(i) for i in [0, count) on `workers` threads. Items are claimed
// from a shared counter; the first exception is rethrown after all threads
// have joined.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

// Null distribution of one statistic: sorted values from the replications
// that succeeded.
struct NullDistribution {
  StatisticId id;
  std::size_t n = 0;
  std::vector<double> values;
  std::size_t excluded = 0;
};

// Draws cfg.reps samples from L(0,1), fits each and evaluates every statistic
// in `ids` on the same residuals. Replication r uses stream (seed, r).
// Throws NumericError if more than 0.1% of the replications fail for any
// statistic.
std::vector<NullDistribution> simulate_null(std::span<const StatisticId> ids, const McConfig& cfg);

// Statistic values under an arbitrary law; NaN marks a failed replication.
// Stream (seed, r) as above.
std::vector<std::vector<double>> simulate_statistics(std::span<const StatisticId> ids, const AlternativeSpec& alt,
                                                     const McConfig& cfg);

// Linear-interpolation (type 7) quantile of sorted data.
double empirical_quantile(std::span<const double> sorted, double prob);

struct CriticalValue {
  StatisticId id;
  std::size_t n = 0;
  double alpha = 0.05;
  double value = 0.0;
  double mc_std_error = 0.0;
  std::size_t reps = 0;
  std::size_t excluded = 0;
};

class CriticalTable {
 public:
  void add(const CriticalValue& cv);
  void merge(const CriticalTable& other);
  // Throws DomainError if (id, n, alpha) has not been calibrated.
  const CriticalValue& at(const StatisticId& id, std::size_t n, double alpha) const;
  const CriticalValue* find(const StatisticId& id, std::size_t n, double alpha) const;
  const std::vector<CriticalValue>& entries() const noexcept { return entries_; }

 private:
  std::vector<CriticalValue> entries_;
};

// Empirical (1 - alpha) quantiles of the null distribution, for every
// statistic in `ids` and every alpha in cfg.alphas. The standard error comes
// from the order statistics sqrt(reps alpha (1 - alpha)) ranks either side.
CriticalTable critical_values(std::span<const StatisticId> ids, const McConfig& cfg);
CriticalTable critical_values(const NullDistribution& null, std::span<const double> alphas);

struct PowerCell {
  std::string alternative;
  std::optional<double> mixing_p;
  StatisticId id;
  std::size_t n = 0;
  double alpha = 0.05;
  double power = 0.0;  // fraction of replications with statistic > critical value
  double mc_std_error = 0.0;
  std::size_t reps = 0;
  std::size_t excluded = 0;

  long percent() const;  // power rounded to an integer percentage
};

// Rejection rates at the calibrated critical values. Alternative `alt` uses
// streams (mix_seed(seed, alt.label()), r), shared by all statistics.
std::vector<PowerCell> power_study(std::span<const StatisticId> ids, std::span<const AlternativeSpec> alts,
                                   const McConfig& cfg, const CriticalTable& table);

// Power over Mixture(p, contaminant) for each p. Every p reuses the same
// streams, so the contaminated observations of a smaller p are a subset of
// those of a larger one.
std::vector<PowerCell> local_power_curve(const AlternativeSpec& contaminant, std::span<const double> p_grid,
                                         std::span<const StatisticId> ids, const McConfig& cfg,
                                         const CriticalTable& table);

struct PValueResult {
  double pvalue = 1.0;
  std::size_t reps = 0;
  std::size_t excluded = 0;
};

// (1 + #{simulated >= observed}) / (reps + 1).
PValueResult pvalue_from_null(const NullDistribution& null, double observed);
PValueResult pvalue_simulated(const StatisticId& id, double observed, const McConfig& cfg);

}  // namespace lgof
