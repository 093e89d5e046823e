#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgof/alternatives.hpp"
#include "lgof/estimation.hpp"

namespace lgof {

// Rate a of the Gaussian weight omega_a(t) = exp(-a t^2).
struct WeightSpec {
  double a = 3.0;

  void validate() const;
};

enum class StatKind { T, S, R, KS, CM, AD, WA };

// A registered statistic: kind plus tuning (a for T, v for R, unused
// otherwise). Names are "T3", "T4.5", "S", "R1", "KS", "CM", "AD", "WA".
struct StatisticId {
  StatKind kind = StatKind::T;
  double tuning = 0.0;

  static StatisticId t(double a) { return {StatKind::T, a}; }
  static StatisticId s() { return {StatKind::S, 0.0}; }
  static StatisticId r(int v) { return {StatKind::R, static_cast<double>(v)}; }
  static StatisticId ks() { return {StatKind::KS, 0.0}; }
  static StatisticId cm() { return {StatKind::CM, 0.0}; }
  static StatisticId ad() { return {StatKind::AD, 0.0}; }
  static StatisticId wa() { return {StatKind::WA, 0.0}; }

  // Accepts the names above; also "T" (a = 3) and "R" (v = 1).
  static StatisticId parse(std::string_view text);

  bool has_tuning() const noexcept { return kind == StatKind::T || kind == StatKind::R; }
  std::string name() const;   // e.g. "T3"
  std::string family() const; // e.g. "T"

  friend bool operator==(const StatisticId&, const StatisticId&) = default;
};

// The statistics tabulated by the power study: T3, T4, T5, S, R1, R2, R3,
// KS, CM, AD, WA.
std::vector<StatisticId> standard_battery();
std::string valid_statistic_names();

struct TestOutcome {
  std::string name;
  std::optional<double> tuning;
  double value = 0.0;
  std::optional<double> pvalue;
  std::size_t n = 0;
  // Set by the EDF statistics when some u_(j) had to be clamped away from
  // 0 or 1.
  bool clamped = false;
};

// ---------------------------------------------------------------------------
// Statistics on scaled residuals. Every function takes the residuals
// Y_1..Y_n directly; the ScaledResiduals overloads forward to them.

// Integration-free T_{n,a}. O(n^2); every pairwise term is assembled from
// log-space factors, so no intermediate exceeds 1 in magnitude.
TestOutcome t_stat_closed(std::span<const double> y, const WeightSpec& w);

// T_n = n int |n^{-1} sum (it - tanh(Y_j/2)) e^{itY_j}|^2 omega_a(t) dt by
// Gauss-Hermite quadrature with node doubling to relative 1e-10.
TestOutcome t_stat_quadrature(std::span<const double> y, const WeightSpec& w);

// S_n = n int_{-1}^{1} |n^{-1} sum (t - tanh(Y_j/2)) e^{tY_j}|^2 dt,
// double-sum closed form.
TestOutcome s_stat(std::span<const double> y);

// The same S_n by adaptive Gauss-Kronrod over t in (-1, 1).
TestOutcome s_stat_quadrature(std::span<const double> y);

// Empirical characteristic-function statistic R_{n,v}, v >= 1.
TestOutcome r_stat(std::span<const double> y, int v);

struct EdfOutcomes {
  TestOutcome ks, cm, ad, wa;
};

// Kolmogorov-Smirnov, Cramer-von Mises, Anderson-Darling and Watson
// statistics of u_(j) = F(Y_(j)) with F the standard logistic CDF.
EdfOutcomes edf_stats(std::span<const double> y);

// Evaluates a registered statistic.
TestOutcome evaluate(const StatisticId& id, std::span<const double> y);

// Evaluates several statistics on the same residuals, sharing the sort and
// CDF pass among the EDF statistics. Values are in the order of `ids`.
void evaluate_many(std::span<const StatisticId> ids, std::span<const double> y, std::span<double> out);

inline TestOutcome t_stat_closed(const ScaledResiduals& r, const WeightSpec& w) { return t_stat_closed(r.values(), w); }
inline TestOutcome t_stat_quadrature(const ScaledResiduals& r, const WeightSpec& w) {
  return t_stat_quadrature(r.values(), w);
}
inline TestOutcome s_stat(const ScaledResiduals& r) { return s_stat(r.values()); }
inline TestOutcome r_stat(const ScaledResiduals& r, int v) { return r_stat(r.values(), v); }
inline EdfOutcomes edf_stats(const ScaledResiduals& r) { return edf_stats(r.values()); }

// ---------------------------------------------------------------------------
// Asymptotic objects.

// kappa(t, x): T_n = int Z_n(t)^2 omega(t) dt with
// Z_n(t) = n^{-1/2} sum_j kappa(t, Y_j).
double kappa(double t, double x);

// h(t, x) = -d kappa(t, x) / dx, the coefficient of the first-order
// expansion of kappa(t, (x - mu)/sigma) around (mu, sigma) = (0, 1).
double h_func(double t, double x);

// Z_n(t) for the given residuals.
double z_process(std::span<const double> y, double t);

// int Z_n(t)^2 omega_a(t) dt, by Gauss-Hermite quadrature.
double t_stat_from_kappa(std::span<const double> y, const WeightSpec& w);

// Expectations under L(0, 1), by adaptive quadrature:
//   E[e^{-2X}/(1+e^{-X})^2], E[|X| e^{-X}/(1+e^{-X})^2],
//   E[e^{-X}/(1+e^{-X})^2],  E[|X| e^{-2X}/(1+e^{-X})^2].
std::array<double, 4> moment_identities();

// Covariance kernel K(s, t) of the Gaussian limit of Z_n under L(0, 1),
// for the estimator selected by `method`. Each expectation is an adaptive
// quadrature against the logistic density.
double covariance_kernel(double s, double t, FitMethod method);

// Population discrepancy
//   Delta = int |E[(it - tanh(X/2)) e^{itX}]|^2 omega_a(t) dt
// of the alternative after affine standardisation to mean 0 and variance
// pi^2/3 (the limit of moment-fit residuals). Throws DomainError when the
// alternative has no finite variance.
double delta_alternative(const AlternativeSpec& alt, const WeightSpec& w);

}  // namespace lgof
