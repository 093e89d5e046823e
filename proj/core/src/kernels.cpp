// Pairwise O(n^2) kernels of the residual-based statistics.
//
// Residuals are sorted before summation so that every statistic is a
// bit-exact symmetric function of its input.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lgof/errors.hpp"
#include "lgof/logistic.hpp"
#include "lgof/statistics.hpp"

namespace lgof {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

std::vector<double> sorted_copy(std::span<const double> y) {
  if (y.size() < 2) throw SizeError("statistics need at least 2 residuals");
  std::vector<double> s(y.begin(), y.end());
  for (const double v : s) {
    if (!std::isfinite(v)) throw DomainError("non-finite residual");
  }
  std::sort(s.begin(), s.end());
  return s;
}

// J_m(P) = int_{-1}^{1} t^m e^{tP} dt, m = 0, 1, 2, as even power series in
// P; only used for |P| < 1, where 10 terms reach full precision.
struct JMoments {
  double j0, j1, j2;
};

JMoments j_moments_series(double p) {
  // c0[i] = 2 / ((2i)! (2i+1)), c1[i] = 2 / ((2i+1)! (2i+3)), c2[i] = 2 / ((2i)! (2i+3))
  static const auto coeffs = [] {
    std::array<std::array<double, 10>, 3> c{};
    double fact_even = 1.0;  // (2i)!
    for (int i = 0; i < 10; ++i) {
      if (i > 0) fact_even *= (2.0 * i - 1.0) * (2.0 * i);
      const double fact_odd = fact_even * (2.0 * i + 1.0);
      c[0][i] = 2.0 / (fact_even * (2.0 * i + 1.0));
      c[1][i] = 2.0 / (fact_odd * (2.0 * i + 3.0));
      c[2][i] = 2.0 / (fact_even * (2.0 * i + 3.0));
    }
    return c;
  }();
  const double q = p * p;
  double j0 = 0.0, j1 = 0.0, j2 = 0.0;
  for (int i = 9; i >= 0; --i) {
    j0 = j0 * q + coeffs[0][i];
    j1 = j1 * q + coeffs[1][i];
    j2 = j2 * q + coeffs[2][i];
  }
  return {j0, p * j1, j2};
}

// Per-observation factors of the closed-form bracket. With d = 1/(1 + e^Y):
//   d, e^Y d, e^{2Y} d, e^{-Y} d,
// so every exponential of the bracket, pre-divided by (e^{Yj}+1)(e^{Yk}+1),
// is a product of one factor from j and one from k.
struct SFactors {
  double d, e1, e2, em1;
};

SFactors s_factors(double y) {
  const double d = sigmoid(-y);
  const double e1 = sigmoid(y);
  return {d, e1, e1 * std::exp(y), d * std::exp(-y)};
}

// The closed-form bracket over (Y+)^3, doubled (the bracket carries a factor
// 1/2). Cancels to O((Y+)^3), so it is used for |Y+| >= 1 only.
double s_pair_closed(double p, const SFactors& j, const SFactors& k) {
  const double bracket = j.e2 * k.e2 - j.em1 * k.em1 + (1.0 - p) * (j.e2 * k.e1 + j.e1 * k.e2) +
                         j.e1 * k.e1 * (2.0 * p * p - 2.0 * p + 1.0) - (1.0 + p) * (j.em1 * k.d + j.d * k.em1) -
                         (2.0 * p * p + 2.0 * p + 1.0) * j.d * k.d;
  return 2.0 * bracket / (p * p * p);
}

// The same bracket with every exponential evaluated in log space; safe for
// residuals whose e^{2Y} factors would overflow.
double s_pair_closed_log(double yj, double yk) {
  const double p = yj + yk;
  const double log_den = softplus(yj) + softplus(yk);
  auto ex = [log_den](double exponent) { return std::exp(exponent - log_den); };
  const double bracket = ex(2.0 * p) - ex(-p) + (1.0 - p) * (ex(2.0 * yj + yk) + ex(yj + 2.0 * yk)) +
                         ex(p) * (2.0 * p * p - 2.0 * p + 1.0) - (1.0 + p) * (ex(-yj) + ex(-yk)) -
                         (2.0 * p * p + 2.0 * p + 1.0) * ex(0.0);
  return 2.0 * bracket / (p * p * p);
}

// sinh(P)/P; Taylor in P^2 below |P| = 1, else from per-observation e^{+-Y}.
double sinh_over(double p, double ej, double ek, double emj, double emk) {
  if (std::fabs(p) < 1.0) {
    // sum_i q^i / (2i+1)!
    static const auto coeffs = [] {
      std::array<double, 11> c{};
      double f = 1.0;
      for (int i = 0; i < 11; ++i) {
        if (i > 0) f *= (2.0 * i) * (2.0 * i + 1.0);
        c[i] = 1.0 / f;
      }
      return c;
    }();
    const double q = p * p;
    double acc = 0.0;
    for (int i = 10; i >= 0; --i) acc = acc * q + coeffs[i];
    return acc;
  }
  return 0.5 * (ej * ek - emj * emk) / p;
}

TestOutcome outcome(std::string name, std::optional<double> tuning, double value, std::size_t n) {
  TestOutcome o;
  o.name = std::move(name);
  o.tuning = tuning;
  o.value = value;
  o.n = n;
  return o;
}

struct EdfValues {
  double ks, cm, ad, wa;
  bool clamped;
};

EdfValues edf_values(std::span<const double> y) {
  const std::vector<double> s = sorted_copy(y);
  const std::size_t n = s.size();
  const double nd = static_cast<double>(n);
  constexpr double kEps = 1e-15;

  std::vector<double> u(n), log_u(n), log_1mu(n);
  bool clamped = false;
  for (std::size_t j = 0; j < n; ++j) {
    double v = sigmoid(s[j]);
    if (v < kEps || v > 1.0 - kEps) {
      v = std::clamp(v, kEps, 1.0 - kEps);
      clamped = true;
      log_u[j] = std::log(v);
      log_1mu[j] = std::log1p(-v);
    } else {
      log_u[j] = -softplus(-s[j]);
      log_1mu[j] = -softplus(s[j]);
    }
    u[j] = v;
  }

  double d_plus = 0.0, d_minus = 0.0, cm = 1.0 / (12.0 * nd), ad_sum = 0.0, u_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double i = static_cast<double>(j + 1);
    d_plus = std::max(d_plus, i / nd - u[j]);
    d_minus = std::max(d_minus, u[j] - (i - 1.0) / nd);
    const double dev = u[j] - (2.0 * i - 1.0) / (2.0 * nd);
    cm += dev * dev;
    ad_sum += (2.0 * i - 1.0) * (log_u[j] + log_1mu[n - 1 - j]);
    u_sum += u[j];
  }
  const double ad = -nd - ad_sum / nd;
  const double u_bar = u_sum / nd;
  const double wa = cm - nd * (u_bar - 0.5) * (u_bar - 0.5);
  return {std::max(d_plus, d_minus), cm, ad, wa, clamped};
}

}  // namespace

TestOutcome t_stat_closed(std::span<const double> y, const WeightSpec& w) {
  w.validate();
  const std::vector<double> s = sorted_copy(y);
  const std::size_t n = s.size();
  const double a = w.a;
  const double a4 = 4.0 * a * a;
  const double inv4a = 1.0 / (4.0 * a);

  std::vector<double> f(n), g(n);
  for (std::size_t j = 0; j < n; ++j) {
    f[j] = sigmoid(s[j]);
    g[j] = sigmoid(-s[j]);
  }

  // term(j,k) = exp(-(Y-)^2/4a) [ c1 F_j F_k - c2 F_j G_k - c3 G_j F_k + c4 G_j G_k ]
  // where exp(-(Y+)^2/4a + Y./a) = exp(-(Y-)^2/4a) and F = sigmoid(Y), G = sigmoid(-Y)
  // absorb the (e^{Y}+1)^{-1} factors.
  double diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    diag += (a4 + 2.0 * a) * (f[j] * f[j] + g[j] * g[j]) - 2.0 * (a4 - 2.0 * a) * f[j] * g[j];
  }
  double off = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double row = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double m = s[j] - s[k];
      const double m2 = m * m;
      const double c1 = a4 + 2.0 * a - m2;
      const double c2 = a4 + 2.0 * a * (2.0 * m - 1.0) + m2;
      const double c3 = a4 - 2.0 * a * (2.0 * m + 1.0) + m2;
      const double c4 = c1;
      row += std::exp(-m2 * inv4a) *
             (c1 * f[j] * f[k] - c2 * f[j] * g[k] - c3 * g[j] * f[k] + c4 * g[j] * g[k]);
    }
    off += row;
  }
  const double value = std::sqrt(kPi / a) / (a4 * static_cast<double>(n)) * (diag + 2.0 * off);
  if (!std::isfinite(value)) throw NumericError("T_{n,a}: non-finite value");
  return outcome(StatisticId::t(a).name(), a, value, n);
}

TestOutcome s_stat(std::span<const double> y) {
  const std::vector<double> s = sorted_copy(y);
  const std::size_t n = s.size();
  constexpr double kFactorLimit = 300.0;  // e^{2Y} stays finite below this
  const bool log_space = std::fabs(s.front()) > kFactorLimit || std::fabs(s.back()) > kFactorLimit;
  std::vector<double> tau(n);
  std::vector<SFactors> fac(n);
  for (std::size_t j = 0; j < n; ++j) {
    tau[j] = half_tanh(s[j]);
    if (!log_space) fac[j] = s_factors(s[j]);
  }

  auto pair = [&](std::size_t j, std::size_t k) {
    const double p = s[j] + s[k];
    if (std::fabs(p) < 1.0) {
      const JMoments m = j_moments_series(p);
      return m.j2 - (tau[j] + tau[k]) * m.j1 + tau[j] * tau[k] * m.j0;
    }
    return log_space ? s_pair_closed_log(s[j], s[k]) : s_pair_closed(p, fac[j], fac[k]);
  };
  double diag = 0.0, off = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    diag += pair(j, j);
    double row = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) row += pair(j, k);
    off += row;
  }
  const double value = (diag + 2.0 * off) / static_cast<double>(n);
  if (!std::isfinite(value)) throw NumericError("S_n: non-finite value (overflow of e^{t(Yj+Yk)})");
  return outcome("S", std::nullopt, value, n);
}

TestOutcome r_stat(std::span<const double> y, int v) {
  if (v < 1) throw DomainError("R_{n,v}: v must be a positive integer");
  const std::vector<double> s = sorted_copy(y);
  const std::size_t n = s.size();
  const double nd = static_cast<double>(n);
  const double c = 4.0 * v * v * kPi2;

  if (std::fabs(s.front()) > 350.0 || std::fabs(s.back()) > 350.0) {
    throw NumericError("R_{n,v}: sinh overflow, max |Y| = " +
                       std::to_string(std::max(std::fabs(s.front()), std::fabs(s.back()))));
  }
  std::vector<double> ep(n), em(n);
  for (std::size_t j = 0; j < n; ++j) {
    ep[j] = std::exp(s[j]);
    em[j] = std::exp(-s[j]);
  }
  double pair_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double pjj = 2.0 * s[j];
    pair_sum += sinh_over(pjj, ep[j], ep[j], em[j], em[j]) / (c + pjj * pjj);
  }
  double off = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double row = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double p = s[j] + s[k];
      row += sinh_over(p, ep[j], ep[k], em[j], em[k]) / (c + p * p);
    }
    off += row;
  }
  pair_sum += 2.0 * off;

  double s_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = s[j];
    const double ch = std::cosh(x), sh = std::sinh(x);
    double sv = 0.0;
    for (int k = 1; k <= v; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double q = x * x + odd * odd * kPi2;
      sv += odd * (q * ch - 2.0 * x * sh) / (q * q);
    }
    s_sum += sv;
  }

  double tail = 2.0 * v * kPi2 / 3.0;
  for (int k = 1; k <= v - 1; ++k) tail += 2.0 * (v - k) / (static_cast<double>(k) * k);

  const double value = c / nd * pair_sum - 4.0 * kPi2 * s_sum + nd * tail;
  if (!std::isfinite(value)) throw NumericError("R_{n,v}: non-finite value");
  return outcome("R" + std::to_string(v), static_cast<double>(v), value, n);
}

EdfOutcomes edf_stats(std::span<const double> y) {
  const EdfValues e = edf_values(y);
  const std::size_t n = y.size();
  EdfOutcomes out{outcome("KS", std::nullopt, e.ks, n), outcome("CM", std::nullopt, e.cm, n),
                  outcome("AD", std::nullopt, e.ad, n), outcome("WA", std::nullopt, e.wa, n)};
  out.ks.clamped = out.cm.clamped = out.ad.clamped = out.wa.clamped = e.clamped;
  return out;
}

TestOutcome evaluate(const StatisticId& id, std::span<const double> y) {
  switch (id.kind) {
    case StatKind::T: return t_stat_closed(y, WeightSpec{id.tuning});
    case StatKind::S: return s_stat(y);
    case StatKind::R: return r_stat(y, static_cast<int>(std::lround(id.tuning)));
    case StatKind::KS: return edf_stats(y).ks;
    case StatKind::CM: return edf_stats(y).cm;
    case StatKind::AD: return edf_stats(y).ad;
    case StatKind::WA: return edf_stats(y).wa;
  }
  throw DomainError("unknown statistic");
}

void evaluate_many(std::span<const StatisticId> ids, std::span<const double> y, std::span<double> out) {
  if (out.size() != ids.size()) throw DomainError("evaluate_many: output size mismatch");
  std::optional<EdfValues> edf;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const StatisticId& id = ids[i];
    switch (id.kind) {
      case StatKind::KS:
      case StatKind::CM:
      case StatKind::AD:
      case StatKind::WA: {
        if (!edf) edf = edf_values(y);
        out[i] = id.kind == StatKind::KS   ? edf->ks
                 : id.kind == StatKind::CM ? edf->cm
                 : id.kind == StatKind::AD ? edf->ad
                                           : edf->wa;
        break;
      }
      default: out[i] = evaluate(id, y).value;
    }
  }
}

}  // namespace lgof
