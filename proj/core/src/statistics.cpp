#include "lgof/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lgof/errors.hpp"
#include "lgof/logistic.hpp"
#include "lgof/quadrature.hpp"

namespace lgof {
namespace {

constexpr double kPi = std::numbers::pi;

std::string format_tuning(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(6);
  os << v;
  return os.str();
}

// E[g(X)] for X ~ L(0, 1); split at 0 where |x| kinks.
double logistic_expectation(const std::function<double(double)>& g, double abs_tol = 1e-13) {
  auto integrand = [&g](double x) {
    const double d = std::exp(log_pdf_standard(x));
    return d == 0.0 ? 0.0 : g(x) * d;
  };
  return quad::integrate(integrand, -quad::kInf, 0.0, 0.5 * abs_tol, 1e-13) +
         quad::integrate(integrand, 0.0, quad::kInf, 0.5 * abs_tol, 1e-13);
}

void check_residuals(std::span<const double> y) {
  if (y.size() < 2) throw SizeError("statistics need at least 2 residuals");
  for (const double v : y) {
    if (!std::isfinite(v)) throw DomainError("non-finite residual");
  }
}

}  // namespace

void WeightSpec::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("weight rate a must be positive and finite");
  }
}

StatisticId StatisticId::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  std::string upper = s;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "S") return StatisticId::s();
  if (upper == "KS") return StatisticId::ks();
  if (upper == "CM") return StatisticId::cm();
  if (upper == "AD") return StatisticId::ad();
  if (upper == "WA") return StatisticId::wa();
  if (!upper.empty() && (upper[0] == 'T' || upper[0] == 'R')) {
    std::string rest = s.substr(1);
    if (!rest.empty() && (rest[0] == '=' || rest[0] == '_')) rest.erase(0, 1);
    double v = upper[0] == 'T' ? 3.0 : 1.0;
    if (!rest.empty()) {
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
      if (ec != std::errc() || ptr != rest.data() + rest.size()) {
        throw DomainError("unknown statistic '" + s + "'; valid: " + valid_statistic_names());
      }
    }
    if (upper[0] == 'T') {
      WeightSpec{v}.validate();
      return StatisticId::t(v);
    }
    if (v < 1.0 || v != std::floor(v)) throw DomainError("R_{n,v}: v must be a positive integer");
    return StatisticId::r(static_cast<int>(v));
  }
  throw DomainError("unknown statistic '" + s + "'; valid: " + valid_statistic_names());
}

std::string StatisticId::family() const {
  switch (kind) {
    case StatKind::T: return "T";
    case StatKind::S: return "S";
    case StatKind::R: return "R";
    case StatKind::KS: return "KS";
    case StatKind::CM: return "CM";
    case StatKind::AD: return "AD";
    case StatKind::WA: return "WA";
  }
  return "?";
}

std::string StatisticId::name() const {
  return has_tuning() ? family() + format_tuning(tuning) : family();
}

std::vector<StatisticId> standard_battery() {
  return {StatisticId::t(3), StatisticId::t(4), StatisticId::t(5), StatisticId::s(),
          StatisticId::r(1), StatisticId::r(2), StatisticId::r(3), StatisticId::ks(),
          StatisticId::cm(), StatisticId::ad(), StatisticId::wa()};
}

std::string valid_statistic_names() { return "T<a> (e.g. T3), S, R<v> (e.g. R1), KS, CM, AD, WA"; }

TestOutcome t_stat_quadrature(std::span<const double> y, const WeightSpec& w) {
  w.validate();
  check_residuals(y);
  const std::size_t n = y.size();
  std::vector<double> tau(n);
  for (std::size_t j = 0; j < n; ++j) tau[j] = half_tanh(y[j]);

  // |sum_j (it - tau_j) e^{itY_j}|^2 / n
  auto integrand = [&](double t) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = std::cos(t * y[j]);
      const double s = std::sin(t * y[j]);
      re -= tau[j] * c + t * s;
      im += t * c - tau[j] * s;
    }
    return (re * re + im * im) / static_cast<double>(n);
  };
  const auto r = quad::integrate_gaussian_weight(integrand, w.a, 1e-10);
  TestOutcome o;
  o.name = StatisticId::t(w.a).name();
  o.tuning = w.a;
  o.value = r.value;
  o.n = n;
  return o;
}

TestOutcome s_stat_quadrature(std::span<const double> y) {
  check_residuals(y);
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  std::vector<double> tau(n);
  for (std::size_t j = 0; j < n; ++j) tau[j] = half_tanh(y[j]);
  auto integrand = [&](double t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += (t - tau[j]) * std::exp(t * y[j]);
    acc /= nd;
    return nd * acc * acc;
  };
  TestOutcome o;
  o.name = "S";
  o.value = quad::integrate(integrand, -1.0, 1.0, 0.0, 1e-13);
  o.n = n;
  return o;
}

double kappa(double t, double x) {
  const double fx = sigmoid(x);   // (1 + e^{-x})^{-1}
  const double gx = sigmoid(-x);  // e^{-x} (1 + e^{-x})^{-1}
  const double c = std::cos(x * t), s = std::sin(x * t);
  return gx * ((1.0 - t) * c - (t + 1.0) * s) + fx * (-(t + 1.0) * c - (t - 1.0) * s);
}

double h_func(double t, double x) {
  const double fx = sigmoid(x);
  const double gx = sigmoid(-x);
  const double c = std::cos(x * t), s = std::sin(x * t);
  return gx * gx * t * ((t + 1.0) * c - (t - 1.0) * s) + 2.0 * (t * t + 1.0) * (c - s) * fx * gx +
         fx * fx * t * ((t - 1.0) * c - (t + 1.0) * s);
}

double z_process(std::span<const double> y, double t) {
  double acc = 0.0;
  for (const double v : y) acc += kappa(t, v);
  return acc / std::sqrt(static_cast<double>(y.size()));
}

double t_stat_from_kappa(std::span<const double> y, const WeightSpec& w) {
  w.validate();
  check_residuals(y);
  auto integrand = [&](double t) {
    const double z = z_process(y, t);
    return z * z;
  };
  return quad::integrate_gaussian_weight(integrand, w.a, 1e-10).value;
}

std::array<double, 4> moment_identities() {
  // With F(x) = 1/(1+e^{-x}):  e^{-x}/(1+e^{-x}) = F(-x).
  auto F = [](double x) { return sigmoid(x); };
  return {
      logistic_expectation([&](double x) { return F(-x) * F(-x); }, 1e-15),
      logistic_expectation([&](double x) { return std::fabs(x) * F(x) * F(-x); }, 1e-15),
      logistic_expectation([&](double x) { return F(x) * F(-x); }, 1e-15),
      logistic_expectation([&](double x) { return std::fabs(x) * F(-x) * F(-x); }, 1e-15),
  };
}

double covariance_kernel(double s, double t, FitMethod method) {
  if (!std::isfinite(s) || !std::isfinite(t)) throw DomainError("covariance_kernel: non-finite argument");
  auto p1 = [method](double x) { return psi1(x, method); };
  auto p2 = [method](double x) { return psi2(x, method); };
  constexpr double tol = 1e-11;

  const double e_kk = logistic_expectation([&](double x) { return kappa(s, x) * kappa(t, x); }, tol);
  const double eh_s = logistic_expectation([&](double x) { return h_func(s, x); }, tol);
  const double eh_t = logistic_expectation([&](double x) { return h_func(t, x); }, tol);
  const double exh_s = logistic_expectation([&](double x) { return x * h_func(s, x); }, tol);
  const double exh_t = logistic_expectation([&](double x) { return x * h_func(t, x); }, tol);
  const double e1k_s = logistic_expectation([&](double x) { return p1(x) * kappa(s, x); }, tol);
  const double e1k_t = logistic_expectation([&](double x) { return p1(x) * kappa(t, x); }, tol);
  const double e2k_s = logistic_expectation([&](double x) { return p2(x) * kappa(s, x); }, tol);
  const double e2k_t = logistic_expectation([&](double x) { return p2(x) * kappa(t, x); }, tol);
  const double e11 = logistic_expectation([&](double x) { return p1(x) * p1(x); }, tol);
  const double e22 = logistic_expectation([&](double x) { return p2(x) * p2(x); }, tol);
  const double e12 = logistic_expectation([&](double x) { return p1(x) * p2(x); }, tol);

  return e_kk + eh_s * e1k_t + eh_t * e1k_s + exh_s * e2k_t + exh_t * e2k_s + e11 * eh_s * eh_t +
         e22 * exh_s * exh_t + e12 * (eh_s * exh_t + exh_s * eh_t);
}

double delta_alternative(const AlternativeSpec& alt, const WeightSpec& w) {
  w.validate();
  if (!alt.has_finite_variance()) {
    throw DomainError("delta_alternative: " + alt.label() + " has no finite second moment");
  }
  const double m = alt.mean();
  const double scale = kPi / (std::sqrt(3.0) * std::sqrt(alt.variance()));
  const auto [lo, hi] = alt.support();

  // E[g(Z)] with Z = (X - m) * scale, split at the mean (kink of the Laplace
  // density) when it lies inside the support.
  auto expectation = [&](const std::function<double(double)>& g) {
    auto integrand = [&](double x) {
      const double d = alt.pdf(x);
      return d == 0.0 ? 0.0 : g((x - m) * scale) * d;
    };
    constexpr double tol = 1e-11;
    if (m > lo && m < hi) {
      return quad::integrate(integrand, lo, m, tol, 1e-10) + quad::integrate(integrand, m, hi, tol, 1e-10);
    }
    return quad::integrate(integrand, lo, hi, tol, 1e-10);
  };

  auto modulus2 = [&](double t) {
    const double re = expectation([t](double z) { return -half_tanh(z) * std::cos(t * z) - t * std::sin(t * z); });
    const double im = expectation([t](double z) { return t * std::cos(t * z) - half_tanh(z) * std::sin(t * z); });
    return re * re + im * im;
  };
  return quad::integrate_gaussian_weight(modulus2, w.a, 1e-9, 1920, 1e-15).value;
}

}  // namespace lgof
