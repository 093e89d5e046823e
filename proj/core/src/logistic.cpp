#include "lgof/logistic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lgof/errors.hpp"

namespace lgof {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

}  // namespace

void LogisticParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
    throw DomainError("LogisticParams: need finite mu and sigma > 0, got mu=" + std::to_string(mu) +
                      ", sigma=" + std::to_string(sigma));
  }
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) noexcept {
  if (x > 0.0) {
    return x + std::log1p(std::exp(-x));
  }
  return std::log1p(std::exp(x));
}

double half_tanh(double x) noexcept { return std::tanh(0.5 * x); }

double log_pdf_standard(double z) noexcept {
  const double a = std::fabs(z);
  return -a - 2.0 * std::log1p(std::exp(-a));
}

double pdf(double x, const LogisticParams& p) {
  p.validate();
  require_finite(x, "pdf");
  const double z = std::fabs((x - p.mu) / p.sigma);
  const double e = std::exp(-z);
  const double d = 1.0 + e;
  return e / (d * d) / p.sigma;
}

double cdf(double x, const LogisticParams& p) {
  p.validate();
  require_finite(x, "cdf");
  return sigmoid((x - p.mu) / p.sigma);
}

double quantile(double u, const LogisticParams& p) {
  p.validate();
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("quantile: u must lie in (0, 1), got " + std::to_string(u));
  }
  // log(u) - log1p(-u) keeps precision for u near 1.
  return p.mu + p.sigma * (std::log(u) - std::log1p(-u));
}

std::vector<double> sample(std::size_t n, const LogisticParams& p, RngStream& stream) {
  p.validate();
  if (n == 0) {
    throw SizeError("sample: n must be at least 1");
  }
  std::vector<double> out(n);
  for (auto& x : out) {
    const double u = stream.uniform();
    x = p.mu + p.sigma * (std::log(u) - std::log1p(-u));
  }
  return out;
}

Vector2 score(double x, const LogisticParams& p) {
  p.validate();
  require_finite(x, "score");
  const double d = x - p.mu;
  const double th = half_tanh(d / p.sigma);
  const double s2 = p.sigma * p.sigma;
  return {th * p.sigma / s2, th * d / s2 - 1.0 / p.sigma};
}

Matrix2 fisher_info(const LogisticParams& p) {
  p.validate();
  const double s2 = p.sigma * p.sigma;
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return {{{1.0 / (3.0 * s2), 0.0}, {0.0, (pi2 + 3.0) / (9.0 * s2)}}};
}

}  // namespace lgof
