#include "lgof/estimation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "lgof/errors.hpp"

namespace lgof {
namespace {

constexpr double kSqrt3OverPi = 0.5513288954217920495;  // sqrt(3) / pi

void check_sample(std::span<const double> data) {
  if (data.size() < 2) {
    throw SizeError("need at least 2 observations, got " + std::to_string(data.size()));
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw DomainError("observation " + std::to_string(i + 1) + " is not finite");
    }
  }
}

struct EquationState {
  Vector2 g;      // averaged likelihood equations
  Matrix2 jac;    // d g / d (mu, sigma)
};

EquationState equations_and_jacobian(std::span<const double> data, double mu, double sigma) {
  const double n = static_cast<double>(data.size());
  double g1 = 0.0, g2 = 0.0, d11 = 0.0, d12 = 0.0, d21 = 0.0, d22 = 0.0;
  for (const double x : data) {
    const double z = (x - mu) / sigma;
    const double th = half_tanh(z);
    const double dth = 0.5 * (1.0 - th * th);  // d tanh(z/2) / dz
    g1 += th;
    g2 += z * th;
    const double dzth = th + z * dth;  // d (z tanh(z/2)) / dz
    // dz/dmu = -1/sigma, dz/dsigma = -z/sigma
    d11 -= dth / sigma;
    d12 -= dth * z / sigma;
    d21 -= dzth / sigma;
    d22 -= dzth * z / sigma;
  }
  return {{g1 / n, g2 / n - 1.0}, {{{d11 / n, d12 / n}, {d21 / n, d22 / n}}}};
}

Matrix2 finite_difference_jacobian(std::span<const double> data, double mu, double sigma) {
  const double hm = 1e-6 * std::max(1.0, std::fabs(mu));
  const double hs = 1e-6 * sigma;
  const Vector2 gmp = likelihood_equations(data, {mu + hm, sigma});
  const Vector2 gmm = likelihood_equations(data, {mu - hm, sigma});
  const Vector2 gsp = likelihood_equations(data, {mu, sigma + hs});
  const Vector2 gsm = likelihood_equations(data, {mu, sigma - hs});
  return {{{(gmp[0] - gmm[0]) / (2 * hm), (gsp[0] - gsm[0]) / (2 * hs)},
           {(gmp[1] - gmm[1]) / (2 * hm), (gsp[1] - gsm[1]) / (2 * hs)}}};
}

double residual_norm(const Vector2& g) { return std::max(std::fabs(g[0]), std::fabs(g[1])); }

bool solve2(const Matrix2& a, const Vector2& b, Vector2& x) {
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double scale = std::fabs(a[0][0] * a[1][1]) + std::fabs(a[0][1] * a[1][0]);
  if (!std::isfinite(det) || std::fabs(det) <= 1e-14 * scale || det == 0.0) {
    return false;
  }
  x = {(b[0] * a[1][1] - b[1] * a[0][1]) / det, (a[0][0] * b[1] - a[1][0] * b[0]) / det};
  return std::isfinite(x[0]) && std::isfinite(x[1]);
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(FitMethod m) noexcept {
  return m == FitMethod::Moments ? "moments" : "ml";
}

FitMethod parse_fit_method(std::string_view text) {
  const std::string t = lowercase(text);
  if (t == "moments" || t == "mm" || t == "me" || t == "moment") return FitMethod::Moments;
  if (t == "ml" || t == "mle" || t == "maxlikelihood" || t == "max-likelihood") return FitMethod::MaxLikelihood;
  throw DomainError("unknown fit method '" + std::string(text) + "' (expected moments or ml)");
}

FitResult fit_moments(std::span<const double> data, VarianceDivisor divisor) {
  check_sample(data);
  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (const double x : data) mean += x;
  mean /= n;
  double ss = 0.0;
  for (const double x : data) ss += (x - mean) * (x - mean);
  if (!(ss > 0.0)) {
    throw DegenerateSampleError("all observations are equal; scale cannot be estimated");
  }
  const double denom = divisor == VarianceDivisor::N ? n : n - 1.0;
  return {mean, kSqrt3OverPi * std::sqrt(ss / denom), FitMethod::Moments, 0, true};
}

Vector2 likelihood_equations(std::span<const double> data, const LogisticParams& p) {
  p.validate();
  const double n = static_cast<double>(data.size());
  double g1 = 0.0, g2 = 0.0;
  for (const double x : data) {
    const double z = (x - p.mu) / p.sigma;
    const double th = half_tanh(z);
    g1 += th;
    g2 += z * th;
  }
  return {g1 / n, g2 / n - 1.0};
}

double log_likelihood(std::span<const double> data, const LogisticParams& p) {
  p.validate();
  const double log_sigma = std::log(p.sigma);
  double ll = 0.0;
  for (const double x : data) {
    ll += log_pdf_standard((x - p.mu) / p.sigma) - log_sigma;
  }
  return ll;
}

FitResult fit_mle(std::span<const double> data, const FitOptions& options) {
  const FitResult start = fit_moments(data, options.divisor);
  double mu = start.mu_hat;
  double sigma = start.sigma_hat;
  double ll = log_likelihood(data, {mu, sigma});

  for (int it = 0; it <= options.max_iterations; ++it) {
    EquationState state = equations_and_jacobian(data, mu, sigma);
    if (residual_norm(state.g) <= options.tolerance) {
      // One polishing step; kept only if it improves the residual.
      Vector2 step;
      if (solve2(state.jac, state.g, step) && sigma - step[1] > 0.0) {
        const Vector2 g_new = likelihood_equations(data, {mu - step[0], sigma - step[1]});
        if (residual_norm(g_new) < residual_norm(state.g)) {
          mu -= step[0];
          sigma -= step[1];
        }
      }
      return {mu, sigma, FitMethod::MaxLikelihood, it, true};
    }
    if (it == options.max_iterations) break;

    Vector2 step;
    if (!solve2(state.jac, state.g, step)) {
      const Matrix2 fd = finite_difference_jacobian(data, mu, sigma);
      if (!solve2(fd, state.g, step)) {
        throw ConvergenceError("fit_mle: singular Jacobian", mu, sigma, it);
      }
    }

    // Step halving until the likelihood does not decrease.
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 50; ++halving, lambda *= 0.5) {
      const double mu_c = mu - lambda * step[0];
      const double sigma_c = sigma - lambda * step[1];
      if (!(sigma_c > 0.0) || !std::isfinite(mu_c)) continue;
      const double ll_c = log_likelihood(data, {mu_c, sigma_c});
      if (ll_c >= ll - 1e-13 * (1.0 + std::fabs(ll))) {
        mu = mu_c;
        sigma = sigma_c;
        ll = std::max(ll, ll_c);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw ConvergenceError("fit_mle: no likelihood-improving step", mu, sigma, it);
    }
  }
  throw ConvergenceError("fit_mle: no convergence after " + std::to_string(options.max_iterations) +
                             " iterations",
                         mu, sigma, options.max_iterations);
}

FitResult fit(std::span<const double> data, const FitOptions& options) {
  return options.method == FitMethod::Moments ? fit_moments(data, options.divisor)
                                              : fit_mle(data, options);
}

ScaledResiduals::ScaledResiduals(std::vector<double> values, FitResult fit)
    : values_(std::move(values)), fit_(fit) {
  if (values_.size() < 2) {
    throw SizeError("scaled residuals need n >= 2");
  }
  if (!fit_.converged) {
    throw NumericError("scaled residuals require a converged fit");
  }
  for (const double y : values_) {
    if (!std::isfinite(y)) throw NumericError("non-finite scaled residual");
  }
}

ScaledResiduals ScaledResiduals::assume_standardized(std::vector<double> values) {
  return ScaledResiduals(std::move(values), FitResult{0.0, 1.0, FitMethod::Moments, 0, true});
}

ScaledResiduals scaled_residuals(std::span<const double> data, const FitOptions& options) {
  const FitResult f = fit(data, options);
  std::vector<double> y(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    y[j] = (data[j] - f.mu_hat) / f.sigma_hat;
  }
  return ScaledResiduals(std::move(y), f);
}

double psi1(double x, FitMethod method) {
  if (!std::isfinite(x)) throw DomainError("psi1: argument must be finite");
  return method == FitMethod::Moments ? x : 3.0 * half_tanh(x);
}

double psi2(double x, FitMethod method) {
  if (!std::isfinite(x)) throw DomainError("psi2: argument must be finite");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  if (method == FitMethod::Moments) {
    return 0.5 * (3.0 * x * x / pi2 - 1.0);
  }
  return 9.0 / (pi2 + 3.0) * (x * half_tanh(x) - 1.0);
}

}  // namespace lgof
