#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lgof/logistic.hpp"

namespace lgof {

enum class FitMethod { Moments, MaxLikelihood };

// Divisor of the sample variance inside the moment estimator of sigma.
enum class VarianceDivisor { N, NMinusOne };

std::string_view to_string(FitMethod m) noexcept;
// Accepts "moments"/"mm"/"me" and "ml"/"mle"/"maxlikelihood" (case-insensitive).
FitMethod parse_fit_method(std::string_view text);

struct FitResult {
  double mu_hat = 0.0;
  double sigma_hat = 1.0;
  FitMethod method = FitMethod::Moments;
  int iterations = 0;
  bool converged = false;

  LogisticParams params() const { return {mu_hat, sigma_hat}; }
};

struct FitOptions {
  FitMethod method = FitMethod::Moments;
  VarianceDivisor divisor = VarianceDivisor::N;
  int max_iterations = 100;
  double tolerance = 1e-10;
};

// mu_hat = mean, sigma_hat = sqrt(3)/pi * S_n.
FitResult fit_moments(std::span<const double> data, VarianceDivisor divisor = VarianceDivisor::N);

// Damped Newton on the score equations, started from the moment fit.
// Throws ConvergenceError (carrying the last iterate) if the equation
// residuals do not fall below `tolerance` within `max_iterations`.
FitResult fit_mle(std::span<const double> data, const FitOptions& options = {});

FitResult fit(std::span<const double> data, const FitOptions& options = {});

// Likelihood equations averaged over the sample:
//   ( mean tanh(z/2),  mean z tanh(z/2) - 1 ),  z = (x - mu) / sigma.
// Both vanish at the ML estimate.
Vector2 likelihood_equations(std::span<const double> data, const LogisticParams& p);

double log_likelihood(std::span<const double> data, const LogisticParams& p);

// Standardised sample Y_j = (X_j - mu_hat) / sigma_hat together with the fit
// that produced it.
class ScaledResiduals {
 public:
  ScaledResiduals(std::vector<double> values, FitResult fit);

  // Treat `values` as residuals of an exact (0, 1) fit. Used to feed
  // hand-built residual vectors to the statistics.
  static ScaledResiduals assume_standardized(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  const FitResult& fit() const noexcept { return fit_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
  FitResult fit_;
};

ScaledResiduals scaled_residuals(std::span<const double> data, const FitOptions& options = {});

// Influence functions of the linear representations
//   sqrt(n) mu_hat       = n^{-1/2} sum psi1(X_j) + o_P(1)
//   sqrt(n) (sigma_hat-1) = n^{-1/2} sum psi2(X_j) + o_P(1)
// under L(0, 1).
double psi1(double x, FitMethod method);
double psi2(double x, FitMethod method);

}  // namespace lgof
