#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lgof/rng.hpp"

namespace lgof {

// Location-scale parameters of the logistic law L(mu, sigma).
struct LogisticParams {
  double mu = 0.0;
  double sigma = 1.0;

  // Throws DomainError unless sigma > 0 and both fields are finite.
  void validate() const;

  friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

using Vector2 = std::array<double, 2>;
using Matrix2 = std::array<std::array<double, 2>, 2>;

// Stable building blocks shared by the statistics kernels. None of these
// exponentiates a positive argument.

// 1 / (1 + exp(-x)).
double sigmoid(double x) noexcept;
// log(1 + exp(x)).
double softplus(double x) noexcept;
// tanh(x / 2) = (1 - exp(-x)) / (1 + exp(-x)).
double half_tanh(double x) noexcept;
// log of the standard logistic density.
double log_pdf_standard(double z) noexcept;

double pdf(double x, const LogisticParams& p = {});
double cdf(double x, const LogisticParams& p = {});
double quantile(double u, const LogisticParams& p = {});

// n draws by inversion of uniform variates from `stream`.
std::vector<double> sample(std::size_t n, const LogisticParams& p, RngStream& stream);

// Score vector U_(mu,sigma)(x) of a single observation.
Vector2 score(double x, const LogisticParams& p = {});

// sigma^-2 diag(1/3, (pi^2 + 3)/9).
Matrix2 fisher_info(const LogisticParams& p = {});

}  // namespace lgof
