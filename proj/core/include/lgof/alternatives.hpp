#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgof/rng.hpp"

namespace lgof {

enum class AltKind {
  Logistic,
  Normal,
  StudentT,
  Cauchy,
  Laplace,
  LogNormal,
  Gamma,
  Uniform,
  Beta,
  ChiSquare,
  Mixture,
};

// A sampleable distribution used as the data-generating law in power
// studies. Mixture(p, c) draws from the contaminant c with probability p and
// from L(0, 1) otherwise.
class AlternativeSpec {
 public:
  static AlternativeSpec logistic(double mu = 0.0, double sigma = 1.0);
  static AlternativeSpec normal(double mean = 0.0, double sd = 1.0);
  static AlternativeSpec student_t(double df);
  static AlternativeSpec cauchy(double location = 0.0, double scale = 1.0);
  static AlternativeSpec laplace(double location = 0.0, double scale = 1.0);
  // exp(N(0, s^2)).
  static AlternativeSpec lognormal(double s);
  // Shape k, scale 1.
  static AlternativeSpec gamma(double shape);
  static AlternativeSpec uniform(double lo, double hi);
  // U(-sqrt 3, sqrt 3), the unit-variance uniform.
  static AlternativeSpec unit_uniform();
  static AlternativeSpec beta(double alpha, double beta);
  static AlternativeSpec chi_square(double df);
  static AlternativeSpec mixture(double p, const AlternativeSpec& contaminant);

  // Parses labels such as "L(0,1)", "N", "t(2)", "C", "LP", "LN(1.5)",
  // "Gamma(2)", "U", "U(0,1)", "B(2,2)", "chi2(5)", "Mix(0.2,C)".
  static AlternativeSpec parse(std::string_view text);

  AltKind kind() const noexcept { return kind_; }
  double param1() const noexcept { return p1_; }
  double param2() const noexcept { return p2_; }
  double mixing_p() const noexcept { return p1_; }
  const AlternativeSpec* contaminant() const noexcept { return contaminant_.get(); }

  // Canonical label, round-trips through parse().
  std::string label() const;

  double draw(RngStream& stream) const;

  // Moments and density, used by the population discrepancy Delta. mean()
  // and variance() throw DomainError when the moment does not exist.
  bool has_finite_variance() const noexcept;
  double mean() const;
  double variance() const;
  double pdf(double x) const;
  std::pair<double, double> support() const;

 private:
  AlternativeSpec(AltKind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}

  AltKind kind_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  std::shared_ptr<const AlternativeSpec> contaminant_;
};

// n iid draws. Mixture component choices come from a companion stream, so
// Mixture(0, c) reproduces L(0,1) and Mixture(1, c) reproduces c draw for draw.
std::vector<double> sample_alternative(const AlternativeSpec& alt, std::size_t n, RngStream& stream);

// Standard normal by inversion.
double draw_standard_normal(RngStream& stream);
// Gamma(shape, 1) by Marsaglia-Tsang.
double draw_gamma(double shape, RngStream& stream);

}  // namespace lgof
