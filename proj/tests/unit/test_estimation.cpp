#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lgof/errors.hpp"
#include "lgof/estimation.hpp"
#include "lgof/logistic.hpp"

namespace {

using namespace lgof;

TEST(FitMoments, TwoPoints) {
  const std::vector<double> x{-1.0, 1.0};
  const FitResult f = fit_moments(x);
  EXPECT_DOUBLE_EQ(f.mu_hat, 0.0);
  EXPECT_NEAR(f.sigma_hat, std::sqrt(3.0) / std::numbers::pi, 1e-15);
  const FitResult g = fit_moments(x, VarianceDivisor::NMinusOne);
  EXPECT_NEAR(g.sigma_hat, std::sqrt(3.0) / std::numbers::pi * std::sqrt(2.0), 1e-15);
}

TEST(FitMoments, ResidualsOfTwoPoints) {
  const auto r = scaled_residuals(std::vector<double>{-1.0, 1.0});
  EXPECT_NEAR(r.values()[0], -std::numbers::pi / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.values()[1], std::numbers::pi / std::sqrt(3.0), 1e-15);
}

TEST(Fit, Degenerate) {
  EXPECT_THROW(fit_moments(std::vector<double>{2.0, 2.0, 2.0}), DegenerateSampleError);
  EXPECT_THROW(fit_mle(std::vector<double>{2.0, 2.0}), DegenerateSampleError);
  EXPECT_THROW(fit_moments(std::vector<double>{1.0}), SizeError);
  EXPECT_THROW(fit_moments(std::vector<double>{1.0, std::nan("")}), DomainError);
}

TEST(FitMle, SolvesLikelihoodEquations) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream s(seed, 0);
    const auto x = sample(30 + 10 * seed, {1.0, 3.0}, s);
    const FitResult f = fit_mle(x);
    ASSERT_TRUE(f.converged);
    const Vector2 eq = likelihood_equations(x, f.params());
    EXPECT_LT(std::fabs(eq[0]), 1e-10);
    EXPECT_LT(std::fabs(eq[1]), 1e-10);
  }
}

TEST(FitMle, TwoPointsIsSymmetric) {
  const FitResult f = fit_mle(std::vector<double>{-1.0, 1.0});
  EXPECT_NEAR(f.mu_hat, 0.0, 1e-12);
  // mean z tanh(z/2) = 1 with z = 1/sigma.
  const double z = 1.0 / f.sigma_hat;
  EXPECT_NEAR(z * std::tanh(z / 2.0), 1.0, 1e-10);
}

TEST(FitMle, MaximisesLikelihood) {
  RngStream s(9, 0);
  const auto x = sample(80, {0.0, 1.0}, s);
  const FitResult f = fit_mle(x);
  const double best = log_likelihood(x, f.params());
  for (const double dm : {-0.01, 0.01}) {
    EXPECT_LT(log_likelihood(x, {f.mu_hat + dm, f.sigma_hat}), best);
    EXPECT_LT(log_likelihood(x, {f.mu_hat, f.sigma_hat + dm}), best);
  }
}

TEST(Residuals, AffineInvariant) {
  RngStream s(5, 0);
  const auto x = sample(40, {}, s);
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = -3.0 + 2.5 * x[i];
  for (const auto method : {FitMethod::Moments, FitMethod::MaxLikelihood}) {
    FitOptions opt;
    opt.method = method;
    const auto rx = scaled_residuals(x, opt);
    const auto rz = scaled_residuals(z, opt);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(rx.values()[i], rz.values()[i], 1e-9);
  }
}

TEST(Residuals, MleResidualsSatisfyEquations) {
  RngStream s(6, 0);
  const auto x = sample(50, {}, s);
  FitOptions opt;
  opt.method = FitMethod::MaxLikelihood;
  const auto r = scaled_residuals(x, opt);
  double e1 = 0.0, e2 = 0.0;
  for (const double y : r.values()) {
    e1 += std::tanh(y / 2.0);
    e2 += y * std::tanh(y / 2.0);
  }
  EXPECT_NEAR(e1 / 50.0, 0.0, 1e-10);
  EXPECT_NEAR(e2 / 50.0, 1.0, 1e-10);
}

TEST(Influence, CentredUnderNull) {
  RngStream s(8, 0);
  const auto x = sample(400000, {}, s);
  for (const auto method : {FitMethod::Moments, FitMethod::MaxLikelihood}) {
    double a = 0.0, b = 0.0;
    for (const double v : x) {
      a += psi1(v, method);
      b += psi2(v, method);
    }
    EXPECT_NEAR(a / x.size(), 0.0, 0.01);
    EXPECT_NEAR(b / x.size(), 0.0, 0.01);
  }
}

TEST(FitMethodNames, RoundTrip) {
  EXPECT_EQ(parse_fit_method("moments"), FitMethod::Moments);
  EXPECT_EQ(parse_fit_method("ML"), FitMethod::MaxLikelihood);
  EXPECT_EQ(to_string(FitMethod::MaxLikelihood), "ml");
  EXPECT_THROW(parse_fit_method("bayes"), DomainError);
}

}  // namespace
