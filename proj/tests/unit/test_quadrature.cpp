#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lgof/errors.hpp"
#include "lgof/quadrature.hpp"

namespace {

namespace quad = lgof::quad;

TEST(GaussHermite, WeightsAndMoments) {
  for (const std::size_t m : {1u, 2u, 15u, 60u, 240u, 1920u}) {
    const auto& r = quad::gauss_hermite(m);
    ASSERT_EQ(r.nodes.size(), m);
    double w = 0.0, x2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w += r.weights[i];
      x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    EXPECT_NEAR(w, std::sqrt(std::numbers::pi), 1e-12) << m;
    if (m >= 2) EXPECT_NEAR(x2, std::sqrt(std::numbers::pi) / 2.0, 1e-12) << m;
    EXPECT_TRUE(std::is_sorted(r.nodes.begin(), r.nodes.end()));
  }
}

TEST(GaussHermite, TwoPointRule) {
  const auto& r = quad::gauss_hermite(2);
  EXPECT_NEAR(r.nodes[1], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.weights[0], std::sqrt(std::numbers::pi) / 2.0, 1e-15);
}

TEST(GaussianWeight, CosineTransform) {
  // int cos(bt) e^{-a t^2} dt = sqrt(pi/a) e^{-b^2/(4a)}
  for (const double a : {0.5, 3.0}) {
    for (const double b : {0.0, 2.0, 7.0}) {
      const auto r = quad::integrate_gaussian_weight([b](double t) { return std::cos(b * t); }, a, 1e-10, 1920, 1e-13);
      EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi / a) * std::exp(-b * b / (4.0 * a)), 1e-10);
    }
  }
}

TEST(GaussianWeight, OddIntegrandWithAbsoluteTolerance) {
  const auto r = quad::integrate_gaussian_weight([](double t) { return std::sin(t) + t * t * t; }, 2.0, 1e-10, 1920, 1e-14);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
}

TEST(GaussianWeight, ReportsNonConvergence) {
  EXPECT_THROW(quad::integrate_gaussian_weight([](double t) { return std::cos(400.0 * t); }, 1e-4, 1e-10, 60),
               lgof::QuadratureError);
}

TEST(Adaptive, FiniteAndInfiniteRanges) {
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(-x * x); }, -quad::kInf, quad::kInf),
              std::sqrt(std::numbers::pi), 1e-12);
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(-x); }, 0.0, quad::kInf), 1.0, 1e-12);
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(x); }, -quad::kInf, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0), 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(quad::integrate([](double x) { return x; }, 1.0, 0.0), -0.5, 1e-15);
}

TEST(Adaptive, ReportsFailure) {
  EXPECT_THROW(quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0), lgof::QuadratureError);
}

}  // namespace
