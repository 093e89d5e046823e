#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lgof/alternatives.hpp"
#include "lgof/errors.hpp"
#include "lgof/logistic.hpp"

namespace {

using lgof::AlternativeSpec;
using lgof::RngStream;

TEST(Alternatives, ParseLabelRoundTrip) {
  for (const char* text : {"L(0,1)", "N(0,1)", "t(2)", "C(0,1)", "LP(0,1)", "LN(1.5)", "Gamma(2)", "U(-sqrt3,sqrt3)",
                           "U(0,1)", "B(3,5)", "chi2(10)", "Mix(0.2,C(0,1))", "Mix(0.5,LN(1))"}) {
    const auto a = AlternativeSpec::parse(text);
    EXPECT_EQ(AlternativeSpec::parse(a.label()).label(), a.label()) << text;
  }
  EXPECT_EQ(AlternativeSpec::parse("C").label(), AlternativeSpec::cauchy().label());
  EXPECT_EQ(AlternativeSpec::parse("U").label(), AlternativeSpec::unit_uniform().label());
}

TEST(Alternatives, InvalidParameters) {
  EXPECT_THROW(AlternativeSpec::student_t(0.0), lgof::DomainError);
  EXPECT_THROW(AlternativeSpec::gamma(-1.0), lgof::DomainError);
  EXPECT_THROW(AlternativeSpec::uniform(1.0, 1.0), lgof::DomainError);
  EXPECT_THROW(AlternativeSpec::mixture(1.5, AlternativeSpec::cauchy()), lgof::DomainError);
  EXPECT_THROW(AlternativeSpec::parse("Weibull(2)"), lgof::DomainError);
}

TEST(Alternatives, MixtureZeroIsLogistic) {
  RngStream a(17, 3), b(17, 3);
  const auto mix = lgof::sample_alternative(AlternativeSpec::mixture(0.0, AlternativeSpec::cauchy()), 500, a);
  const auto pure = lgof::sample_alternative(AlternativeSpec::logistic(), 500, b);
  EXPECT_EQ(mix, pure);
}

TEST(Alternatives, MixtureOneIsContaminant) {
  RngStream a(17, 3), b(17, 3);
  const auto mix = lgof::sample_alternative(AlternativeSpec::mixture(1.0, AlternativeSpec::cauchy()), 500, a);
  const auto pure = lgof::sample_alternative(AlternativeSpec::cauchy(), 500, b);
  EXPECT_EQ(mix, pure);
}

TEST(Alternatives, LogNormalLogMean) {
  RngStream s(1, 0);
  const auto x = lgof::sample_alternative(AlternativeSpec::lognormal(1.0), 1000000, s);
  double m = 0.0, v = 0.0;
  for (const double xi : x) m += std::log(xi);
  m /= 1e6;
  for (const double xi : x) v += (std::log(xi) - m) * (std::log(xi) - m);
  EXPECT_NEAR(m, 0.0, 0.01);
  EXPECT_NEAR(v / 1e6, 1.0, 0.01);
}

// Sample moments against the closed-form mean and variance.
TEST(Alternatives, SampleMomentsMatchDensity) {
  for (const char* text : {"N(0,1)", "LP(0,1)", "Gamma(0.5)", "Gamma(3)", "U(-sqrt3,sqrt3)", "B(2,2)", "B(3,5)",
                           "chi2(5)", "t(5)", "LN(0.5)", "L(1,2)"}) {
    const auto alt = AlternativeSpec::parse(text);
    RngStream s(23, 0);
    const auto x = lgof::sample_alternative(alt, 400000, s);
    double m = 0.0, v = 0.0;
    for (const double xi : x) m += xi;
    m /= static_cast<double>(x.size());
    for (const double xi : x) v += (xi - m) * (xi - m);
    v /= static_cast<double>(x.size());
    const double sd = std::sqrt(alt.variance());
    EXPECT_NEAR(m, alt.mean(), 0.01 * std::max(1.0, sd)) << text;
    EXPECT_NEAR(v, alt.variance(), 0.03 * alt.variance()) << text;
  }
}

TEST(Alternatives, UniformSupport) {
  const auto u = AlternativeSpec::unit_uniform();
  EXPECT_NEAR(u.variance(), 1.0, 1e-15);
  RngStream s(2, 0);
  for (const double x : lgof::sample_alternative(u, 10000, s)) {
    ASSERT_GE(x, -std::sqrt(3.0));
    ASSERT_LE(x, std::sqrt(3.0));
  }
}

TEST(Alternatives, HeavyTailsHaveNoVariance) {
  EXPECT_FALSE(AlternativeSpec::cauchy().has_finite_variance());
  EXPECT_FALSE(AlternativeSpec::student_t(2.0).has_finite_variance());
  EXPECT_TRUE(AlternativeSpec::student_t(2.5).has_finite_variance());
  EXPECT_THROW(AlternativeSpec::cauchy().variance(), lgof::DomainError);
}

}  // namespace
