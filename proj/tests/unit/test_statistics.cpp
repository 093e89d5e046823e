#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lgof/errors.hpp"
#include "lgof/logistic.hpp"
#include "lgof/statistics.hpp"

namespace {

using namespace lgof;

const std::vector<double> kThree{-1.0, 0.0, 1.0};
const std::vector<double> kFive{-2.5, -0.3, 0.4, 0.9, 1.5};

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

// Reference values: 30-digit adaptive quadrature of the defining integrals.
TEST(TStat, ClosedFormMatchesReference) {
  struct Case {
    const std::vector<double>* y;
    double a, expected;
  };
  const Case cases[] = {
      {&kThree, 1.0, 0.46148487864532794}, {&kThree, 3.0, 0.16607923296900285},
      {&kThree, 5.0, 0.089729677933653503}, {&kFive, 1.0, 0.92539335805452979},
      {&kFive, 3.0, 0.13645151378562759},  {&kFive, 5.0, 0.059266979608333365},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel(t_stat_closed(*c.y, {c.a}).value, c.expected), 1e-12) << c.a;
    EXPECT_LT(rel(t_stat_quadrature(*c.y, {c.a}).value, c.expected), 1e-9) << c.a;
  }
}

TEST(TStat, AllZeroResiduals) {
  const std::vector<double> y(3, 0.0);
  for (const double a : {1.0, 3.0, 5.0}) {
    const double expected = 3.0 * std::sqrt(std::numbers::pi) / (2.0 * std::pow(a, 1.5));
    EXPECT_LT(rel(t_stat_closed(y, {a}).value, expected), 1e-14);
  }
}

TEST(TStat, NameAndTuning) {
  const auto o = t_stat_closed(kThree, {4.0});
  EXPECT_EQ(o.name, "T4");
  EXPECT_EQ(o.tuning, 4.0);
  EXPECT_EQ(o.n, 3u);
  EXPECT_FALSE(o.pvalue.has_value());
}

TEST(TStat, KappaRepresentation) {
  for (const double a : {1.0, 3.0}) {
    EXPECT_LT(rel(t_stat_from_kappa(kFive, {a}), t_stat_closed(kFive, {a}).value), 1e-9);
  }
}

TEST(SStat, MatchesReference) {
  EXPECT_LT(rel(s_stat(kThree).value, 1.5347695691162478), 1e-13);
  EXPECT_LT(rel(s_stat(kFive).value, 1.609692667158263), 1e-13);
  EXPECT_LT(rel(s_stat(std::vector<double>(3, 0.0)).value, 2.0), 1e-14);
  EXPECT_LT(rel(s_stat_quadrature(kFive).value, 1.609692667158263), 1e-11);
}

TEST(SStat, SeriesAndClosedFormAgreeAtSwitch) {
  // Pairs with |Yj + Yk| straddling 1 exercise both branches.
  for (const double p : {0.999, 0.9999999, 1.0, 1.0000001, 1.001, -0.999, -1.001}) {
    const std::vector<double> y{p / 2.0, p / 2.0};
    EXPECT_LT(rel(s_stat(y).value, s_stat_quadrature(y).value), 1e-12) << p;
  }
}

TEST(SStat, LargeResidualsUseLogSpace) {
  const std::vector<double> y{-320.0, -1.0, 2.0, 310.0};
  const double v = s_stat(y).value;
  EXPECT_TRUE(std::isfinite(v));
  const std::vector<double> overflow{-1.0, 400.0};
  EXPECT_THROW(s_stat(overflow), NumericError);
}

TEST(RStat, SmallCases) {
  EXPECT_THROW(r_stat(kThree, 0), DomainError);
  const double r1 = r_stat(kFive, 1).value;
  EXPECT_TRUE(std::isfinite(r1));
  EXPECT_EQ(r_stat(kFive, 2).name, "R2");
  const std::vector<double> huge{-400.0, 1.0, 2.0};
  EXPECT_THROW(r_stat(huge, 1), NumericError);
}

TEST(Edf, MatchesDirectFormulas) {
  const auto e = edf_stats(kFive);
  EXPECT_NEAR(e.ks.value, 0.225557483188341, 1e-14);
  EXPECT_NEAR(e.cm.value, 0.04966728856410192, 1e-14);
  EXPECT_NEAR(e.ad.value, 0.29765476775173916, 1e-13);
  EXPECT_NEAR(e.wa.value, 0.046358291992903776, 1e-14);
  EXPECT_FALSE(e.ad.clamped);
}

TEST(Edf, ClampsExtremeResiduals) {
  const std::vector<double> y{-50.0, 0.0, 50.0};
  const auto e = edf_stats(y);
  EXPECT_TRUE(e.ad.clamped);
  EXPECT_TRUE(std::isfinite(e.ad.value));
}

TEST(Statistics, PermutationInvariantBitExact) {
  std::vector<double> y{0.7, -1.9, 2.4, 0.1, -0.6, 1.3, -3.2, 0.05};
  std::vector<double> z = y;
  std::reverse(z.begin(), z.end());
  std::rotate(z.begin(), z.begin() + 3, z.end());
  for (const auto& id : standard_battery()) EXPECT_EQ(evaluate(id, y).value, evaluate(id, z).value) << id.name();
}

TEST(Statistics, EvaluateManyMatchesEvaluate) {
  const auto ids = standard_battery();
  std::vector<double> out(ids.size());
  evaluate_many(ids, kFive, out);
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(out[i], evaluate(ids[i], kFive).value);
}

TEST(Statistics, InputChecks) {
  EXPECT_THROW(t_stat_closed(std::vector<double>{1.0}, {3.0}), SizeError);
  EXPECT_THROW(t_stat_closed(kThree, {0.0}), DomainError);
  EXPECT_THROW(s_stat(std::vector<double>{1.0, INFINITY}), DomainError);
}

TEST(StatisticId, ParseAndName) {
  EXPECT_EQ(StatisticId::parse("T"), StatisticId::t(3));
  EXPECT_EQ(StatisticId::parse("t4.5").name(), "T4.5");
  EXPECT_EQ(StatisticId::parse("R"), StatisticId::r(1));
  EXPECT_EQ(StatisticId::parse("r3"), StatisticId::r(3));
  EXPECT_EQ(StatisticId::parse("ad"), StatisticId::ad());
  EXPECT_EQ(StatisticId::parse("S").name(), "S");
  EXPECT_THROW(StatisticId::parse("G"), DomainError);
  EXPECT_THROW(StatisticId::parse("R1.5"), DomainError);
  EXPECT_THROW(StatisticId::parse("T-1"), DomainError);
  EXPECT_EQ(standard_battery().size(), 11u);
}

// kappa(t, x) = Re A - Im A with A = (it - tanh(x/2)) e^{itx}.
TEST(Kappa, MatchesComplexForm) {
  for (const double t : {-2.0, 0.0, 0.5, 3.0}) {
    for (const double x : {-6.0, -0.4, 0.0, 1.1, 9.0}) {
      const std::complex<double> A = std::complex<double>(-std::tanh(x / 2.0), t) * std::exp(std::complex<double>(0.0, t * x));
      EXPECT_NEAR(kappa(t, x), A.real() - A.imag(), 1e-14);
    }
  }
}

TEST(Kappa, HIsMinusDerivative) {
  const double eps = 1e-6;
  for (const double t : {0.3, 1.0, 2.5}) {
    for (const double x : {-3.0, 0.2, 2.0}) {
      const double fd = -(kappa(t, x + eps) - kappa(t, x - eps)) / (2.0 * eps);
      EXPECT_NEAR(h_func(t, x), fd, 1e-8);
    }
  }
}

TEST(Asymptotics, MomentIdentities) {
  const auto m = moment_identities();
  const double l2 = std::log(2.0);
  EXPECT_NEAR(m[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(m[1], l2 / 3.0 - 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(m[2], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(m[3], 2.0 * l2 / 3.0 + 1.0 / 12.0, 1e-12);
}

TEST(Asymptotics, CovarianceKernelSymmetric) {
  for (const auto method : {FitMethod::Moments, FitMethod::MaxLikelihood}) {
    const double a = covariance_kernel(0.5, 1.0, method);
    const double b = covariance_kernel(1.0, 0.5, method);
    EXPECT_NEAR(a, b, 1e-10);
    EXPECT_GT(covariance_kernel(0.7, 0.7, method), 0.0);
  }
}

TEST(Asymptotics, DeltaVanishesOnlyAtLogistic) {
  EXPECT_LT(delta_alternative(AlternativeSpec::logistic(), {3.0}), 1e-10);
  EXPECT_LT(delta_alternative(AlternativeSpec::logistic(2.0, 5.0), {3.0}), 1e-10);
  EXPECT_GT(delta_alternative(AlternativeSpec::normal(), {3.0}), 1e-3);
  EXPECT_THROW(delta_alternative(AlternativeSpec::cauchy(), {3.0}), DomainError);
  EXPECT_THROW(delta_alternative(AlternativeSpec::student_t(2.0), {3.0}), DomainError);
}

}  // namespace
