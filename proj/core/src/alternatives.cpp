#include "lgof/alternatives.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/laplace.hpp>
#include <boost/math/distributions/logistic.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lgof/errors.hpp"
#include "lgof/logistic.hpp"

namespace lgof {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt3 = 1.7320508075688772935;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::string fmt(double v) {
  if (std::fabs(v - kSqrt3) < 1e-15) return "sqrt3";
  if (std::fabs(v + kSqrt3) < 1e-15) return "-sqrt3";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << v;
  return os.str();
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_number(const std::string& raw) {
  const std::string s = lower(trim(raw));
  if (s == "sqrt3" || s == "sqrt(3)") return kSqrt3;
  if (s == "-sqrt3" || s == "-sqrt(3)") return -kSqrt3;
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw DomainError("cannot parse number '" + raw + "'");
  return v;
}

// Splits "a, b(c, d), e" at top-level commas.
std::vector<std::string> split_args(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (const char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace

AlternativeSpec AlternativeSpec::logistic(double mu, double sigma) {
  require(std::isfinite(mu) && sigma > 0.0 && std::isfinite(sigma), "logistic: need sigma > 0");
  return {AltKind::Logistic, mu, sigma};
}
AlternativeSpec AlternativeSpec::normal(double mean, double sd) {
  require(std::isfinite(mean) && sd > 0.0 && std::isfinite(sd), "normal: need sd > 0");
  return {AltKind::Normal, mean, sd};
}
AlternativeSpec AlternativeSpec::student_t(double df) {
  require(df > 0.0 && std::isfinite(df), "t: need df > 0");
  return {AltKind::StudentT, df, 0.0};
}
AlternativeSpec AlternativeSpec::cauchy(double location, double scale) {
  require(std::isfinite(location) && scale > 0.0 && std::isfinite(scale), "cauchy: need scale > 0");
  return {AltKind::Cauchy, location, scale};
}
AlternativeSpec AlternativeSpec::laplace(double location, double scale) {
  require(std::isfinite(location) && scale > 0.0 && std::isfinite(scale), "laplace: need scale > 0");
  return {AltKind::Laplace, location, scale};
}
AlternativeSpec AlternativeSpec::lognormal(double s) {
  require(s > 0.0 && std::isfinite(s), "lognormal: need s > 0");
  return {AltKind::LogNormal, s, 0.0};
}
AlternativeSpec AlternativeSpec::gamma(double shape) {
  require(shape > 0.0 && std::isfinite(shape), "gamma: need shape > 0");
  return {AltKind::Gamma, shape, 0.0};
}
AlternativeSpec AlternativeSpec::uniform(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "uniform: need lo < hi");
  return {AltKind::Uniform, lo, hi};
}
AlternativeSpec AlternativeSpec::unit_uniform() { return uniform(-kSqrt3, kSqrt3); }
AlternativeSpec AlternativeSpec::beta(double alpha, double beta) {
  require(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) && std::isfinite(beta), "beta: need alpha, beta > 0");
  return {AltKind::Beta, alpha, beta};
}
AlternativeSpec AlternativeSpec::chi_square(double df) {
  require(df > 0.0 && std::isfinite(df), "chi2: need df > 0");
  return {AltKind::ChiSquare, df, 0.0};
}
AlternativeSpec AlternativeSpec::mixture(double p, const AlternativeSpec& contaminant) {
  require(p >= 0.0 && p <= 1.0, "mixture: p must lie in [0, 1]");
  AlternativeSpec spec{AltKind::Mixture, p, 0.0};
  spec.contaminant_ = std::make_shared<const AlternativeSpec>(contaminant);
  return spec;
}

AlternativeSpec AlternativeSpec::parse(std::string_view text) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  std::string name = lower(trim(s.substr(0, open)));
  std::vector<std::string> args;
  if (open != std::string::npos) {
    if (s.back() != ')') throw DomainError("alternative '" + s + "': missing ')'");
    args = split_args(std::string_view(s).substr(open + 1, s.size() - open - 2));
  }
  auto nargs = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw DomainError("alternative '" + s + "': wrong number of parameters");
    }
  };
  auto arg = [&](std::size_t i) { return parse_number(args.at(i)); };

  if (name == "l" || name == "logistic") {
    nargs(0, 2);
    return logistic(args.size() > 0 ? arg(0) : 0.0, args.size() > 1 ? arg(1) : 1.0);
  }
  if (name == "n" || name == "normal") {
    nargs(0, 2);
    return normal(args.size() > 0 ? arg(0) : 0.0, args.size() > 1 ? arg(1) : 1.0);
  }
  if (name == "t" || name == "student") {
    nargs(1, 1);
    return student_t(arg(0));
  }
  if (name == "c" || name == "cauchy") {
    nargs(0, 2);
    return cauchy(args.size() > 0 ? arg(0) : 0.0, args.size() > 1 ? arg(1) : 1.0);
  }
  if (name == "lp" || name == "laplace") {
    nargs(0, 2);
    return laplace(args.size() > 0 ? arg(0) : 0.0, args.size() > 1 ? arg(1) : 1.0);
  }
  if (name == "ln" || name == "lognormal") {
    nargs(1, 1);
    return lognormal(arg(0));
  }
  if (name == "gamma" || name == "g") {
    nargs(1, 1);
    return gamma(arg(0));
  }
  if (name == "u" || name == "uniform") {
    nargs(0, 2);
    if (args.empty()) return unit_uniform();
    if (args.size() != 2) throw DomainError("alternative '" + s + "': uniform takes (lo,hi)");
    const double a = arg(0), b = arg(1);
    return uniform(std::min(a, b), std::max(a, b));
  }
  if (name == "b" || name == "beta") {
    nargs(2, 2);
    return beta(arg(0), arg(1));
  }
  if (name == "chi2" || name == "chisq" || name == "chisquare") {
    nargs(1, 1);
    return chi_square(arg(0));
  }
  if (name == "mix" || name == "mixture") {
    nargs(2, 2);
    return mixture(arg(0), parse(args[1]));
  }
  throw DomainError("unknown alternative '" + s + "'");
}

std::string AlternativeSpec::label() const {
  switch (kind_) {
    case AltKind::Logistic: return "L(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case AltKind::Normal: return "N(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case AltKind::StudentT: return "t(" + fmt(p1_) + ")";
    case AltKind::Cauchy: return "C(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case AltKind::Laplace: return "LP(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case AltKind::LogNormal: return "LN(" + fmt(p1_) + ")";
    case AltKind::Gamma: return "Gamma(" + fmt(p1_) + ")";
    case AltKind::Uniform: return "U(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case AltKind::Beta: return "B(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case AltKind::ChiSquare: return "chi2(" + fmt(p1_) + ")";
    case AltKind::Mixture: return "Mix(" + fmt(p1_) + "," + contaminant_->label() + ")";
  }
  return "?";
}

double draw_standard_normal(RngStream& stream) {
  const double u = stream.uniform();
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double draw_gamma(double shape, RngStream& stream) {
  if (shape < 1.0) {
    // G(k) = G(k + 1) U^{1/k}
    const double g = draw_gamma(shape + 1.0, stream);
    return g * std::pow(stream.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = draw_standard_normal(stream);
    const double t = 1.0 + c * z;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = stream.uniform();
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
  }
}

double AlternativeSpec::draw(RngStream& stream) const {
  switch (kind_) {
    case AltKind::Logistic: {
      const double u = stream.uniform();
      return p1_ + p2_ * (std::log(u) - std::log1p(-u));
    }
    case AltKind::Normal: return p1_ + p2_ * draw_standard_normal(stream);
    case AltKind::StudentT: {
      const double z = draw_standard_normal(stream);
      const double chi2 = 2.0 * draw_gamma(0.5 * p1_, stream);
      return z / std::sqrt(chi2 / p1_);
    }
    case AltKind::Cauchy: return p1_ + p2_ * std::tan(std::numbers::pi * (stream.uniform() - 0.5));
    case AltKind::Laplace: {
      const double u = stream.uniform();
      return u < 0.5 ? p1_ + p2_ * std::log(2.0 * u) : p1_ - p2_ * std::log(2.0 * (1.0 - u));
    }
    case AltKind::LogNormal: return std::exp(p1_ * draw_standard_normal(stream));
    case AltKind::Gamma: return draw_gamma(p1_, stream);
    case AltKind::Uniform: return p1_ + (p2_ - p1_) * stream.uniform();
    case AltKind::Beta: {
      const double x = draw_gamma(p1_, stream);
      const double y = draw_gamma(p2_, stream);
      return x / (x + y);
    }
    case AltKind::ChiSquare: return 2.0 * draw_gamma(0.5 * p1_, stream);
    case AltKind::Mixture: break;
  }
  throw DomainError("draw: mixtures are sampled through sample_alternative");
}

std::vector<double> sample_alternative(const AlternativeSpec& alt, std::size_t n, RngStream& stream) {
  std::vector<double> out(n);
  if (alt.kind() != AltKind::Mixture) {
    for (auto& x : out) x = alt.draw(stream);
    return out;
  }
  RngStream chooser(mix_seed(stream.seed(), std::string_view("mixture-component")), stream.stream_id());
  const AlternativeSpec base = AlternativeSpec::logistic();
  const double p = alt.mixing_p();
  for (auto& x : out) {
    const bool contaminated = chooser.uniform() < p;
    if (!contaminated) {
      x = base.draw(stream);
    } else if (alt.contaminant()->kind() == AltKind::Mixture) {
      x = sample_alternative(*alt.contaminant(), 1, stream)[0];
    } else {
      x = alt.contaminant()->draw(stream);
    }
  }
  return out;
}

bool AlternativeSpec::has_finite_variance() const noexcept {
  switch (kind_) {
    case AltKind::Cauchy: return false;
    case AltKind::StudentT: return p1_ > 2.0;
    case AltKind::Mixture: return p1_ == 0.0 || contaminant_->has_finite_variance();
    default: return true;
  }
}

double AlternativeSpec::mean() const {
  namespace bm = boost::math;
  switch (kind_) {
    case AltKind::Logistic:
    case AltKind::Normal:
    case AltKind::Laplace: return p1_;
    case AltKind::StudentT:
      require(p1_ > 1.0, "t: mean requires df > 1");
      return 0.0;
    case AltKind::Cauchy: throw DomainError("Cauchy distribution has no mean");
    case AltKind::LogNormal: return bm::mean(bm::lognormal_distribution<double>(0.0, p1_));
    case AltKind::Gamma: return p1_;
    case AltKind::Uniform: return 0.5 * (p1_ + p2_);
    case AltKind::Beta: return bm::mean(bm::beta_distribution<double>(p1_, p2_));
    case AltKind::ChiSquare: return p1_;
    case AltKind::Mixture: return p1_ == 0.0 ? 0.0 : p1_ * contaminant_->mean();
  }
  return 0.0;
}

double AlternativeSpec::variance() const {
  namespace bm = boost::math;
  if (!has_finite_variance()) throw DomainError(label() + " has no finite variance");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  switch (kind_) {
    case AltKind::Logistic: return pi2 * p2_ * p2_ / 3.0;
    case AltKind::Normal: return p2_ * p2_;
    case AltKind::StudentT: return p1_ / (p1_ - 2.0);
    case AltKind::Laplace: return 2.0 * p2_ * p2_;
    case AltKind::LogNormal: return bm::variance(bm::lognormal_distribution<double>(0.0, p1_));
    case AltKind::Gamma: return p1_;
    case AltKind::Uniform: return (p2_ - p1_) * (p2_ - p1_) / 12.0;
    case AltKind::Beta: return bm::variance(bm::beta_distribution<double>(p1_, p2_));
    case AltKind::ChiSquare: return 2.0 * p1_;
    case AltKind::Mixture: {
      if (p1_ == 0.0) return pi2 / 3.0;
      const double m = mean();
      const double mc = contaminant_->mean();
      const double second = (1.0 - p1_) * (pi2 / 3.0) + p1_ * (contaminant_->variance() + mc * mc);
      return second - m * m;
    }
    case AltKind::Cauchy: break;
  }
  throw DomainError(label() + " has no finite variance");
}

double AlternativeSpec::pdf(double x) const {
  namespace bm = boost::math;
  const auto [lo, hi] = support();
  if (x < lo || x > hi) return 0.0;
  switch (kind_) {
    case AltKind::Logistic: return lgof::pdf(x, {p1_, p2_});
    case AltKind::Normal: return bm::pdf(bm::normal_distribution<double>(p1_, p2_), x);
    case AltKind::StudentT: return bm::pdf(bm::students_t_distribution<double>(p1_), x);
    case AltKind::Cauchy: {
      const double z = (x - p1_) / p2_;
      return 1.0 / (std::numbers::pi * p2_ * (1.0 + z * z));
    }
    case AltKind::Laplace: return bm::pdf(bm::laplace_distribution<double>(p1_, p2_), x);
    case AltKind::LogNormal:
      return x <= 0.0 ? 0.0 : bm::pdf(bm::lognormal_distribution<double>(0.0, p1_), x);
    case AltKind::Gamma:
      return x <= 0.0 ? 0.0 : bm::pdf(bm::gamma_distribution<double>(p1_, 1.0), x);
    case AltKind::Uniform: return 1.0 / (p2_ - p1_);
    case AltKind::Beta:
      return (x <= 0.0 || x >= 1.0) ? 0.0 : bm::pdf(bm::beta_distribution<double>(p1_, p2_), x);
    case AltKind::ChiSquare:
      return x <= 0.0 ? 0.0 : bm::pdf(bm::chi_squared_distribution<double>(p1_), x);
    case AltKind::Mixture:
      return (1.0 - p1_) * lgof::pdf(x) + p1_ * contaminant_->pdf(x);
  }
  return 0.0;
}

std::pair<double, double> AlternativeSpec::support() const {
  switch (kind_) {
    case AltKind::LogNormal:
    case AltKind::Gamma:
    case AltKind::ChiSquare: return {0.0, kInf};
    case AltKind::Uniform: return {p1_, p2_};
    case AltKind::Beta: return {0.0, 1.0};
    default: return {-kInf, kInf};
  }
}

}  // namespace lgof
