#include "lgof/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "lgof/errors.hpp"

namespace lgof::quad {
namespace {

// Golub-Welsch: the nodes are the eigenvalues of the symmetric tridiagonal
// Jacobi matrix with off-diagonal sqrt(j/2). Each node is then polished by
// Newton on the orthonormal recurrence, which also yields the weight
// 2 / (sqrt(2m) p_{m-1})^2. The recurrence is rescaled by 1e100 whenever it
// grows past that, so the weights are formed in log space.
GaussHermiteRule build_gauss_hermite(std::size_t m) {
  constexpr double kPiM4 = 0.7511255444649425;  // pi^{-1/4}
  constexpr double kRescale = 1e100;
  const double log_rescale = std::log(kRescale);
  const double md = static_cast<double>(m);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 1 ? m - 1 : 0));
  for (Eigen::Index j = 0; j < sub.size(); ++j) sub[j] = std::sqrt(0.5 * static_cast<double>(j + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw QuadratureError("Gauss-Hermite: eigenvalue solver failed for m=" + std::to_string(m));
  }

  std::vector<double> x(m), w(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    const std::size_t k = m - 1 - i;  // i-th largest node
    double z = std::fabs(solver.eigenvalues()[static_cast<Eigen::Index>(k)]);
    if (m % 2 == 1 && i == (m - 1) / 2) z = 0.0;
    double pp = 0.0, log_scale = 0.0;
    for (int it = 0; it < 4; ++it) {
      double p1 = kPiM4, p2 = 0.0;
      log_scale = 0.0;
      for (std::size_t j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / jd) * p2 - std::sqrt((jd - 1.0) / jd) * p3;
        if (std::fabs(p1) > kRescale) {
          p1 /= kRescale;
          p2 /= kRescale;
          log_scale += log_rescale;
        }
      }
      pp = std::sqrt(2.0 * md) * p2;
      const double dz = p1 / pp;
      if (it < 3) z -= dz;
      if (std::fabs(dz) <= 1e-15 * std::max(1.0, std::fabs(z))) break;
    }
    x[k] = z;
    x[i] = -z;
    w[k] = w[i] = std::exp(std::log(2.0) - 2.0 * (std::log(std::fabs(pp)) + log_scale));
  }
  GaussHermiteRule rule;
  rule.nodes = std::move(x);
  rule.weights = std::move(w);
  return rule;
}

struct Interval {
  double a, b, value, error, l1;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval local_rule(const std::function<double(double)>& g, double a, double b) {
  double err = 0.0, l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, a, b, 0, 0.0, &err, &l1);
  return {a, b, v, err, l1};
}

}  // namespace

const GaussHermiteRule& gauss_hermite(std::size_t m) {
  if (m == 0) throw DomainError("gauss_hermite: need at least one node");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(build_gauss_hermite(m));
  return *slot;
}

GaussianWeightedResult integrate_gaussian_weight(const std::function<double(double)>& g, double a,
                                                 double rel_tol, std::size_t max_nodes, double abs_tol) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("weight rate a must be positive");
  const double scale = 1.0 / std::sqrt(a);
  auto apply = [&](std::size_t m) {
    const auto& rule = gauss_hermite(m);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (rule.weights[i] == 0.0) continue;
      s += rule.weights[i] * g(rule.nodes[i] * scale);
    }
    return s * scale;
  };
  std::size_t m = 15;
  double prev = apply(m);
  while (2 * m <= max_nodes) {
    m *= 2;
    const double cur = apply(m);
    const double diff = std::fabs(cur - prev);
    const double denom = std::fabs(cur);
    if (diff <= rel_tol * denom || diff <= abs_tol) {
      return {cur, m, denom > 0.0 ? diff / denom : 0.0};
    }
    prev = cur;
  }
  throw QuadratureError("Gauss-Hermite refinement did not stabilise within " + std::to_string(max_nodes) +
                        " nodes");
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol, double rel_tol) {
  if (std::isnan(lo) || std::isnan(hi)) throw DomainError("integrate: NaN bound");
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate(f, hi, lo, abs_tol, rel_tol);

  // Map infinite ranges onto bounded ones.
  std::function<double(double)> g;
  double a = lo, b = hi;
  const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
  auto guard = [](double v) { return std::isfinite(v) ? v : 0.0; };
  if (lo_inf && hi_inf) {
    g = [&f, guard](double u) {
      const double d = 1.0 - u * u;
      const double x = u / d;
      return guard(f(x) * (1.0 + u * u) / (d * d));
    };
    a = -1.0;
    b = 1.0;
  } else if (hi_inf) {
    g = [&f, lo, guard](double u) {
      const double d = 1.0 - u;
      return guard(f(lo + u / d) / (d * d));
    };
    a = 0.0;
    b = 1.0;
  } else if (lo_inf) {
    g = [&f, hi, guard](double u) {
      const double d = 1.0 - u;
      return guard(f(hi - u / d) / (d * d));
    };
    a = 0.0;
    b = 1.0;
  } else {
    g = f;
  }

  constexpr int kInitialPieces = 8;
  constexpr int kMaxIntervals = 4000;
  std::priority_queue<Interval> heap;
  double total = 0.0, total_err = 0.0, total_l1 = 0.0;
  const double h = (b - a) / kInitialPieces;
  for (int i = 0; i < kInitialPieces; ++i) {
    const double left = a + i * h;
    const double right = i + 1 == kInitialPieces ? b : a + (i + 1) * h;
    Interval iv = local_rule(g, left, right);
    total += iv.value;
    total_err += iv.error;
    total_l1 += iv.l1;
    heap.push(iv);
  }
  int count = kInitialPieces;
  // Below ~100 eps of the L1 norm the error estimate is rounding noise.
  constexpr double kRoundoff = 100.0 * std::numeric_limits<double>::epsilon();
  for (;;) {
    if (!std::isfinite(total) || !std::isfinite(total_err) || !std::isfinite(total_l1)) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "adaptive Gauss-Kronrod on [%g, %g]: non-finite estimate", lo, hi);
      throw QuadratureError(msg);
    }
    if (total_err <= std::max({abs_tol, rel_tol * std::fabs(total), kRoundoff * total_l1})) break;
    if (count >= kMaxIntervals) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "adaptive Gauss-Kronrod on [%g, %g]: error estimate %.3g above tolerance", lo,
                    hi, total_err);
      throw QuadratureError(msg);
    }
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "adaptive Gauss-Kronrod on [%g, %g]: cannot split near %g", lo, hi, worst.a);
      throw QuadratureError(msg);
    }
    const Interval left = local_rule(g, worst.a, mid);
    const Interval right = local_rule(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    heap.pop();
  }
  return total;
}

}  // namespace lgof::quad
