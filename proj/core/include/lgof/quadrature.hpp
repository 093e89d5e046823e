#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace lgof::quad {

// Nodes and weights of the m-point Gauss-Hermite rule for
//   int g(s) exp(-s^2) ds  ~  sum_i w_i g(s_i).
// Nodes are sorted ascending.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on the orthonormal Hermite recurrence. Rules are cached
// per size; the returned reference stays valid for the program lifetime.
const GaussHermiteRule& gauss_hermite(std::size_t m);

struct GaussianWeightedResult {
  double value = 0.0;
  std::size_t nodes = 0;   // rule size that met the tolerance
  double change = 0.0;     // |last - previous| / |last|
};

// int g(t) exp(-a t^2) dt via t = s / sqrt(a), doubling the Gauss-Hermite
// rule size 15, 30, 60, ... until two successive values agree to `rel_tol`
// (or differ by at most `abs_tol`). Throws QuadratureError if `max_nodes` is
// reached first.
GaussianWeightedResult integrate_gaussian_weight(const std::function<double(double)>& g, double a,
                                                 double rel_tol = 1e-10, std::size_t max_nodes = 1920,
                                                 double abs_tol = 0.0);

// Adaptive 61-point Gauss-Kronrod on [lo, hi]; either bound may be infinite.
// Throws QuadratureError when the error estimate exceeds
// max(abs_tol, rel_tol * |value|).
double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol = 1e-12,
                 double rel_tol = 1e-12);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace lgof::quad
