#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "spherepd/numerics.hpp"

namespace spherepd::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Cached Gauss-Legendre rule with `n` nodes. Thread-safe; the returned
/// reference stays valid for the lifetime of the program.
const Rule& gauss_legendre(int n);

/// Options for composite integration over piecewise-smooth integrands.
struct Options {
  int nodes_per_piece = 32;
  double max_piece_length = 1.0;
};

/// Sorted subinterval endpoints of [a, b]: a, every break strictly inside,
/// b, with long pieces subdivided uniformly.
std::vector<double> partition(double a, double b, std::span<const double> breaks,
                              double max_piece_length);

/// Fixed-order Gauss-Legendre on [a, b].
template <typename F>
double integrate(F&& f, double a, double b, int n) {
  const Rule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  numerics::CompensatedSum sum;
  for (int i = 0; i < rule.size(); ++i) {
    sum.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
  }
  return half * sum.value();
}

/// Composite Gauss-Legendre on [a, b], split at `breaks` (points where the
/// integrand may fail to be smooth) and at a maximum piece length.
template <typename F>
double integrate_piecewise(F&& f, double a, double b, std::span<const double> breaks,
                           const Options& options = {}) {
  if (b == a) {
    return 0.0;
  }
  if (b < a) {
    return -integrate_piecewise(f, b, a, breaks, options);
  }
  const std::vector<double> cuts = partition(a, b, breaks, options.max_piece_length);
  numerics::CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum.add(integrate(f, cuts[i], cuts[i + 1], options.nodes_per_piece));
  }
  return sum.value();
}

}  // namespace spherepd::quadrature
