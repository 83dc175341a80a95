#include "spherepd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace spherepd::quadrature {

namespace {

Rule compute_rule(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iteration = 0; iteration < 100; ++iteration) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : p1;
      const double pn_minus_1 = n == 1 ? 1.0 : p0;
      derivative = n * (x * pn - pn_minus_1) / (x * x - 1.0);
      const double dx = pn / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // one more evaluation at the converged node for the weight
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    derivative = n * (x * p1 - (n == 1 ? 1.0 : p0)) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one node");
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<Rule>(compute_rule(n))).first;
  }
  return *it->second;
}

std::vector<double> partition(double a, double b, std::span<const double> breaks,
                              double max_piece_length) {
  std::vector<double> points{a};
  std::vector<double> inner(breaks.begin(), breaks.end());
  std::sort(inner.begin(), inner.end());
  for (double x : inner) {
    if (x > a && x < b && x > points.back()) {
      points.push_back(x);
    }
  }
  points.push_back(b);
  std::vector<double> cuts{a};
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double length = points[i + 1] - points[i];
    const int pieces =
        max_piece_length > 0.0 ? std::max(1, static_cast<int>(std::ceil(length / max_piece_length)))
                               : 1;
    for (int k = 1; k < pieces; ++k) {
      cuts.push_back(points[i] + length * k / pieces);
    }
    cuts.push_back(points[i + 1]);
  }
  return cuts;
}

}  // namespace spherepd::quadrature
