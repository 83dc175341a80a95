#include "spherepd/numerics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "spherepd/errors.hpp"

namespace spherepd::numerics {

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive, got " + std::to_string(x));
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) {
    throw std::domain_error("log_binomial: need 0 <= k <= n");
  }
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  if (n <= 60) {
    // exact in double for this range
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
      result = result * (n - k + i) / i;
    }
    return std::round(result);
  }
  return std::exp(log_binomial(n, k));
}

std::vector<double> finite_difference_weights(int order, std::span<const double> offsets) {
  const int n = static_cast<int>(offsets.size());
  if (order < 0 || order >= n) {
    throw std::invalid_argument("finite_difference_weights: need 0 <= order < number of points");
  }
  // Fornberg (1988), evaluation point 0.
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = offsets[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = offsets[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> weights(n);
  for (int i = 0; i < n; ++i) {
    weights[i] = c[i][order];
  }
  return weights;
}

double hyp2f1_series(double a, double b, double c, double z, int max_terms) {
  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error("hyp2f1_series: |z| < 1 required");
  }
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum.add(term);
    if (std::abs(term) <= 0.25 * eps * std::abs(sum.value())) {
      return sum.value();
    }
  }
  throw ConvergenceError("hyp2f1_series: no convergence in " + std::to_string(max_terms) +
                         " terms (z = " + std::to_string(z) + ")");
}

}  // namespace spherepd::numerics
