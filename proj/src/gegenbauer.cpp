#include "spherepd/gegenbauer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spherepd/numerics.hpp"

namespace spherepd {

void BasisPoint::validate() const {
  if (!(lambda >= 0.0)) {
    throw std::domain_error("Gegenbauer: lambda must be >= 0, got " + std::to_string(lambda));
  }
  if (degree < 0) {
    throw std::domain_error("Gegenbauer: degree must be >= 0");
  }
  if (!(std::abs(x) <= 1.0)) {
    throw std::domain_error("Gegenbauer: |x| <= 1 required, got " + std::to_string(x));
  }
}

double gegenbauer_at_one(double lambda, int n) {
  if (!(lambda >= 0.0) || n < 0) {
    throw std::domain_error("gegenbauer_at_one: need lambda >= 0 and n >= 0");
  }
  if (lambda == 0.0 || n == 0) {
    return 1.0;
  }
  return std::exp(numerics::log_gamma(n + 2.0 * lambda) - numerics::log_gamma(n + 1.0) -
                  numerics::log_gamma(2.0 * lambda));
}

std::vector<double> normalized_gegenbauer_all(double lambda, int max_degree, double x) {
  BasisPoint{lambda, max_degree, x}.validate();
  std::vector<double> r(max_degree + 1);
  if (lambda == 0.0) {
    const double theta = std::acos(x);
    for (int n = 0; n <= max_degree; ++n) {
      r[n] = std::cos(n * theta);
    }
    return r;
  }
  r[0] = 1.0;
  if (max_degree >= 1) {
    r[1] = x;
  }
  // R_k = (2x (k + lambda - 1) R_{k-1} - (k - 1) R_{k-2}) / (k + 2 lambda - 1)
  for (int k = 2; k <= max_degree; ++k) {
    r[k] = (2.0 * x * (k + lambda - 1.0) * r[k - 1] - (k - 1.0) * r[k - 2]) /
           (k + 2.0 * lambda - 1.0);
  }
  return r;
}

double normalized_gegenbauer(const BasisPoint& p) {
  p.validate();
  if (p.lambda == 0.0) {
    return std::cos(p.degree * std::acos(p.x));
  }
  if (p.x == 1.0) {
    return 1.0;
  }
  return normalized_gegenbauer_all(p.lambda, p.degree, p.x)[p.degree];
}

double gegenbauer_value(const BasisPoint& p) {
  p.validate();
  if (p.lambda == 0.0) {
    return std::cos(p.degree * std::acos(p.x));
  }
  if (p.degree == 0) {
    return 1.0;
  }
  if (p.degree <= 64) {
    // plain recurrence while C_n^lambda(1) is far from overflow
    double c0 = 1.0;
    double c1 = 2.0 * p.lambda * p.x;
    for (int k = 2; k <= p.degree; ++k) {
      const double c2 =
          (2.0 * p.x * (k + p.lambda - 1.0) * c1 - (k + 2.0 * p.lambda - 2.0) * c0) / k;
      c0 = c1;
      c1 = c2;
    }
    return c1;
  }
  return normalized_gegenbauer(p) * gegenbauer_at_one(p.lambda, p.degree);
}

double gegenbauer_theta_derivative(double lambda, int n, double theta) {
  if (!(lambda > 0.0) || n < 1) {
    throw std::domain_error("gegenbauer_theta_derivative: need lambda > 0 and n >= 1");
  }
  const double x = std::cos(theta);
  return -std::sin(theta) * 2.0 * lambda * gegenbauer_value({lambda + 1.0, n - 1, x});
}

double normalized_gegenbauer_theta_derivative(double lambda, int n, double theta) {
  if (!(lambda >= 0.0) || n < 0) {
    throw std::domain_error("normalized_gegenbauer_theta_derivative: need lambda >= 0, n >= 0");
  }
  if (n == 0) {
    return 0.0;
  }
  if (lambda == 0.0) {
    return -n * std::sin(n * theta);
  }
  const double ratio = normalized_gegenbauer({lambda + 1.0, n - 1, std::cos(theta)});
  return -std::sin(theta) * n * (n + 2.0 * lambda) / (2.0 * lambda + 1.0) * ratio;
}

std::vector<double> normalized_gegenbauer_theta_derivative_all(double lambda, int max_degree,
                                                               double theta) {
  std::vector<double> out(max_degree + 1, 0.0);
  if (max_degree == 0) {
    return out;
  }
  if (lambda == 0.0) {
    for (int n = 1; n <= max_degree; ++n) {
      out[n] = -n * std::sin(n * theta);
    }
    return out;
  }
  const double s = std::sin(theta);
  const std::vector<double> shifted =
      normalized_gegenbauer_all(lambda + 1.0, max_degree - 1, std::cos(theta));
  for (int n = 1; n <= max_degree; ++n) {
    out[n] = -s * n * (n + 2.0 * lambda) / (2.0 * lambda + 1.0) * shifted[n - 1];
  }
  return out;
}

}  // namespace spherepd
