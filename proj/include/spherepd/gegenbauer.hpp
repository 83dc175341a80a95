#pragma once

#include <vector>

namespace spherepd {

/// Argument of a Gegenbauer evaluation: C_n^lambda(x), with lambda = (d-1)/2
/// for the sphere S^d and x = cos(theta).
struct BasisPoint {
  double lambda = 0.0;
  int degree = 0;
  double x = 1.0;

  /// Throws std::domain_error unless lambda >= 0, degree >= 0 and |x| <= 1.
  void validate() const;
};

/// lambda attached to the d-dimensional sphere.
constexpr double sphere_lambda(int dimension) { return 0.5 * (dimension - 1); }

/// C_n^lambda(x) by the three-term recurrence; cos(n arccos x) for lambda = 0.
double gegenbauer_value(const BasisPoint& p);

/// C_n^lambda(1) = Gamma(n + 2 lambda) / (n! Gamma(2 lambda)), evaluated in
/// log-gamma space. Equal to 1 when lambda = 0 or n = 0.
double gegenbauer_at_one(double lambda, int n);

/// C_n^lambda(x) / C_n^lambda(1). The ratio is propagated by its own
/// recurrence, so it stays finite long after C_n^lambda(1) overflows.
double normalized_gegenbauer(const BasisPoint& p);

/// All normalized values for degrees 0..max_degree at one abscissa.
std::vector<double> normalized_gegenbauer_all(double lambda, int max_degree, double x);

/// d/dtheta C_n^lambda(cos theta) = -sin(theta) 2 lambda C_{n-1}^{lambda+1}(cos theta).
/// Requires lambda > 0 and n >= 1.
double gegenbauer_theta_derivative(double lambda, int n, double theta);

/// d/dtheta of the normalized polynomial,
/// -sin(theta) n (n + 2 lambda) / (2 lambda + 1) * R_{n-1}^{lambda+1}(cos theta).
/// Also valid for lambda = 0, where it reduces to -n sin(n theta).
double normalized_gegenbauer_theta_derivative(double lambda, int n, double theta);

/// Normalized theta-derivatives for degrees 0..max_degree.
std::vector<double> normalized_gegenbauer_theta_derivative_all(double lambda, int max_degree,
                                                               double theta);

}  // namespace spherepd
