#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace spherepd::numerics {

/// Neumaier's variant of Kahan summation. Order of additions is the caller's,
/// so results are deterministic for a fixed loop order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// log Gamma for positive arguments. Uses the reentrant glibc variant where
/// available so that concurrent callers do not race on `signgam`.
double log_gamma(double x);

/// log of the binomial coefficient C(n, k) for real n >= k >= 0.
double log_binomial(double n, double k);

/// Finite-difference weights (Fornberg) for the derivative of order `order`
/// at 0 from samples at the given offsets (in units of the step).
std::vector<double> finite_difference_weights(int order, std::span<const double> offsets);

/// Gauss hypergeometric series 2F1(a, b; c; z) summed directly with
/// compensated summation. Valid for |z| < 1; throws ConvergenceError when the
/// term ratio test does not reach double precision within `max_terms`.
double hyp2f1_series(double a, double b, double c, double z, int max_terms = 100000);

/// Binomial coefficient as a double via log-gamma (exact for small inputs up
/// to rounding).
double binomial(int n, int k);

}  // namespace spherepd::numerics
