#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "spherepd/model.hpp"
#include "spherepd/schoenberg.hpp"

namespace spherepd {

/// n unit vectors in R^{d+1}: normalized standard Gaussian draws from a
/// seeded mt19937_64. Duplicates are redrawn.
std::vector<std::vector<double>> sample_sphere(int d, int n, std::uint64_t seed);

/// G_ij = psi(arccos <x_i, x_j>), inner products clamped to [-1, 1].
Eigen::MatrixXd gram_matrix(const IsotropicFunction& psi,
                            const std::vector<std::vector<double>>& points);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& matrix);

struct PDCheckReport {
  int dimension = 0;
  int n_points = 0;
  std::uint64_t seed = 0;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  /// min_eigenvalue >= -tolerance.
  bool consistent = true;

  /// "pd-consistent" or "pd-violated". A finite sample never certifies
  /// positive definiteness, only consistency with it.
  std::string verdict() const { return consistent ? "pd-consistent" : "pd-violated"; }
};

/// Gram-matrix test on n sampled points of S^d, tolerance 1e-8 n.
PDCheckReport pd_check(const IsotropicFunction& psi, int d, int n, std::uint64_t seed);

struct ClassReport {
  bool nonnegative = true;
  bool normalized = false;
  double coefficient_sum = 0.0;
  int truncation = 0;
  /// Strictly positive coefficients at even / odd indices up to truncation.
  int positive_even = 0;
  int positive_odd = 0;
  std::vector<int> positive_indices;
  std::string caveat;
};

ClassReport class_report(const SchoenbergSequence& seq);

/// One derivative order in a differentiability probe.
struct OrderProbe {
  int order = 0;
  double left = 0.0;
  double right = 0.0;
  double gap = 0.0;
  double noise = 0.0;
  bool left_converged = true;
  bool right_converged = true;
  bool passed = true;
};

struct SmoothnessProbe {
  double theta0 = 0.0;
  int max_order = 0;
  std::vector<OrderProbe> orders;
  /// First order whose one-sided derivatives disagree; 0 if all pass.
  int first_failing_order = 0;
};

/// One-sided finite-difference derivatives (orders 1..max_order <= 5) from
/// both sides of theta0 under step refinement. An order fails when a side
/// does not converge or when the two limits differ by more than ten times
/// the noise estimate. Throws StepUnderflowError when theta0 is too close
/// to an endpoint for a usable step.
SmoothnessProbe differentiability_probe(const IsotropicFunction& psi, double theta0,
                                        int max_order);

}  // namespace spherepd
