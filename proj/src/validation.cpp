#include "spherepd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "spherepd/errors.hpp"
#include "spherepd/numerics.hpp"

namespace spherepd {

std::vector<std::vector<double>> sample_sphere(int d, int n, std::uint64_t seed) {
  if (d < 1 || n < 1) {
    throw std::invalid_argument("sample_sphere: need d >= 1 and n >= 1");
  }
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  std::vector<std::vector<double>> points;
  points.reserve(n);
  while (static_cast<int>(points.size()) < n) {
    std::vector<double> x(d + 1);
    double norm2 = 0.0;
    for (double& xi : x) {
      xi = gaussian(engine);
      norm2 += xi * xi;
    }
    if (norm2 == 0.0) {
      continue;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& xi : x) {
      xi *= inv;
    }
    if (std::find(points.begin(), points.end(), x) == points.end()) {
      points.push_back(std::move(x));
    }
  }
  return points;
}

Eigen::MatrixXd gram_matrix(const IsotropicFunction& psi,
                            const std::vector<std::vector<double>>& points) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd gram(n, n);
  const double at_zero = psi(0.0);
  for (int i = 0; i < n; ++i) {
    gram(i, i) = at_zero;
    for (int j = i + 1; j < n; ++j) {
      double inner = 0.0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        inner += points[i][k] * points[j][k];
      }
      const double value = psi(std::acos(std::clamp(inner, -1.0, 1.0)));
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  return gram;
}

double min_eigenvalue(const Eigen::MatrixXd& matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("min_eigenvalue: eigensolver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

PDCheckReport pd_check(const IsotropicFunction& psi, int d, int n, std::uint64_t seed) {
  PDCheckReport report;
  report.dimension = d;
  report.n_points = n;
  report.seed = seed;
  report.tolerance = 1e-8 * n;
  report.min_eigenvalue = min_eigenvalue(gram_matrix(psi, sample_sphere(d, n, seed)));
  report.consistent = report.min_eigenvalue >= -report.tolerance;
  return report;
}

ClassReport class_report(const SchoenbergSequence& seq) {
  ClassReport report;
  report.nonnegative = seq.class_member;
  report.normalized = seq.normalized;
  report.truncation = seq.max_degree();
  numerics::CompensatedSum sum;
  for (int n = 0; n <= seq.max_degree(); ++n) {
    const double b = seq.coefficients[n];
    sum.add(b);
    if (b > 0.0) {
      report.positive_indices.push_back(n);
      (n % 2 == 0 ? report.positive_even : report.positive_odd) += 1;
    }
  }
  report.coefficient_sum = sum.value();
  report.caveat =
      "counts cover indices 0.." + std::to_string(seq.max_degree()) +
      " only; infinitely many positive even and odd coefficients cannot be certified from a "
      "truncated sequence";
  return report;
}

// --- differentiability probe ---------------------------------------------

namespace {

struct SideEstimate {
  double value = 0.0;
  double change = 0.0;
  double roundoff = 0.0;
  bool converged = true;
};

template <typename F>
SideEstimate one_sided(const F& f, double theta0, int order, double h, int side) {
  std::vector<double> offsets(order + 2);
  for (int k = 0; k < order + 2; ++k) {
    offsets[k] = side * k;
  }
  const std::vector<double> weights = numerics::finite_difference_weights(order, offsets);
  double weight_norm = 0.0;
  for (double w : weights) {
    weight_norm += std::abs(w);
  }
  double scale = 0.0;
  auto estimate = [&](double step) {
    numerics::CompensatedSum sum;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      const double value = f(theta0 + offsets[k] * step);
      scale = std::max(scale, std::abs(value));
      sum.add(weights[k] * value);
    }
    return sum.value() / std::pow(step, order);
  };
  auto roundoff = [&](double step) {
    return 1e-15 * std::max(scale, 1e-300) * weight_norm / std::pow(step, order);
  };

  // Halve the step until successive differences shrink at the h^2 rate
  // twice in a row, or until rounding error takes over.
  constexpr int kMaxLevels = 12;
  double step = h;
  double previous = estimate(step);
  double previous_change = -1.0;
  int asymptotic = 0;
  SideEstimate out;
  out.converged = false;
  for (int level = 1; level < kMaxLevels; ++level) {
    step *= 0.5;
    const double current = estimate(step);
    const double change = std::abs(current - previous);
    out.value = current + (current - previous) / 3.0;
    out.change = change;
    out.roundoff = roundoff(step);
    if (change <= 10.0 * out.roundoff || change <= 1e-12 * std::max(1.0, std::abs(current))) {
      out.converged = true;
      out.change = std::max(change, out.roundoff);
      break;
    }
    asymptotic = previous_change >= 0.0 && change <= 0.6 * previous_change ? asymptotic + 1 : 0;
    if (asymptotic >= 2) {
      out.converged = true;
      break;
    }
    previous = current;
    previous_change = change;
  }
  return out;
}

}  // namespace

SmoothnessProbe differentiability_probe(const IsotropicFunction& psi, double theta0,
                                        int max_order) {
  constexpr double kPi = std::numbers::pi;
  if (max_order < 1 || max_order > 5) {
    throw std::invalid_argument("differentiability_probe: max_order must be in 1..5");
  }
  if (!(theta0 > 0.0 && theta0 < kPi)) {
    throw StepUnderflowError("differentiability_probe: theta0 must lie in (0, pi)");
  }
  SmoothnessProbe probe;
  probe.theta0 = theta0;
  probe.max_order = max_order;
  for (int m = 1; m <= max_order; ++m) {
    const double h = std::min({0.05, theta0 / (m + 2), (kPi - theta0) / (m + 2)});
    if (h < 1e-4) {
      throw StepUnderflowError("differentiability_probe: theta0 too close to an endpoint");
    }
    const SideEstimate left = one_sided(psi, theta0, m, h, -1);
    const SideEstimate right = one_sided(psi, theta0, m, h, +1);
    // smooth control of comparable size through the same stencils
    const double scale = std::max(std::abs(psi(theta0)), 1e-3);
    auto control = [scale](double t) { return scale * std::cos(t); };
    const SideEstimate control_left = one_sided(control, theta0, m, h, -1);
    const SideEstimate control_right = one_sided(control, theta0, m, h, +1);

    OrderProbe order;
    order.order = m;
    order.left = left.value;
    order.right = right.value;
    order.gap = std::abs(left.value - right.value);
    order.noise = std::max({left.change, right.change, 10.0 * left.roundoff,
                            10.0 * right.roundoff,
                            std::abs(control_left.value - control_right.value)});
    order.left_converged = left.converged;
    order.right_converged = right.converged;
    order.passed = left.converged && right.converged && order.gap <= 10.0 * order.noise;
    if (!order.passed && probe.first_failing_order == 0) {
      probe.first_failing_order = m;
    }
    probe.orders.push_back(order);
  }
  return probe;
}

}  // namespace spherepd
