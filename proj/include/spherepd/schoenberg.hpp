#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spherepd/model.hpp"

namespace spherepd {

/// Sphere dimension d >= 1, or the infinite-dimensional limit.
struct Dimension {
  int value = 1;
  bool infinite = false;

  static Dimension finite(int d);
  static Dimension inf() { return Dimension{0, true}; }

  /// "3", "inf".
  std::string to_string() const;
  /// Accepts a positive integer or "inf".
  static Dimension parse(std::string_view text);

  friend bool operator==(const Dimension& a, const Dimension& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// Coefficients below -kCoefficientTolerance mark a sequence as outside the
/// class; smaller negatives are clamped to zero.
inline constexpr double kCoefficientTolerance = 1e-10;

/// Truncated Schoenberg sequence (b_0, ..., b_N) in the normalized Gegenbauer
/// basis of S^d, or in powers of cos(theta) for the infinite case.
struct SchoenbergSequence {
  Dimension dimension;
  std::vector<double> coefficients;
  double tail_mass = 0.0;
  /// Sum of coefficients plus tail is 1 within 1e-8.
  bool normalized = false;
  /// No coefficient below -kCoefficientTolerance.
  bool class_member = true;

  /// Applies the clamping rule and sets the two flags.
  static SchoenbergSequence make(Dimension dimension, std::vector<double> coefficients,
                                 double tail_mass = 0.0);

  int max_degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double at(int n) const {
    return n >= 0 && n < static_cast<int>(coefficients.size()) ? coefficients[n] : 0.0;
  }
};

// --- synthesis -----------------------------------------------------------

/// psi(theta) = sum b_n R_n(cos theta), or sum b_n cos^n(theta) for d = inf.
double synthesize(const SchoenbergSequence& seq, double theta);

/// d/dtheta of synthesize.
double synthesize_derivative(const SchoenbergSequence& seq, double theta);

/// The synthesized function with analytic derivative and psi''(0) attached.
IsotropicFunction as_function(const SchoenbergSequence& seq);

// --- analysis ------------------------------------------------------------

struct AnalyzeOptions {
  /// 0 selects 64 * ceil((N + d) / 32).
  int nodes_per_piece = 0;
  /// Agreement required between successive node doublings, relative to the
  /// largest coefficient.
  double tolerance = 1e-9;
  int max_doublings = 3;
};

/// Projects psi onto the first N+1 normalized Gegenbauer polynomials of S^d
/// with composite Gauss-Legendre quadrature. Throws QuadratureError when the
/// constant function does not project to b_0 = 1 within 1e-8, or when node
/// doubling does not settle.
SchoenbergSequence analyze(const IsotropicFunction& psi, int d, int N,
                           const AnalyzeOptions& options = {});

/// Integral of R_n(cos theta)^2 sin^{d-1}(theta) over [0, pi].
double projection_norm(int d, int n);

// --- conversion kernels --------------------------------------------------

struct KernelKind {
  enum class Kind { kappa, tau } kind = Kind::tau;
  int d = 0;  // for kappa only

  static KernelKind kappa(int d) { return {Kind::kappa, d}; }
  static KernelKind tau() { return {Kind::tau, 0}; }
};

/// kappa_d(j, n) or tau(j, n) for 0 <= n <= j with j - n even. Evaluated as
/// products of gamma ratios, accurate to a few ulps. Throws
/// std::invalid_argument for odd j - n.
double kernel_value(KernelKind kind, int j, int n);

/// Bulk kernel evaluation backed by a table of log-gamma at half-integers.
class ConversionKernel {
 public:
  ConversionKernel(KernelKind kind, int max_j);
  double operator()(int j, int n) const;
  KernelKind kind() const { return kind_; }

 private:
  double log_gamma_half(int k) const { return half_log_gamma_[k]; }  // log Gamma(k/2)

  KernelKind kind_;
  int max_j_;
  std::vector<double> half_log_gamma_;
  double log_prefactor_ = 0.0;
};

/// The 1-Schoenberg sequence of a d-Schoenberg (d >= 2) or infinite sequence.
/// Output has the same truncation length; tail mass is carried over.
SchoenbergSequence to_one_dim(const SchoenbergSequence& seq);

// --- moments and derivative formulas -------------------------------------

struct MomentSum {
  double value = 0.0;
  bool convergent = true;
  /// Contribution of the last ten terms.
  double tail_increment = 0.0;
};

/// Sum of b_n n^power, flagged non-convergent when the last ten terms
/// contribute more than 1e-6 of the total. Sequences with N < 20 are taken
/// as exact finite expansions.
MomentSum moment_sum(const SchoenbergSequence& seq, int power);

/// -sum b_{n+1} (n+1)(n+d)/d, or -sum b_{n+1}(n+1) for d = inf.
/// Throws DivergenceError when the governing moment does not converge.
double second_derivative_at_zero_from_sequence(const SchoenbergSequence& seq);

/// sum b_{n+1}(n+1)(n+d)/d (1 + 3n(n+d+1)/(d+2)), or sum b_{n+1}(n+1)(3n+1)
/// for d = inf.
double fourth_derivative_at_zero_from_sequence(const SchoenbergSequence& seq);

/// Upper bound (4/d) j^2 / c^2 on -psi''(0) for members supported in [0, c],
/// where j is the first positive zero of J_{(d-2)/2}. Only d = 1 and d = 3.
double corner_bound(int d, double c);

// --- closed-form sequences -----------------------------------------------

/// Infinite-dimensional sequence of the multiquadric: a negative binomial
/// series in cos(theta), truncated once the remaining mass is below 1e-16.
SchoenbergSequence multiquadric_infinite_sequence(double tau, double delta);

/// 1-Schoenberg sequence of the multiquadric with tau = 1 (Poisson kernel):
/// b_0 = (1-delta)/(1+delta), b_n = 2 delta^n (1-delta)/(1+delta).
SchoenbergSequence multiquadric_circle_sequence(double delta, int N);

}  // namespace spherepd
