#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spherepd {

/// A function psi on [0, pi] of the geodesic distance, together with whatever
/// analytic metadata is known about it.
///
/// Values are immutable; the `with_*` members return modified copies. Copies
/// share the underlying evaluators, so deeply nested constructions stay cheap
/// to pass around.
///
/// Metadata conventions:
///  - `second_derivative_at_zero` refers to the even extension psi(|theta|);
///    setting it implies psi'(0) = 0.
///  - `support_radius` c means psi(theta) = 0 for theta >= c.
///  - `breakpoints` are interior points where psi may fail to be smooth.
///    Quadrature splits there (and at the support radius).
class IsotropicFunction {
 public:
  using Map = std::function<double(double)>;

  IsotropicFunction(Map evaluator, std::string label);

  double operator()(double theta) const { return (*evaluator_)(theta); }

  bool has_derivative() const { return derivative_ != nullptr; }
  /// Analytic psi'(theta). Throws DerivativeUnavailableError if none was supplied.
  double derivative(double theta) const;

  const std::optional<double>& second_derivative_at_zero() const { return second_at_zero_; }
  const std::optional<double>& support_radius() const { return support_radius_; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  const std::string& label() const { return label_; }

  /// Breakpoints plus the support radius, sorted; what integrators split at.
  std::vector<double> quadrature_breaks() const;

  IsotropicFunction with_derivative(Map derivative) const;
  IsotropicFunction with_second_derivative_at_zero(double value) const;
  IsotropicFunction with_support_radius(double c) const;
  IsotropicFunction with_breakpoints(std::vector<double> points) const;
  IsotropicFunction with_label(std::string label) const;

 private:
  std::shared_ptr<const Map> evaluator_;
  std::shared_ptr<const Map> derivative_;
  std::optional<double> second_at_zero_;
  std::optional<double> support_radius_;
  std::vector<double> breakpoints_;
  std::string label_;
};

/// A radial function phi on [0, inf), used as input to the sphere
/// constructions (Yadrenko lift, restriction).
class RadialFunction {
 public:
  using Map = std::function<double(double)>;

  RadialFunction(Map evaluator, std::string label);

  double operator()(double t) const { return (*evaluator_)(t); }

  bool has_derivative() const { return derivative_ != nullptr; }
  double derivative(double t) const;

  const std::optional<double>& second_derivative_at_zero() const { return second_at_zero_; }
  const std::optional<double>& support_radius() const { return support_radius_; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  const std::string& label() const { return label_; }

  RadialFunction with_derivative(Map derivative) const;
  RadialFunction with_second_derivative_at_zero(double value) const;
  RadialFunction with_support_radius(double c) const;
  RadialFunction with_breakpoints(std::vector<double> points) const;

 private:
  std::shared_ptr<const Map> evaluator_;
  std::shared_ptr<const Map> derivative_;
  std::optional<double> second_at_zero_;
  std::optional<double> support_radius_;
  std::vector<double> breakpoints_;
  std::string label_;
};

// --- parametric families -------------------------------------------------

/// psi(theta) = (1 - delta)^(2 tau) / (1 + delta^2 - 2 delta cos theta)^tau,
/// tau > 0, delta in (0, 1).
IsotropicFunction make_multiquadric(double tau, double delta);

enum class WendlandKind { C2, C4 };

/// C2: (1 + tau s)(1 - s)_+^tau, C4: (1 + tau s + (tau^2 - 1) s^2 / 3)(1 - s)_+^tau,
/// with s = theta / c. Requires c in (0, pi) and tau >= 4 (C2) or tau >= 6 (C4).
IsotropicFunction make_wendland(WendlandKind kind, double tau, double c);

/// Gaspari-Cohn piecewise quintic scaled to support radius c > 0.
RadialFunction make_gaspari_cohn(double c);

/// The profile that the descente produces from Gaspari-Cohn,
/// 1 - 9t/8 - 12t^2/5 + 3t^3 on [0, 1/2],
/// (-1 - 3t + 24t^2 + 40t^3)(1/t - 1)^3 / 40 on [1/2, 1], 0 beyond.
RadialFunction make_gc_descente_profile();

/// theta -> phi(2 sin(theta / 2)). Preserves phi''(0).
IsotropicFunction yadrenko_lift(const RadialFunction& phi);

/// phi restricted to [0, pi]. Requires a declared support radius <= pi.
IsotropicFunction restrict_to_sphere(const RadialFunction& phi);

/// (1 - theta / c)_+ for c in (0, pi).
IsotropicFunction make_truncated_linear(double c);

/// psi = 1.
IsotropicFunction make_constant();
/// psi = cos(theta).
IsotropicFunction make_cosine();
/// psi = (1 + cos(theta)) / 2.
IsotropicFunction make_raised_cosine();

// --- finite differences --------------------------------------------------

/// Central finite-difference derivative of the given order (1..5) at an
/// interior theta. Order 1 uses h = max(1e-5, 1e-7 theta); higher orders use
/// a Richardson-extrapolated symmetric stencil with an order-dependent step.
/// Throws StepUnderflowError when the stencil would leave [0, pi].
double numeric_derivative(const IsotropicFunction& f, int order, double theta);

/// Derivative of even order of the even extension psi(|theta|) at 0
/// (Richardson-extrapolated symmetric stencil). Odd orders are 0.
double even_derivative_at_zero(const IsotropicFunction& f, int order);

/// psi''(0) from metadata when present, else from finite differences.
double second_derivative_at_zero_or_estimate(const IsotropicFunction& f);

/// psi'(theta) from the analytic derivative when present, else numeric.
double first_derivative(const IsotropicFunction& f, double theta);

/// Derivative of any order >= 0: the value itself, the analytic first
/// derivative when present, numeric otherwise.
double derivative_of_order(const IsotropicFunction& f, int order, double theta);

}  // namespace spherepd
