#include "spherepd/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spherepd/errors.hpp"
#include "spherepd/numerics.hpp"

namespace spherepd {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_params(std::initializer_list<std::pair<const char*, double>> params) {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [name, value] : params) {
    os << (first ? "" : ",") << name << "=" << value;
    first = false;
  }
  return os.str();
}

// (1 - s)^p for s < 1, exact 0 from s >= 1 on
double truncated_power(double s, double p) {
  if (s >= 1.0) {
    return 0.0;
  }
  return std::exp(p * std::log1p(-s));
}

}  // namespace

// --- IsotropicFunction ---------------------------------------------------

IsotropicFunction::IsotropicFunction(Map evaluator, std::string label)
    : evaluator_(std::make_shared<const Map>(std::move(evaluator))), label_(std::move(label)) {}

double IsotropicFunction::derivative(double theta) const {
  if (!derivative_) {
    throw DerivativeUnavailableError("no analytic derivative for " + label_);
  }
  return (*derivative_)(theta);
}

std::vector<double> IsotropicFunction::quadrature_breaks() const {
  std::vector<double> breaks = breakpoints_;
  if (support_radius_) {
    breaks.push_back(*support_radius_);
  }
  std::sort(breaks.begin(), breaks.end());
  return breaks;
}

IsotropicFunction IsotropicFunction::with_derivative(Map derivative) const {
  IsotropicFunction copy = *this;
  copy.derivative_ = std::make_shared<const Map>(std::move(derivative));
  return copy;
}

IsotropicFunction IsotropicFunction::with_second_derivative_at_zero(double value) const {
  IsotropicFunction copy = *this;
  copy.second_at_zero_ = value;
  return copy;
}

IsotropicFunction IsotropicFunction::with_support_radius(double c) const {
  IsotropicFunction copy = *this;
  copy.support_radius_ = c;
  return copy;
}

IsotropicFunction IsotropicFunction::with_breakpoints(std::vector<double> points) const {
  IsotropicFunction copy = *this;
  std::sort(points.begin(), points.end());
  copy.breakpoints_ = std::move(points);
  return copy;
}

IsotropicFunction IsotropicFunction::with_label(std::string label) const {
  IsotropicFunction copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

// --- RadialFunction ------------------------------------------------------

RadialFunction::RadialFunction(Map evaluator, std::string label)
    : evaluator_(std::make_shared<const Map>(std::move(evaluator))), label_(std::move(label)) {}

double RadialFunction::derivative(double t) const {
  if (!derivative_) {
    throw DerivativeUnavailableError("no analytic derivative for " + label_);
  }
  return (*derivative_)(t);
}

RadialFunction RadialFunction::with_derivative(Map derivative) const {
  RadialFunction copy = *this;
  copy.derivative_ = std::make_shared<const Map>(std::move(derivative));
  return copy;
}

RadialFunction RadialFunction::with_second_derivative_at_zero(double value) const {
  RadialFunction copy = *this;
  copy.second_at_zero_ = value;
  return copy;
}

RadialFunction RadialFunction::with_support_radius(double c) const {
  RadialFunction copy = *this;
  copy.support_radius_ = c;
  return copy;
}

RadialFunction RadialFunction::with_breakpoints(std::vector<double> points) const {
  RadialFunction copy = *this;
  std::sort(points.begin(), points.end());
  copy.breakpoints_ = std::move(points);
  return copy;
}

// --- families ------------------------------------------------------------

IsotropicFunction make_multiquadric(double tau, double delta) {
  if (!(tau > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("multiquadric: need tau > 0 and delta in (0, 1)");
  }
  const double log_scale = 2.0 * tau * std::log1p(-delta);
  auto value = [tau, delta, log_scale](double theta) {
    if (theta == 0.0) {
      return 1.0;
    }
    const double q = 1.0 + delta * delta - 2.0 * delta * std::cos(theta);
    return std::exp(log_scale - tau * std::log(q));
  };
  auto derivative = [tau, delta, value](double theta) {
    const double q = 1.0 + delta * delta - 2.0 * delta * std::cos(theta);
    return -2.0 * delta * tau * std::sin(theta) * value(theta) / q;
  };
  const double one_minus = 1.0 - delta;
  return IsotropicFunction(value, "multiquadric(" + format_params({{"tau", tau}, {"delta", delta}}) + ")")
      .with_derivative(derivative)
      .with_second_derivative_at_zero(-2.0 * delta * tau / (one_minus * one_minus));
}

IsotropicFunction make_wendland(WendlandKind kind, double tau, double c) {
  if (!(c > 0.0 && c < kPi)) {
    throw std::domain_error("wendland: support c must lie in (0, pi)");
  }
  const std::string params = format_params({{"tau", tau}, {"c", c}});
  if (kind == WendlandKind::C2) {
    if (!(tau >= 4.0)) {
      throw std::domain_error("wendland C2: tau >= 4 required");
    }
    auto value = [tau, c](double theta) {
      const double s = theta / c;
      return (1.0 + tau * s) * truncated_power(s, tau);
    };
    auto derivative = [tau, c](double theta) {
      const double s = theta / c;
      return -tau * (tau + 1.0) / c * s * truncated_power(s, tau - 1.0);
    };
    return IsotropicFunction(value, "wendland-c2(" + params + ")")
        .with_derivative(derivative)
        .with_second_derivative_at_zero(-tau * (1.0 + tau) / (c * c))
        .with_support_radius(c);
  }
  if (!(tau >= 6.0)) {
    throw std::domain_error("wendland C4: tau >= 6 required");
  }
  auto value = [tau, c](double theta) {
    const double s = theta / c;
    return (1.0 + tau * s + (tau * tau - 1.0) / 3.0 * s * s) * truncated_power(s, tau);
  };
  auto derivative = [tau, c](double theta) {
    const double s = theta / c;
    return -(tau + 1.0) * (tau + 2.0) / (3.0 * c) * s * (1.0 + (tau - 1.0) * s) *
           truncated_power(s, tau - 1.0);
  };
  return IsotropicFunction(value, "wendland-c4(" + params + ")")
      .with_derivative(derivative)
      .with_second_derivative_at_zero(-(tau + 1.0) * (tau + 2.0) / (3.0 * c * c))
      .with_support_radius(c);
}

RadialFunction make_gaspari_cohn(double c) {
  if (!(c > 0.0)) {
    throw std::domain_error("gaspari-cohn: c > 0 required");
  }
  auto profile = [](double t) {
    if (t <= 0.5) {
      return 1.0 - 20.0 / 3.0 * t * t + 5.0 * t * t * t + 8.0 * std::pow(t, 4) - 8.0 * std::pow(t, 5);
    }
    if (t < 1.0) {
      return (8.0 * t * t + 8.0 * t - 1.0) * std::pow(1.0 - t, 4) / (3.0 * t);
    }
    return 0.0;
  };
  auto profile_derivative = [](double t) {
    if (t <= 0.5) {
      return -40.0 / 3.0 * t + 15.0 * t * t + 32.0 * t * t * t - 40.0 * std::pow(t, 4);
    }
    if (t < 1.0) {
      const double u = 1.0 - t;
      return ((8.0 + 1.0 / (t * t)) * std::pow(u, 4) - 4.0 * (8.0 * t + 8.0 - 1.0 / t) * std::pow(u, 3)) /
             3.0;
    }
    return 0.0;
  };
  return RadialFunction([c, profile](double t) { return profile(t / c); },
                        "gaspari-cohn(" + format_params({{"c", c}}) + ")")
      .with_derivative([c, profile_derivative](double t) { return profile_derivative(t / c) / c; })
      .with_second_derivative_at_zero(-40.0 / (3.0 * c * c))
      .with_support_radius(c)
      .with_breakpoints({0.5 * c});
}

RadialFunction make_gc_descente_profile() {
  auto value = [](double t) {
    if (t <= 0.5) {
      return 1.0 - 9.0 / 8.0 * t - 12.0 / 5.0 * t * t + 3.0 * t * t * t;
    }
    if (t < 1.0) {
      const double r = 1.0 / t - 1.0;
      return (-1.0 - 3.0 * t + 24.0 * t * t + 40.0 * t * t * t) * r * r * r / 40.0;
    }
    return 0.0;
  };
  auto derivative = [](double t) {
    if (t <= 0.5) {
      return -9.0 / 8.0 - 24.0 / 5.0 * t + 9.0 * t * t;
    }
    if (t < 1.0) {
      const double r = 1.0 / t - 1.0;
      const double p = -1.0 - 3.0 * t + 24.0 * t * t + 40.0 * t * t * t;
      const double dp = -3.0 + 48.0 * t + 120.0 * t * t;
      return (dp * r * r * r - 3.0 * p * r * r / (t * t)) / 40.0;
    }
    return 0.0;
  };
  return RadialFunction(value, "gc-descente-profile")
      .with_derivative(derivative)
      .with_support_radius(1.0)
      .with_breakpoints({0.5});
}

IsotropicFunction yadrenko_lift(const RadialFunction& phi) {
  auto value = [phi](double theta) { return phi(2.0 * std::sin(0.5 * theta)); };
  IsotropicFunction lifted(value, "yadrenko(" + phi.label() + ")");
  if (phi.has_derivative()) {
    lifted = lifted.with_derivative([phi](double theta) {
      return phi.derivative(2.0 * std::sin(0.5 * theta)) * std::cos(0.5 * theta);
    });
  }
  if (phi.second_derivative_at_zero()) {
    lifted = lifted.with_second_derivative_at_zero(*phi.second_derivative_at_zero());
  }
  const auto chord_to_angle = [](double t) { return 2.0 * std::asin(0.5 * t); };
  if (phi.support_radius() && *phi.support_radius() < 2.0) {
    lifted = lifted.with_support_radius(chord_to_angle(*phi.support_radius()));
  }
  std::vector<double> breaks;
  for (double t : phi.breakpoints()) {
    if (t > 0.0 && t < 2.0) {
      breaks.push_back(chord_to_angle(t));
    }
  }
  return lifted.with_breakpoints(std::move(breaks));
}

IsotropicFunction restrict_to_sphere(const RadialFunction& phi) {
  if (!phi.support_radius() || *phi.support_radius() > kPi * (1.0 + 1e-15)) {
    throw std::invalid_argument("restrict_to_sphere: phi must vanish beyond a support radius <= pi");
  }
  IsotropicFunction restricted([phi](double theta) { return phi(theta); },
                               "restricted(" + phi.label() + ")");
  if (phi.has_derivative()) {
    restricted = restricted.with_derivative([phi](double theta) { return phi.derivative(theta); });
  }
  if (phi.second_derivative_at_zero()) {
    restricted = restricted.with_second_derivative_at_zero(*phi.second_derivative_at_zero());
  }
  std::vector<double> breaks;
  for (double t : phi.breakpoints()) {
    if (t > 0.0 && t < kPi) {
      breaks.push_back(t);
    }
  }
  return restricted.with_support_radius(std::min(*phi.support_radius(), kPi))
      .with_breakpoints(std::move(breaks));
}

IsotropicFunction make_truncated_linear(double c) {
  if (!(c > 0.0 && c < kPi)) {
    throw std::domain_error("truncated linear: c must lie in (0, pi)");
  }
  auto value = [c](double theta) { return theta >= c ? 0.0 : 1.0 - theta / c; };
  auto derivative = [c](double theta) {
    if (theta == c) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return theta < c ? -1.0 / c : 0.0;
  };
  return IsotropicFunction(value, "truncated-linear(" + format_params({{"c", c}}) + ")")
      .with_derivative(derivative)
      .with_support_radius(c);
}

IsotropicFunction make_constant() {
  return IsotropicFunction([](double) { return 1.0; }, "constant")
      .with_derivative([](double) { return 0.0; })
      .with_second_derivative_at_zero(0.0);
}

IsotropicFunction make_cosine() {
  return IsotropicFunction([](double theta) { return std::cos(theta); }, "cosine")
      .with_derivative([](double theta) { return -std::sin(theta); })
      .with_second_derivative_at_zero(-1.0);
}

IsotropicFunction make_raised_cosine() {
  return IsotropicFunction([](double theta) { return 0.5 * (1.0 + std::cos(theta)); }, "raised-cosine")
      .with_derivative([](double theta) { return -0.5 * std::sin(theta); })
      .with_second_derivative_at_zero(-0.5);
}

// --- finite differences --------------------------------------------------

namespace {

// step for the symmetric stencil of each order (orders 2..5)
double symmetric_step(int order) {
  switch (order) {
    case 2: return 1e-3;
    case 3: return 4e-3;
    case 4: return 8e-3;
    default: return 1.5e-2;
  }
}

struct Stencil {
  std::vector<double> offsets;
  std::vector<double> weights;
  int half_width = 0;
};

const Stencil& symmetric_stencil(int order) {
  static const std::vector<Stencil> stencils = [] {
    std::vector<Stencil> all(7);
    for (int m = 1; m <= 6; ++m) {
      Stencil s;
      s.half_width = (m + 1) / 2;
      for (int i = -s.half_width; i <= s.half_width; ++i) {
        s.offsets.push_back(i);
      }
      s.weights = numerics::finite_difference_weights(m, s.offsets);
      all[m] = std::move(s);
    }
    return all;
  }();
  return stencils.at(order);
}

template <typename F>
double apply_stencil(const F& f, const Stencil& stencil, int order, double center, double h) {
  numerics::CompensatedSum sum;
  for (std::size_t i = 0; i < stencil.offsets.size(); ++i) {
    if (stencil.weights[i] != 0.0) {
      sum.add(stencil.weights[i] * f(center + stencil.offsets[i] * h));
    }
  }
  return sum.value() / std::pow(h, order);
}

template <typename F>
double richardson(const F& f, int order, double center, double h) {
  const Stencil& stencil = symmetric_stencil(order);
  const double fine = apply_stencil(f, stencil, order, center, h);
  const double coarse = apply_stencil(f, stencil, order, center, 2.0 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double numeric_derivative(const IsotropicFunction& f, int order, double theta) {
  if (order < 1 || order > 5) {
    throw std::invalid_argument("numeric_derivative: order must be in 1..5");
  }
  if (order == 1) {
    const double h = std::max(1e-5, theta * 1e-7);
    if (theta - h < 0.0 || theta + h > kPi) {
      throw StepUnderflowError("numeric_derivative: theta too close to an endpoint");
    }
    return (f(theta + h) - f(theta - h)) / (2.0 * h);
  }
  const double h = symmetric_step(order);
  const double span = 2.0 * h * symmetric_stencil(order).half_width;
  if (theta - span < 0.0 || theta + span > kPi) {
    throw StepUnderflowError("numeric_derivative: theta too close to an endpoint for order " +
                             std::to_string(order));
  }
  return richardson(f, order, theta, h);
}

double even_derivative_at_zero(const IsotropicFunction& f, int order) {
  if (order < 0 || order > 6) {
    throw std::invalid_argument("even_derivative_at_zero: order must be in 0..6");
  }
  if (order == 0) {
    return f(0.0);
  }
  if (order % 2 == 1) {
    return 0.0;
  }
  const double h = symmetric_step(std::min(order, 5));
  auto even = [&f](double t) { return f(std::abs(t)); };
  return richardson(even, order, 0.0, h);
}

double second_derivative_at_zero_or_estimate(const IsotropicFunction& f) {
  if (f.second_derivative_at_zero()) {
    return *f.second_derivative_at_zero();
  }
  return even_derivative_at_zero(f, 2);
}

double first_derivative(const IsotropicFunction& f, double theta) {
  if (f.has_derivative()) {
    return f.derivative(theta);
  }
  return numeric_derivative(f, 1, theta);
}

double derivative_of_order(const IsotropicFunction& f, int order, double theta) {
  if (order == 0) {
    return f(theta);
  }
  if (order == 1) {
    return first_derivative(f, theta);
  }
  if (f.has_derivative()) {
    const IsotropicFunction derivative([&f](double t) { return f.derivative(t); }, f.label() + "'");
    return numeric_derivative(derivative, order - 1, theta);
  }
  return numeric_derivative(f, order, theta);
}

}  // namespace spherepd
