#include "spherepd/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spherepd/errors.hpp"
#include "spherepd/gegenbauer.hpp"
#include "spherepd/numerics.hpp"
#include "spherepd/quadrature.hpp"
#include "spherepd/validation.hpp"

namespace spherepd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAdmitTolerance = 1e-10;
constexpr double kNormalizerFloor = 1e-12;

const quadrature::Options kOperatorQuadrature{48, 0.5};

template <typename F>
double integrate(F&& f, double a, double b, std::span<const double> breaks) {
  return quadrature::integrate_piecewise(std::forward<F>(f), a, b, breaks, kOperatorQuadrature);
}

double int_power(double x, int p) {
  double out = 1.0;
  for (int i = 0; i < p; ++i) {
    out *= x;
  }
  return out;
}

std::string format_value(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Derivative of psi, numeric with reflection at both endpoints when no
// analytic derivative exists (class members are even about 0 and pi).
double slope(const IsotropicFunction& psi, double theta) {
  if (psi.has_derivative()) {
    return psi.derivative(theta);
  }
  constexpr double h = 1e-5;
  auto reflect = [](double t) { return t < 0.0 ? -t : (t > kPi ? 2.0 * kPi - t : t); };
  return (psi(reflect(theta + h)) - psi(reflect(theta - h))) / (2.0 * h);
}

// c(d), or the alternating sum for d = inf
double montee_series(const SchoenbergSequence& seq) {
  numerics::CompensatedSum sum;
  for (int n = 0; n <= seq.max_degree(); ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const double b = seq.coefficients[n];
    if (seq.dimension.infinite) {
      sum.add(sign * b / (n + 1.0));
    } else {
      const double d = seq.dimension.value;
      sum.add(sign * b * (d - 2.0) / ((n + 1.0) * (n + d - 2.0)));
    }
  }
  return sum.value();
}

bool nonnegative_on_grid(const IsotropicFunction& psi) {
  constexpr int kPoints = 2001;
  for (int i = 0; i < kPoints; ++i) {
    if (psi(kPi * i / (kPoints - 1)) < -1e-12) {
      return false;
    }
  }
  return true;
}

int sign_class(double x) {
  if (x > kAdmitTolerance) {
    return 1;
  }
  if (x < -kAdmitTolerance) {
    return -1;
  }
  return 0;
}

void settle_consistency(MonteeCondition& condition) {
  int seen = 0;
  bool consistent = true;
  for (const auto& value : {condition.series, condition.integral, condition.infinite_integral}) {
    if (!value) {
      continue;
    }
    const int s = sign_class(*value);
    if (s != 0) {
      if (seen != 0 && s != seen) {
        consistent = false;
      }
      seen = s;
    }
  }
  if (condition.nonnegative && seen < 0) {
    consistent = false;
  }
  condition.consistent = consistent;
}

double lift_value(const IsotropicFunction& psi, int d, double b0, double theta) {
  if (theta <= 0.0) {
    return psi(0.0) - b0;
  }
  if (theta >= kPi) {
    return b0 - psi(kPi);
  }
  const std::vector<double> breaks = psi.quadrature_breaks();
  auto integrand = [&psi, d, b0](double r) { return int_power(std::sin(r), d - 1) * (psi(r) - b0); };
  const double integral = theta <= 0.5 * kPi ? integrate(integrand, 0.0, theta, breaks)
                                             : -integrate(integrand, theta, kPi, breaks);
  return d * integral / int_power(std::sin(theta), d);
}

}  // namespace

double sine_weighted_integral(const IsotropicFunction& psi, double theta) {
  const std::vector<double> breaks = psi.quadrature_breaks();
  return integrate([&psi](double b) { return std::sin(b) * psi(b); }, theta, kPi, breaks);
}

// --- function-level operators --------------------------------------------

OperatorReport montee_numeric(const IsotropicFunction& psi) {
  OperatorReport report;
  const double normalizer = sine_weighted_integral(psi, 0.0);
  report.normalizer = normalizer;
  report.diagnostics.emplace_back("normalizer", normalizer);
  if (!(std::abs(normalizer) > kNormalizerFloor)) {
    report.admissibility =
        Admissibility::rejected("zero normalizer: integral of sin(b) psi(b) is " + format_value(normalizer));
    return report;
  }
  const std::vector<double> breaks = psi.quadrature_breaks();
  auto value = [psi, normalizer, breaks](double theta) {
    if (theta <= 0.0) {
      return 1.0;
    }
    if (theta >= kPi) {
      return 0.0;
    }
    auto integrand = [&psi](double b) { return std::sin(b) * psi(b); };
    if (theta < 0.5 * kPi) {
      return 1.0 - integrate(integrand, 0.0, theta, breaks) / normalizer;
    }
    return integrate(integrand, theta, kPi, breaks) / normalizer;
  };
  IsotropicFunction result(value, "montee(" + psi.label() + ")");
  result = result
               .with_derivative([psi, normalizer](double theta) {
                 return -std::sin(theta) * psi(theta) / normalizer;
               })
               .with_second_derivative_at_zero(-psi(0.0) / normalizer)
               .with_breakpoints(std::vector<double>(psi.breakpoints().begin(), psi.breakpoints().end()));
  if (psi.support_radius()) {
    result = result.with_support_radius(*psi.support_radius());
  }
  report.result_function = result;
  return report;
}

OperatorReport descente_numeric(const IsotropicFunction& psi) {
  OperatorReport report;
  const bool from_metadata = psi.second_derivative_at_zero().has_value();
  const double second = second_derivative_at_zero_or_estimate(psi);
  report.normalizer = second;
  report.diagnostics.emplace_back("psi''(0)", second);
  report.diagnostics.emplace_back("psi''(0) from metadata", from_metadata ? 1.0 : 0.0);
  if (!(std::abs(second) >= kNormalizerFloor)) {
    report.admissibility = Admissibility::rejected("flat at zero: psi''(0) = " + format_value(second));
    return report;
  }
  auto ratio = [psi, second](double theta) { return slope(psi, theta) / (std::sin(theta) * second); };
  auto value = [ratio](double theta) {
    constexpr double h = 1e-4;
    if (theta <= 0.0) {
      return 1.0;
    }
    if (theta <= kPi - h) {
      return ratio(theta);
    }
    // even about pi: extrapolate the limit and interpolate in (pi - theta)^2
    const double near = ratio(kPi - h);
    const double far = ratio(kPi - 2.0 * h);
    const double limit = (4.0 * near - far) / 3.0;
    const double u = std::min(kPi - theta, h) / h;
    return limit + (near - limit) * u * u;
  };
  IsotropicFunction result(value, "descente(" + psi.label() + ")");
  result = result.with_breakpoints(std::vector<double>(psi.breakpoints().begin(), psi.breakpoints().end()));
  if (psi.support_radius()) {
    result = result.with_support_radius(*psi.support_radius());
  }
  report.result_function = result;
  return report;
}

// --- sequence-level operators --------------------------------------------

OperatorReport montee_sequence(const SchoenbergSequence& seq) {
  if (!seq.dimension.infinite && seq.dimension.value < 3) {
    throw std::invalid_argument("montee_sequence: dimension must be >= 3 or inf, got " +
                                seq.dimension.to_string());
  }
  OperatorReport report;
  const int N = seq.max_degree();
  const bool inf = seq.dimension.infinite;
  const double d = inf ? 0.0 : seq.dimension.value;
  const double condition = montee_series(seq);
  numerics::CompensatedSum g1;
  for (int n = 0; 2 * n <= N; ++n) {
    const double b = seq.coefficients[2 * n];
    g1.add(inf ? 2.0 * b / (2.0 * n + 1.0)
               : 2.0 * (d - 2.0) * b / ((2.0 * n + 1.0) * (2.0 * n + d - 2.0)));
  }
  const double G1 = g1.value();
  report.normalizer = G1;
  report.diagnostics.emplace_back(inf ? "alternating sum" : "c(d)", condition);
  report.diagnostics.emplace_back("G_1", G1);
  if (condition < -kAdmitTolerance) {
    report.admissibility = Admissibility::rejected("c(d) negative: " + format_value(condition));
    return report;
  }
  if (!(std::abs(G1) > kNormalizerFloor)) {
    report.admissibility = Admissibility::rejected("zero normalizer: G_1 = " + format_value(G1));
    return report;
  }
  std::vector<double> a(N + 2);
  a[0] = condition / G1;
  for (int n = 1; n <= N + 1; ++n) {
    const double b = seq.coefficients[n - 1];
    a[n] = inf ? b / (n * G1) : (d - 2.0) * b / (n * (n + d - 3.0) * G1);
  }
  numerics::CompensatedSum total;
  for (double x : a) {
    total.add(x);
  }
  const Dimension out_dim = inf ? Dimension::inf() : Dimension::finite(seq.dimension.value - 2);
  report.result_sequence =
      SchoenbergSequence::make(out_dim, std::move(a), std::max(0.0, 1.0 - total.value()));
  return report;
}

OperatorReport descente_sequence(const SchoenbergSequence& seq) {
  const int N = seq.max_degree();
  bool degenerate = true;
  for (int n = 1; n <= N; ++n) {
    if (seq.coefficients[n] != 0.0) {
      degenerate = false;
    }
  }
  if (degenerate) {
    throw std::invalid_argument("descente_sequence: degenerate input, psi = b_0 is constant");
  }
  OperatorReport report;
  const bool inf = seq.dimension.infinite;
  const double d = inf ? 0.0 : seq.dimension.value;
  const MomentSum moment = moment_sum(seq, inf ? 1 : 2);
  numerics::CompensatedSum g2;
  std::vector<double> c(N);
  for (int n = 0; n < N; ++n) {
    const double b = seq.coefficients[n + 1];
    c[n] = inf ? b * (n + 1.0) : b * (n + 1.0) * (n + d);
    g2.add(c[n]);
  }
  const double G2 = g2.value();
  report.normalizer = G2;
  report.diagnostics.emplace_back("G_2", G2);
  report.diagnostics.emplace_back("moment tail increment", moment.tail_increment);
  if (!moment.convergent) {
    report.admissibility = Admissibility::rejected("divergent G_2: moment sum does not converge at N=" +
                                                   std::to_string(N));
    return report;
  }
  for (double& x : c) {
    x /= G2;
  }
  const Dimension out_dim = inf ? Dimension::inf() : Dimension::finite(seq.dimension.value + 2);
  numerics::CompensatedSum total;
  for (double x : c) {
    total.add(x);
  }
  report.result_sequence =
      SchoenbergSequence::make(out_dim, std::move(c), std::max(0.0, 1.0 - total.value()));
  return report;
}

// --- montee condition ----------------------------------------------------

WeightForms f_d(int d, double theta) {
  if (d < 3) {
    throw std::invalid_argument("f_d: d >= 3 required");
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  using numerics::log_gamma;
  WeightForms out;

  numerics::CompensatedSum finite;
  if (d % 2 == 1) {
    finite.add(theta * s / kPi);
    for (int l = 1; l <= (d - 3) / 2; ++l) {
      const double coef = std::exp(2.0 * log_gamma(l) + (2.0 * l - 2.0) * std::numbers::ln2 -
                                   log_gamma(2.0 * l)) / kPi;
      finite.add(-c * int_power(s, 2 * l) * coef);
    }
  } else {
    finite.add(0.5 * s);
    for (int l = 1; l <= d / 2 - 1; ++l) {
      const double coef = std::exp(2.0 * log_gamma(l - 0.5) + (2.0 * l - 3.0) * std::numbers::ln2 -
                                   log_gamma(2.0 * l - 1.0)) / kPi;
      finite.add(-c * int_power(s, 2 * l - 1) * coef);
    }
  }
  out.finite_sum = finite.value();

  const double a = 1.0;
  const double b = 0.5 * (d - 1);
  const double cc = 0.5 * d;
  const double K = std::exp((d - 3.0) * std::numbers::ln2 + 2.0 * log_gamma(b) - log_gamma(d - 1.0)) / kPi;
  const double z = s * s;
  if (z <= 0.5) {
    const double F = numerics::hyp2f1_series(a, b, cc, z);
    out.hypergeometric = (theta > 0.5 * kPi ? s : 0.0) + K * c * int_power(s, d - 1) * F;
  } else {
    // connection to 1 - z = cos^2(theta); c - a - b = -1/2
    const double A = -(d - 2.0);
    const double B = std::exp(log_gamma(cc) - log_gamma(b)) * std::sqrt(kPi);
    const double F = numerics::hyp2f1_series(a, b, 1.5, c * c);
    const double sign = c >= 0.0 ? 1.0 : -1.0;
    out.hypergeometric = (theta > 0.5 * kPi ? s : 0.0) + K * int_power(s, d - 1) * c * A * F +
                         K * B * sign * s;
  }
  return out;
}

MonteeCondition montee_condition(const SchoenbergSequence& seq) {
  MonteeCondition condition;
  condition.dimension = seq.dimension;
  const IsotropicFunction psi = as_function(seq);
  condition.nonnegative = nonnegative_on_grid(psi);
  if (seq.dimension.infinite) {
    condition.series = montee_series(seq);
    const std::vector<double> none;
    condition.infinite_integral =
        integrate([&psi](double t) { return std::sin(t) * psi(t); }, 0.5 * kPi, kPi, none);
  } else if (seq.dimension.value >= 3) {
    const int d = seq.dimension.value;
    condition.series = montee_series(seq);
    const std::vector<double> none;
    condition.integral =
        integrate([&psi, d](double t) { return f_d(d, t).finite_sum * psi(t); }, 0.0, kPi, none);
  }
  settle_consistency(condition);
  return condition;
}

MonteeCondition montee_condition(const IsotropicFunction& psi, Dimension d) {
  MonteeCondition condition;
  condition.dimension = d;
  condition.nonnegative = nonnegative_on_grid(psi);
  const std::vector<double> breaks = psi.quadrature_breaks();
  if (d.infinite) {
    condition.infinite_integral =
        integrate([&psi](double t) { return std::sin(t) * psi(t); }, 0.5 * kPi, kPi, breaks);
  } else if (d.value >= 3) {
    const int dim = d.value;
    condition.integral = integrate([&psi, dim](double t) { return f_d(dim, t).finite_sum * psi(t); },
                                   0.0, kPi, breaks);
    try {
      condition.series = montee_series(analyze(psi, dim, 128));
    } catch (const QuadratureError&) {
      condition.series.reset();
    }
  }
  settle_consistency(condition);
  return condition;
}

// --- derivatives of the montee ------------------------------------------

double montee_derivative(const IsotropicFunction& psi, int j, double theta) {
  if (j < 1) {
    throw std::invalid_argument("montee_derivative: j >= 1 required");
  }
  const double normalizer = sine_weighted_integral(psi, 0.0);
  if (!(std::abs(normalizer) > kNormalizerFloor)) {
    throw std::domain_error("montee_derivative: zero normalizer");
  }
  numerics::CompensatedSum sine_part;
  numerics::CompensatedSum cosine_part;
  for (int l = 0; l <= j - 1; ++l) {
    const double sign = (l / 2) % 2 == 0 ? 1.0 : -1.0;
    const double term = numerics::binomial(j - 1, l) * sign * derivative_of_order(psi, j - 1 - l, theta);
    (l % 2 == 0 ? sine_part : cosine_part).add(term);
  }
  return -(std::sin(theta) * sine_part.value() + std::cos(theta) * cosine_part.value()) / normalizer;
}

double montee_deriv_at_zero(const IsotropicFunction& psi, int k) {
  if (k < 0) {
    throw std::invalid_argument("montee_deriv_at_zero: k >= 0 required");
  }
  const double normalizer = sine_weighted_integral(psi, 0.0);
  if (!(std::abs(normalizer) > kNormalizerFloor)) {
    throw std::domain_error("montee_deriv_at_zero: zero normalizer");
  }
  numerics::CompensatedSum sum;
  for (int l = 0; l <= k; ++l) {
    const int order = 2 * k - 2 * l;
    double derivative = 0.0;
    if (order == 0) {
      derivative = psi(0.0);
    } else if (order == 2) {
      derivative = second_derivative_at_zero_or_estimate(psi);
    } else {
      derivative = even_derivative_at_zero(psi, order);
    }
    sum.add((l % 2 == 0 ? 1.0 : -1.0) * numerics::binomial(2 * k + 1, 2 * l + 1) * derivative);
  }
  return -sum.value() / normalizer;
}

// --- shift and turning bands ---------------------------------------------

SchoenbergSequence shift(const SchoenbergSequence& seq, int k) {
  std::vector<double> out;
  if (k > 0) {
    out.assign(k, 0.0);
    out.insert(out.end(), seq.coefficients.begin(), seq.coefficients.end());
  } else {
    const std::size_t drop = static_cast<std::size_t>(-k);
    if (drop < seq.coefficients.size()) {
      out.assign(seq.coefficients.begin() + static_cast<std::ptrdiff_t>(drop), seq.coefficients.end());
    }
  }
  return SchoenbergSequence::make(seq.dimension, std::move(out), seq.tail_mass);
}

double turning_bands_down(const SchoenbergSequence& seq, double theta) {
  if (seq.dimension.infinite) {
    throw std::invalid_argument("turning_bands_down: finite dimension required");
  }
  const int d = seq.dimension.value;
  SchoenbergSequence lifted = shift(seq, -1);
  lifted.dimension = Dimension::finite(d + 2);
  return seq.at(0) + std::cos(theta) * synthesize(lifted, theta) +
         std::sin(theta) * synthesize_derivative(lifted, theta) / d;
}

double turning_bands_up(const SchoenbergSequence& seq, double theta) {
  if (seq.dimension.infinite) {
    throw std::invalid_argument("turning_bands_up: finite dimension required");
  }
  return lift_value(as_function(seq), seq.dimension.value, seq.at(0), theta);
}

TurningBandsLift turning_bands_up_function(const IsotropicFunction& psi, int d) {
  if (d < 1) {
    throw std::invalid_argument("turning_bands_up_function: d >= 1 required");
  }
  const std::vector<double> breaks = psi.quadrature_breaks();
  const double mass =
      integrate([&psi, d](double r) { return int_power(std::sin(r), d - 1) * psi(r); }, 0.0, kPi, breaks);
  const double volume =
      integrate([d](double r) { return int_power(std::sin(r), d - 1); }, 0.0, kPi, breaks);
  const double b0 = mass / volume;
  IsotropicFunction lifted([psi, d, b0](double theta) { return lift_value(psi, d, b0, theta); },
                           "lift" + std::to_string(d) + "(" + psi.label() + ")");
  lifted = lifted.with_breakpoints(breaks);
  return {lifted, b0};
}

// --- optimality witness --------------------------------------------------

OptimalityWitness optimality_witness(int d, int k, double c) {
  if (d < 1 || d % 2 == 0) {
    throw std::invalid_argument("optimality_witness: d must be an odd integer >= 1");
  }
  if (k < 0) {
    throw std::invalid_argument("optimality_witness: k >= 0 required");
  }
  if (!(c > 0.0 && c < kPi)) {
    throw std::invalid_argument("optimality_witness: c must lie in (0, pi)");
  }
  const int target_dim = d + 2 * k;
  IsotropicFunction f = make_truncated_linear(c);
  for (int dim = 1; dim < target_dim; dim += 2) {
    f = turning_bands_up_function(f, dim).function;
  }

  constexpr int kGrid = 4001;
  double minimum = f(0.0);
  for (int i = 0; i < kGrid; ++i) {
    minimum = std::min(minimum, f(kPi * i / (kGrid - 1)));
  }
  minimum = std::min(minimum, f(c));
  const double C = std::max(0.0, -minimum);
  const double at_zero = f(0.0) + C;
  if (!(at_zero > 0.0)) {
    throw ConstructionError("optimality_witness: shifted function does not have a positive value at 0");
  }
  IsotropicFunction g([f, C, at_zero](double theta) { return (f(theta) + C) / at_zero; },
                      "witness(d=" + std::to_string(d) + ",k=" + std::to_string(k) + ")");
  g = g.with_breakpoints(std::vector<double>(f.breakpoints().begin(), f.breakpoints().end()));

  JumpReport report;
  report.shift_constant = C;
  double last_normalizer = 0.0;
  double last_at_zero = 1.0;
  for (int step = 0; step < k; ++step) {
    const OperatorReport montee = montee_numeric(g);
    if (!montee.admitted()) {
      throw ConstructionError("optimality_witness: montee rejected: " + montee.admissibility.reason);
    }
    last_at_zero = g(0.0);
    last_normalizer = montee.normalizer;
    g = *montee.result_function;
  }

  report.expected_order = 1 + (target_dim - 1) / 2 + k;
  const SmoothnessProbe probe = differentiability_probe(g, c, std::min(report.expected_order, 5));
  report.first_failing_order = probe.first_failing_order;
  const OrderProbe& at_expected = probe.orders.back();
  report.left = at_expected.left;
  report.right = at_expected.right;
  report.gap = at_expected.gap;
  report.noise = at_expected.noise;
  report.detected = probe.first_failing_order == report.expected_order;

  if (k >= 1) {
    report.second_derivative_target = -last_at_zero / last_normalizer;
    const double value_at_zero = g(0.0);
    for (double h : {0.04, 0.02, 0.01, 0.005}) {
      report.second_differences.push_back(2.0 * (g(h) - value_at_zero) / (h * h));
    }
    bool shrinking = true;
    for (std::size_t i = 2; i < report.second_differences.size(); ++i) {
      const double before = std::abs(report.second_differences[i - 1] - report.second_differences[i - 2]);
      const double now = std::abs(report.second_differences[i] - report.second_differences[i - 1]);
      shrinking = shrinking && now <= before;
    }
    // the even extension is only C^2 at zero, so the error is O(h)
    const std::size_t m = report.second_differences.size();
    report.extrapolated_second_derivative =
        2.0 * report.second_differences[m - 1] - report.second_differences[m - 2];
    report.stable_at_zero =
        shrinking && std::abs(report.extrapolated_second_derivative - report.second_derivative_target) <=
                         1e-4 * std::abs(report.second_derivative_target);
  }
  return {g, report};
}

}  // namespace spherepd
