#include "spherepd/schoenberg.hpp"

#include <algorithm>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spherepd/errors.hpp"
#include "spherepd/gegenbauer.hpp"
#include "spherepd/numerics.hpp"
#include "spherepd/quadrature.hpp"

namespace spherepd {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

// --- Dimension -----------------------------------------------------------

Dimension Dimension::finite(int d) {
  if (d < 1) {
    throw std::invalid_argument("dimension must be a positive integer");
  }
  return Dimension{d, false};
}

std::string Dimension::to_string() const { return infinite ? "inf" : std::to_string(value); }

Dimension Dimension::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") {
    return inf();
  }
  int d = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size() || d < 1) {
    throw std::invalid_argument("invalid dimension '" + std::string(text) +
                                "': expected a positive integer or 'inf'");
  }
  return finite(d);
}

// --- SchoenbergSequence --------------------------------------------------

SchoenbergSequence SchoenbergSequence::make(Dimension dimension, std::vector<double> coefficients,
                                            double tail_mass) {
  SchoenbergSequence seq;
  seq.dimension = dimension;
  seq.tail_mass = std::max(0.0, tail_mass);
  for (double& b : coefficients) {
    if (b < 0.0) {
      if (b > -kCoefficientTolerance) {
        b = 0.0;
      } else {
        seq.class_member = false;
      }
    }
  }
  numerics::CompensatedSum total;
  for (double b : coefficients) {
    total.add(b);
  }
  total.add(seq.tail_mass);
  seq.normalized = seq.class_member && std::abs(total.value() - 1.0) <= 1e-8;
  seq.coefficients = std::move(coefficients);
  return seq;
}

// --- synthesis -----------------------------------------------------------

double synthesize(const SchoenbergSequence& seq, double theta) {
  const auto& b = seq.coefficients;
  if (b.empty()) {
    return 0.0;
  }
  const int N = seq.max_degree();
  if (seq.dimension.infinite) {
    const double x = std::cos(theta);
    double value = 0.0;
    for (int n = N; n >= 0; --n) {
      value = value * x + b[n];
    }
    return value;
  }
  numerics::CompensatedSum sum;
  if (seq.dimension.value == 1) {
    for (int n = 0; n <= N; ++n) {
      sum.add(b[n] * std::cos(n * theta));
    }
    return sum.value();
  }
  const std::vector<double> r =
      normalized_gegenbauer_all(sphere_lambda(seq.dimension.value), N, std::cos(theta));
  for (int n = 0; n <= N; ++n) {
    sum.add(b[n] * r[n]);
  }
  return sum.value();
}

double synthesize_derivative(const SchoenbergSequence& seq, double theta) {
  const auto& b = seq.coefficients;
  const int N = seq.max_degree();
  if (N < 1) {
    return 0.0;
  }
  if (seq.dimension.infinite) {
    const double x = std::cos(theta);
    double value = 0.0;
    for (int n = N; n >= 1; --n) {
      value = value * x + n * b[n];
    }
    return -std::sin(theta) * value;
  }
  numerics::CompensatedSum sum;
  if (seq.dimension.value == 1) {
    for (int n = 1; n <= N; ++n) {
      sum.add(-n * b[n] * std::sin(n * theta));
    }
    return sum.value();
  }
  const std::vector<double> dr = normalized_gegenbauer_theta_derivative_all(
      sphere_lambda(seq.dimension.value), N, theta);
  for (int n = 1; n <= N; ++n) {
    sum.add(b[n] * dr[n]);
  }
  return sum.value();
}

IsotropicFunction as_function(const SchoenbergSequence& seq) {
  numerics::CompensatedSum second;
  for (int n = 1; n <= seq.max_degree(); ++n) {
    const double b = seq.coefficients[n];
    if (seq.dimension.infinite) {
      second.add(-b * n);
    } else {
      const int d = seq.dimension.value;
      second.add(-b * n * (n + d - 1.0) / d);
    }
  }
  return IsotropicFunction([seq](double theta) { return synthesize(seq, theta); },
                           "series(d=" + seq.dimension.to_string() + ",N=" +
                               std::to_string(seq.max_degree()) + ")")
      .with_derivative([seq](double theta) { return synthesize_derivative(seq, theta); })
      .with_second_derivative_at_zero(second.value());
}

// --- analysis ------------------------------------------------------------

double projection_norm(int d, int n) {
  if (d < 1 || n < 0) {
    throw std::invalid_argument("projection_norm: need d >= 1 and n >= 0");
  }
  if (d == 1) {
    return n == 0 ? kPi : 0.5 * kPi;
  }
  const double lambda = sphere_lambda(d);
  using numerics::log_gamma;
  return std::exp(std::log(kPi) + (1.0 - 2.0 * lambda) * std::numbers::ln2 + log_gamma(n + 1.0) +
                  2.0 * log_gamma(2.0 * lambda) - std::log(n + lambda) - 2.0 * log_gamma(lambda) -
                  log_gamma(n + 2.0 * lambda));
}

namespace {

// Raw projections sum_i w_i psi(theta_i) R_n(cos theta_i) sin^{d-1}(theta_i).
std::vector<double> project(const IsotropicFunction& psi, int d, int N, int nodes_per_piece,
                            bool calibration) {
  const std::vector<double> breaks = psi.quadrature_breaks();
  const std::vector<double> cuts = quadrature::partition(0.0, kPi, breaks, 1.0);
  const quadrature::Rule& rule = quadrature::gauss_legendre(nodes_per_piece);
  const double lambda = sphere_lambda(d);
  std::vector<numerics::CompensatedSum> sums(N + 1);
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double half = 0.5 * (cuts[piece + 1] - cuts[piece]);
    const double mid = 0.5 * (cuts[piece + 1] + cuts[piece]);
    for (int i = 0; i < rule.size(); ++i) {
      const double theta = mid + half * rule.nodes[i];
      const double value = calibration ? 1.0 : psi(theta);
      const double weight = half * rule.weights[i] * value * std::pow(std::sin(theta), d - 1);
      if (d == 1) {
        for (int n = 0; n <= N; ++n) {
          sums[n].add(weight * std::cos(n * theta));
        }
      } else {
        const std::vector<double> r = normalized_gegenbauer_all(lambda, N, std::cos(theta));
        for (int n = 0; n <= N; ++n) {
          sums[n].add(weight * r[n]);
        }
      }
    }
  }
  std::vector<double> out(N + 1);
  for (int n = 0; n <= N; ++n) {
    out[n] = sums[n].value() / projection_norm(d, n);
  }
  return out;
}

}  // namespace

SchoenbergSequence analyze(const IsotropicFunction& psi, int d, int N,
                           const AnalyzeOptions& options) {
  if (d < 1 || N < 0) {
    throw std::invalid_argument("analyze: need d >= 1 and N >= 0");
  }
  int nodes = options.nodes_per_piece > 0 ? options.nodes_per_piece
                                          : 64 * ((N + d + 31) / 32);
  const double calibration = project(psi, d, 0, nodes, true)[0];
  if (std::abs(calibration - 1.0) > 1e-8) {
    throw QuadratureError("analyze: constant function projects to b_0 = " +
                          std::to_string(calibration));
  }
  std::vector<double> coarse = project(psi, d, N, nodes, false);
  for (int attempt = 0; attempt <= options.max_doublings; ++attempt) {
    nodes *= 2;
    std::vector<double> fine = project(psi, d, N, nodes, false);
    double scale = 0.0;
    double diff = 0.0;
    for (int n = 0; n <= N; ++n) {
      scale = std::max(scale, std::abs(fine[n]));
      diff = std::max(diff, std::abs(fine[n] - coarse[n]));
    }
    if (diff <= options.tolerance * std::max(scale, 1e-300)) {
      numerics::CompensatedSum total;
      for (double b : fine) {
        total.add(b);
      }
      const double tail = std::max(0.0, 1.0 - total.value());
      return SchoenbergSequence::make(Dimension::finite(d), std::move(fine), tail);
    }
    coarse = std::move(fine);
  }
  throw QuadratureError("analyze: projections of " + psi.label() +
                        " did not settle under node doubling");
}

// --- conversion kernels --------------------------------------------------

namespace {

void check_kernel_indices(int j, int n) {
  if (n < 0 || j < n) {
    throw std::invalid_argument("conversion kernel: need 0 <= n <= j");
  }
  if ((j - n) % 2 != 0) {
    throw std::invalid_argument("conversion kernel: j - n must be even (parity mismatch)");
  }
}

// Gamma(z) / Gamma(z + delta)
double gamma_ratio(double z, double delta) {
  if (delta == 0.0) {
    return 1.0;
  }
  return boost::math::tgamma_delta_ratio(z, delta);
}

}  // namespace

double kernel_value(KernelKind kind, int j, int n) {
  check_kernel_indices(j, n);
  if (kind.kind == KernelKind::Kind::tau) {
    const int m = (j - n) / 2;
    if (j <= 1000) {
      return std::ldexp(boost::math::binomial_coefficient<double>(j, m), -j);
    }
    return std::exp(numerics::log_binomial(j, m) - j * std::numbers::ln2);
  }
  const int d = kind.d;
  if (d < 2) {
    throw std::invalid_argument("kappa kernel requires d >= 2");
  }
  const double prefactor =
      d <= 100 ? std::tgamma(d - 1.0) / std::pow(std::tgamma(0.5 * (d - 1)), 2)
               : std::exp(numerics::log_gamma(d - 1.0) - 2.0 * numerics::log_gamma(0.5 * (d - 1)));
  const double shift = 0.5 * (3 - d);
  return prefactor * gamma_ratio(0.5 * (d - 1 + j - n), shift) *
         gamma_ratio(0.5 * (d - 1 + j + n), shift) * gamma_ratio(j + 1.0, d - 2.0);
}

ConversionKernel::ConversionKernel(KernelKind kind, int max_j) : kind_(kind), max_j_(max_j) {
  if (kind.kind == KernelKind::Kind::kappa && kind.d < 2) {
    throw std::invalid_argument("kappa kernel requires d >= 2");
  }
  const int d = kind.kind == KernelKind::Kind::kappa ? kind.d : 1;
  const int size = 2 * (max_j + d) + 6;
  half_log_gamma_.resize(size, 0.0);
  for (int k = 1; k < size; ++k) {
    half_log_gamma_[k] = numerics::log_gamma(0.5 * k);
  }
  if (kind.kind == KernelKind::Kind::kappa) {
    log_prefactor_ = log_gamma_half(2 * (d - 1)) - 2.0 * log_gamma_half(d - 1);
  }
}

double ConversionKernel::operator()(int j, int n) const {
  check_kernel_indices(j, n);
  if (j > max_j_) {
    throw std::out_of_range("ConversionKernel: j beyond table");
  }
  if (kind_.kind == KernelKind::Kind::tau) {
    return std::exp(log_gamma_half(2 * j + 2) - log_gamma_half(j - n + 2) -
                    log_gamma_half(j + n + 2) - j * std::numbers::ln2);
  }
  const int d = kind_.d;
  return std::exp(log_prefactor_ + log_gamma_half(d - 1 + j - n) + log_gamma_half(d - 1 + j + n) +
                  log_gamma_half(2 * j + 2) - log_gamma_half(j - n + 2) -
                  log_gamma_half(j + n + 2) - log_gamma_half(2 * (d - 1 + j)));
}

SchoenbergSequence to_one_dim(const SchoenbergSequence& seq) {
  if (!seq.dimension.infinite && seq.dimension.value == 1) {
    return seq;
  }
  if (!seq.dimension.infinite && seq.dimension.value < 2) {
    throw std::invalid_argument("to_one_dim: dimension must be >= 2 or inf");
  }
  const int N = seq.max_degree();
  const KernelKind kind =
      seq.dimension.infinite ? KernelKind::tau() : KernelKind::kappa(seq.dimension.value);
  const ConversionKernel kernel(kind, std::max(N, 0));
  std::vector<numerics::CompensatedSum> sums(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double b = seq.coefficients[j];
    if (b == 0.0) {
      continue;
    }
    for (int m = j % 2; m <= j; m += 2) {
      sums[m].add((m == 0 ? 1.0 : 2.0) * b * kernel(j, m));
    }
  }
  std::vector<double> out(N + 1);
  for (int m = 0; m <= N; ++m) {
    out[m] = sums[m].value();
  }
  return SchoenbergSequence::make(Dimension::finite(1), std::move(out), seq.tail_mass);
}

// --- moments -------------------------------------------------------------

MomentSum moment_sum(const SchoenbergSequence& seq, int power) {
  if (power < 0) {
    throw std::invalid_argument("moment_sum: power must be nonnegative");
  }
  const int N = seq.max_degree();
  numerics::CompensatedSum total;
  numerics::CompensatedSum last;
  for (int n = 0; n <= N; ++n) {
    const double term = seq.coefficients[n] * std::pow(static_cast<double>(n), power);
    total.add(term);
    if (n > N - 10) {
      last.add(term);
    }
  }
  MomentSum result;
  result.value = total.value();
  result.tail_increment = last.value();
  result.convergent = std::abs(result.tail_increment) <= 1e-6 * std::abs(result.value);
  // too short for a tail window: an exact finite expansion
  if (N < 20 || (result.value == 0.0 && result.tail_increment == 0.0)) {
    result.convergent = true;
  }
  return result;
}

namespace {

void require_moment(const SchoenbergSequence& seq, int power, const char* what) {
  const MomentSum m = moment_sum(seq, power);
  if (!m.convergent) {
    throw DivergenceError(std::string(what) + ": moment of order " + std::to_string(power) +
                          " does not converge at truncation N=" +
                          std::to_string(seq.max_degree()));
  }
}

}  // namespace

double second_derivative_at_zero_from_sequence(const SchoenbergSequence& seq) {
  const bool inf = seq.dimension.infinite;
  require_moment(seq, inf ? 1 : 2, "second derivative at zero");
  numerics::CompensatedSum sum;
  for (int m = 1; m <= seq.max_degree(); ++m) {
    const double b = seq.coefficients[m];
    const int n = m - 1;
    if (inf) {
      sum.add(b * m);
    } else {
      const int d = seq.dimension.value;
      sum.add(b * m * (n + d) / static_cast<double>(d));
    }
  }
  return -sum.value();
}

double fourth_derivative_at_zero_from_sequence(const SchoenbergSequence& seq) {
  const bool inf = seq.dimension.infinite;
  require_moment(seq, inf ? 2 : 4, "fourth derivative at zero");
  numerics::CompensatedSum sum;
  for (int m = 1; m <= seq.max_degree(); ++m) {
    const double b = seq.coefficients[m];
    const double n = m - 1.0;
    if (inf) {
      sum.add(b * m * (3.0 * n + 1.0));
    } else {
      const double d = seq.dimension.value;
      sum.add(b * m * (n + d) / d * (1.0 + 3.0 * n * (n + d + 1.0) / (d + 2.0)));
    }
  }
  return sum.value();
}

double corner_bound(int d, double c) {
  if (!(c > 0.0 && c <= kPi)) {
    throw std::invalid_argument("corner_bound: c must lie in (0, pi]");
  }
  double first_zero = 0.0;
  if (d == 1) {
    first_zero = 0.5 * kPi;  // J_{-1/2}
  } else if (d == 3) {
    first_zero = kPi;  // J_{1/2}
  } else {
    throw std::invalid_argument("corner_bound: only d = 1 and d = 3 are supported");
  }
  return 4.0 / d * first_zero * first_zero / (c * c);
}

// --- closed-form sequences -----------------------------------------------

SchoenbergSequence multiquadric_infinite_sequence(double tau, double delta) {
  if (!(tau > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("multiquadric: need tau > 0 and delta in (0, 1)");
  }
  const double q = 2.0 * delta / (1.0 + delta * delta);
  std::vector<double> b{std::exp(2.0 * tau * std::log1p(-delta) - tau * std::log1p(delta * delta))};
  constexpr int kMaxTerms = 1000000;
  for (int n = 1; n < kMaxTerms; ++n) {
    b.push_back(b.back() * (tau + n - 1.0) / n * q);
    const double ratio = (tau + n) / (n + 1.0) * q;
    if (ratio < 1.0 && b.back() * ratio / (1.0 - ratio) < 1e-17) {
      break;
    }
  }
  numerics::CompensatedSum total;
  for (double x : b) {
    total.add(x);
  }
  return SchoenbergSequence::make(Dimension::inf(), std::move(b),
                                  std::max(0.0, 1.0 - total.value()));
}

SchoenbergSequence multiquadric_circle_sequence(double delta, int N) {
  if (!(delta > 0.0 && delta < 1.0) || N < 0) {
    throw std::domain_error("multiquadric circle sequence: need delta in (0, 1), N >= 0");
  }
  const double base = (1.0 - delta) / (1.0 + delta);
  std::vector<double> b(N + 1);
  b[0] = base;
  double power = 1.0;
  for (int n = 1; n <= N; ++n) {
    power *= delta;
    b[n] = 2.0 * power * base;
  }
  numerics::CompensatedSum total;
  for (double x : b) {
    total.add(x);
  }
  return SchoenbergSequence::make(Dimension::finite(1), std::move(b),
                                  std::max(0.0, 1.0 - total.value()));
}

}  // namespace spherepd
