#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spherepd/model.hpp"
#include "spherepd/schoenberg.hpp"

namespace spherepd {

struct Admissibility {
  bool admitted = true;
  std::string reason;

  static Admissibility ok() { return {}; }
  static Admissibility rejected(std::string why) { return {false, std::move(why)}; }
};

/// Outcome of a montee, descente or turning-bands application.
struct OperatorReport {
  std::optional<IsotropicFunction> result_function;
  std::optional<SchoenbergSequence> result_sequence;
  /// Integral of sin(b) psi(b) for the montee, psi''(0) for the descente,
  /// G_1 or G_2 for the sequence forms.
  double normalizer = 0.0;
  Admissibility admissibility;
  std::vector<std::pair<std::string, double>> diagnostics;

  bool admitted() const { return admissibility.admitted; }
};

/// Integral of sin(b) psi(b) over [theta, pi], split at the breakpoints of psi.
double sine_weighted_integral(const IsotropicFunction& psi, double theta);

/// theta -> int_theta^pi sin(b) psi(b) db / int_0^pi sin(b) psi(b) db.
/// Rejected when the normalizer is below 1e-12 in magnitude.
OperatorReport montee_numeric(const IsotropicFunction& psi);

/// theta -> psi'(theta) / (sin(theta) psi''(0)), extended by 1 at theta = 0
/// and by its limit at theta = pi. Rejected when |psi''(0)| < 1e-12.
OperatorReport descente_numeric(const IsotropicFunction& psi);

/// Sequence form of the montee (d >= 3 or inf). Rejected when c(d) < -1e-10.
/// Throws std::invalid_argument for d in {1, 2}.
OperatorReport montee_sequence(const SchoenbergSequence& seq);

/// Sequence form of the descente. Rejected when G_2 does not converge at the
/// truncation. Throws std::invalid_argument for a sequence supported on b_0.
OperatorReport descente_sequence(const SchoenbergSequence& seq);

/// Every available form of the montee condition, for cross-checking.
struct MonteeCondition {
  Dimension dimension;
  /// c(d) from the coefficient series (or the alternating sum for d = inf).
  std::optional<double> series;
  /// int_0^pi f_d psi (finite d >= 3).
  std::optional<double> integral;
  /// int_{pi/2}^pi sin(theta) psi(theta) (d = inf).
  std::optional<double> infinite_integral;
  /// psi >= 0 on a 2001-point grid (sufficient condition).
  bool nonnegative = false;
  /// All computed forms agree in sign (values within 1e-10 of zero count
  /// as either sign).
  bool consistent = true;
};

MonteeCondition montee_condition(const SchoenbergSequence& seq);
/// Function input; for finite d the series form comes from analyze(psi, d, 128).
MonteeCondition montee_condition(const IsotropicFunction& psi, Dimension d);

/// The weight f_d of the integral form of the montee condition, evaluated in
/// the finite-sum form and in the hypergeometric form.
struct WeightForms {
  double finite_sum = 0.0;
  double hypergeometric = 0.0;
};
WeightForms f_d(int d, double theta);

/// (I_S psi)^{(j)}(theta) expressed through psi, ..., psi^{(j-1)}.
double montee_derivative(const IsotropicFunction& psi, int j, double theta);

/// (I_S psi)^{(2k+2)}(0) from the even derivatives of psi at zero.
/// Throws std::domain_error when the montee normalizer vanishes.
double montee_deriv_at_zero(const IsotropicFunction& psi, int k);

/// Index shift: k > 0 pads k zeros in front, k <= 0 drops the first -k
/// entries. The dimension tag is kept.
SchoenbergSequence shift(const SchoenbergSequence& seq, int k);

/// Right-hand side of the descending turning-bands identity,
/// b_0 + cos(theta) psi_{d+2}(s, theta) + sin(theta) psi'_{d+2}(s, theta) / d
/// with s the sequence shifted down by one.
double turning_bands_down(const SchoenbergSequence& seq, double theta);

/// psi_{d+2}(s, theta) recovered from psi_d by
/// d sin^{-d}(theta) int_0^theta sin^{d-1}(r) (psi_d(r) - b_0) dr.
double turning_bands_up(const SchoenbergSequence& seq, double theta);

/// The same integral transform applied to a function given only pointwise;
/// b_0 is its d-dimensional projection onto the constants.
struct TurningBandsLift {
  IsotropicFunction function;
  double b0 = 0.0;
};
TurningBandsLift turning_bands_up_function(const IsotropicFunction& psi, int d);

/// One-sided derivative comparison at the support radius of the witness.
struct JumpReport {
  int expected_order = 0;
  /// First order whose one-sided limits disagree (0 when none up to the
  /// expected order).
  int first_failing_order = 0;
  double left = 0.0;
  double right = 0.0;
  double gap = 0.0;
  double noise = 0.0;
  bool detected = false;
  /// Second difference of the even extension at zero for decreasing steps
  /// (only when k >= 1) and the closed-form target it should approach.
  std::vector<double> second_differences;
  double second_derivative_target = 0.0;
  /// 2 D(h/2) - D(h) from the two smallest steps.
  double extrapolated_second_derivative = 0.0;
  bool stable_at_zero = true;
  /// Additive constant that made the intermediate function nonnegative.
  double shift_constant = 0.0;
};

struct OptimalityWitness {
  IsotropicFunction function;
  JumpReport report;
};

/// Starting from the hat (1 - theta/c)_+ in dimension 1, lifts (d'-1)/2 times
/// with d' = d + 2k, shifts and renormalizes to stay nonnegative, applies the
/// montee k times and probes the derivatives at theta = c.
/// Requires odd d >= 1, k >= 0, c in (0, pi).
OptimalityWitness optimality_witness(int d, int k, double c);

}  // namespace spherepd
