#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spherepd {

enum class Parity { even, odd };

const char* parity_name(Parity p);

/// 2 sum_{n=1}^j (2n)^l kappa_d(2j, 2n) (even) or
/// 2 sum_{n=1}^j (2n-1)^l kappa_d(2j-1, 2n-1) (odd).
double kappa_moment_sum(int d, int l, int j, Parity parity);

/// Right-hand side of the dimension recursion
/// kappa_{d+2}(j, n) = d/(d-1) ((d-1+j)/(d+j) - n^2/((d-1+j)(d+j))) kappa_d(j, n).
double kappa_recursion_step(int d, int j, int n);

/// Limit constant c_d(l) of kappa_moment_sum / j^l. Base cases
/// c_2(l) = 2^l Gamma((l+1)/2) / (sqrt(pi) Gamma(l/2 + 1)) and c_3(l) = 2^l/(l+1),
/// then c_{d+2}(l) = d/(d-1) (c_d(l) - c_d(l+2)/4).
double c_d_constant(int d, int l);

struct TauMoment {
  double value = 0.0;
  /// Closed form for l in {0, 2, 4}.
  std::optional<double> closed_form;
};

/// 2 sum_{n=1}^j (2n)^l tau(2j, 2n) (even) or 2 sum (2n-1)^l tau(2j-1, 2n-1)
/// (odd), with tau evaluated by a ratio recurrence in n.
TauMoment tau_moment_sum(int l, int j, Parity parity);

using Rational = boost::multiprecision::cpp_rational;

/// The same sum in exact rational arithmetic.
Rational tau_moment_exact(int l, int j, Parity parity);
/// Exact closed forms: p_0 = 1 - C(2j, j)/4^j (even) or 1 (odd), p_2 = 2j,
/// p_4 = 4j(3j - 1). Throws std::invalid_argument for other l.
Rational tau_moment_closed_form_exact(int l, int j, Parity parity);

struct Trajectory {
  Parity parity = Parity::even;
  std::vector<double> values;
  std::vector<double> ratios;
  /// |r(j_max) - r(j_max/10)| / |r(j_max)|.
  double last_decade_drift = 0.0;
  /// Relative change between consecutive grid points.
  std::vector<double> stabilization;
};

struct AsymptoticProbe {
  std::string kind;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<int> j_grid;
  /// ratios = values / j^power
  int power = 0;
  std::vector<Trajectory> trajectories;
  std::optional<double> target;
  /// |r_even(j_max) / r_odd(j_max) - 1|.
  double parity_agreement = 0.0;
};

/// {1, 2, 5} x 10^m up to j_max, plus j_max / 10 and j_max, sorted.
std::vector<int> geometric_grid(int j_max);

/// Ratio trajectories of 2^{-2j+1} sum (2n)^{2k} C(2j, j+n) / j^k and its odd
/// analogue. No limit constant is asserted.
AsymptoticProbe conjecture_probe(int k, int j_max);

/// kappa_moment_sum(d, l, j, .) / j^l on a grid, with c_d(l) as target.
AsymptoticProbe kappa_probe(int d, int l, const std::vector<int>& j_grid);

}  // namespace spherepd
