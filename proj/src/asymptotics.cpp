#include "spherepd/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spherepd/numerics.hpp"
#include "spherepd/schoenberg.hpp"

namespace spherepd {

const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

double kappa_moment_sum(int d, int l, int j, Parity parity) {
  if (d < 2 || l < 0 || j < 1) {
    throw std::invalid_argument("kappa_moment_sum: need d >= 2, l >= 0, j >= 1");
  }
  const KernelKind kind = KernelKind::kappa(d);
  numerics::CompensatedSum sum;
  for (int n = 1; n <= j; ++n) {
    if (parity == Parity::even) {
      sum.add(std::pow(2.0 * n, l) * kernel_value(kind, 2 * j, 2 * n));
    } else {
      sum.add(std::pow(2.0 * n - 1.0, l) * kernel_value(kind, 2 * j - 1, 2 * n - 1));
    }
  }
  return 2.0 * sum.value();
}

double kappa_recursion_step(int d, int j, int n) {
  if (d < 2) {
    throw std::invalid_argument("kappa_recursion_step: d >= 2 required");
  }
  const double a = d - 1.0 + j;
  const double b = d + static_cast<double>(j);
  const double factor = d / (d - 1.0) * (a / b - static_cast<double>(n) * n / (a * b));
  return factor * kernel_value(KernelKind::kappa(d), j, n);
}

double c_d_constant(int d, int l) {
  if (d < 2 || l < 0) {
    throw std::invalid_argument("c_d_constant: need d >= 2 and l >= 0");
  }
  if (d == 2) {
    return std::exp(l * std::numbers::ln2 + numerics::log_gamma(0.5 * (l + 1)) -
                    numerics::log_gamma(0.5 * l + 1.0)) /
           std::sqrt(std::numbers::pi);
  }
  if (d == 3) {
    return std::ldexp(1.0, l) / (l + 1.0);
  }
  const double e = d - 2.0;
  return e / (e - 1.0) * (c_d_constant(d - 2, l) - 0.25 * c_d_constant(d - 2, l + 2));
}

namespace {

// binom(2j, j) / 4^j as a product of j factors
double central_ratio(int j) {
  double out = 1.0;
  for (int i = 1; i <= j; ++i) {
    out *= (2.0 * i - 1.0) / (2.0 * i);
  }
  return out;
}

}  // namespace

TauMoment tau_moment_sum(int l, int j, Parity parity) {
  if (l < 0 || j < 1) {
    throw std::invalid_argument("tau_moment_sum: need l >= 0 and j >= 1");
  }
  numerics::CompensatedSum sum;
  const double start = central_ratio(j);
  if (parity == Parity::even) {
    // tau(2j, 2n) from tau(2j, 0) = C(2j, j) / 4^j
    double t = start;
    for (int n = 0; n < j; ++n) {
      t *= static_cast<double>(j - n) / (j + n + 1.0);
      sum.add(std::pow(2.0 * (n + 1), l) * t);
    }
  } else {
    // tau(2j-1, 2n-1) from tau(2j-1, 1) = C(2j, j) / 4^j
    double t = start;
    for (int n = 1; n <= j; ++n) {
      sum.add(std::pow(2.0 * n - 1.0, l) * t);
      t *= static_cast<double>(j - n) / (j + n);
    }
  }
  TauMoment out;
  out.value = 2.0 * sum.value();
  if (l == 0) {
    out.closed_form = parity == Parity::even ? 1.0 - start : 1.0;
  } else if (l == 2) {
    out.closed_form = 2.0 * j;
  } else if (l == 4) {
    out.closed_form = 4.0 * j * (3.0 * j - 1.0);
  }
  return out;
}

Rational tau_moment_exact(int l, int j, Parity parity) {
  using boost::multiprecision::cpp_int;
  if (l < 0 || j < 1) {
    throw std::invalid_argument("tau_moment_exact: need l >= 0 and j >= 1");
  }
  const int top = parity == Parity::even ? 2 * j : 2 * j - 1;
  // binom(top, m) for m descending from the middle
  cpp_int binom = 1;
  const int first = parity == Parity::even ? j + 1 : j;  // lower index j + n (even) or j + n - 1 (odd)
  for (int i = 1; i <= first; ++i) {
    binom = binom * (top - i + 1) / i;
  }
  cpp_int total = 0;
  for (int n = 1; n <= j; ++n) {
    const int lower = parity == Parity::even ? j + n : j + n - 1;
    const cpp_int base = parity == Parity::even ? cpp_int(2 * n) : cpp_int(2 * n - 1);
    total += boost::multiprecision::pow(base, l) * binom;
    if (n < j) {
      binom = binom * (top - lower) / (lower + 1);
    }
  }
  const cpp_int denominator = cpp_int(1) << (top - 1);
  return Rational(total, denominator);
}

Rational tau_moment_closed_form_exact(int l, int j, Parity parity) {
  using boost::multiprecision::cpp_int;
  if (l == 0) {
    if (parity == Parity::odd) {
      return Rational(1);
    }
    cpp_int central = 1;
    for (int i = 1; i <= j; ++i) {
      central = central * (j + i) / i;
    }
    return Rational(1) - Rational(central, cpp_int(1) << (2 * j));
  }
  if (l == 2) {
    return Rational(2 * j);
  }
  if (l == 4) {
    return Rational(cpp_int(4) * j * (3 * j - 1));
  }
  throw std::invalid_argument("tau_moment_closed_form_exact: only l in {0, 2, 4}");
}

std::vector<int> geometric_grid(int j_max) {
  if (j_max < 1) {
    throw std::invalid_argument("geometric_grid: j_max >= 1 required");
  }
  std::vector<int> grid;
  for (long long scale = 1; scale <= j_max; scale *= 10) {
    for (int m : {1, 2, 5}) {
      if (m * scale <= j_max) {
        grid.push_back(static_cast<int>(m * scale));
      }
    }
  }
  if (j_max / 10 >= 1) {
    grid.push_back(j_max / 10);
  }
  grid.push_back(j_max);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace {

void finish_trajectory(Trajectory& trajectory, const std::vector<int>& grid) {
  const int j_max = grid.back();
  std::size_t decade_index = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= std::max(1, j_max / 10)) {
      decade_index = i;
    }
  }
  const double last = trajectory.ratios.back();
  trajectory.last_decade_drift = std::abs(last - trajectory.ratios[decade_index]) / std::abs(last);
  for (std::size_t i = 1; i < trajectory.ratios.size(); ++i) {
    trajectory.stabilization.push_back(std::abs(trajectory.ratios[i] - trajectory.ratios[i - 1]) /
                                       std::abs(trajectory.ratios[i]));
  }
}

}  // namespace

AsymptoticProbe conjecture_probe(int k, int j_max) {
  if (k < 1) {
    throw std::invalid_argument("conjecture_probe: k >= 1 required");
  }
  AsymptoticProbe probe;
  probe.kind = "conjecture";
  probe.parameters = {{"k", k}, {"j_max", j_max}};
  probe.j_grid = geometric_grid(j_max);
  probe.power = k;
  for (Parity parity : {Parity::even, Parity::odd}) {
    Trajectory trajectory;
    trajectory.parity = parity;
    for (int j : probe.j_grid) {
      const double value = tau_moment_sum(2 * k, j, parity).value;
      trajectory.values.push_back(value);
      trajectory.ratios.push_back(value / std::pow(static_cast<double>(j), k));
    }
    finish_trajectory(trajectory, probe.j_grid);
    probe.trajectories.push_back(std::move(trajectory));
  }
  probe.parity_agreement =
      std::abs(probe.trajectories[0].ratios.back() / probe.trajectories[1].ratios.back() - 1.0);
  return probe;
}

AsymptoticProbe kappa_probe(int d, int l, const std::vector<int>& j_grid) {
  if (j_grid.empty() || !std::is_sorted(j_grid.begin(), j_grid.end())) {
    throw std::invalid_argument("kappa_probe: j grid must be nonempty and increasing");
  }
  AsymptoticProbe probe;
  probe.kind = "kappa-moment";
  probe.parameters = {{"d", d}, {"l", l}};
  probe.j_grid = j_grid;
  probe.power = l;
  probe.target = c_d_constant(d, l);
  for (Parity parity : {Parity::even, Parity::odd}) {
    Trajectory trajectory;
    trajectory.parity = parity;
    for (int j : j_grid) {
      const double value = kappa_moment_sum(d, l, j, parity);
      trajectory.values.push_back(value);
      trajectory.ratios.push_back(value / std::pow(static_cast<double>(j), l));
    }
    finish_trajectory(trajectory, j_grid);
    probe.trajectories.push_back(std::move(trajectory));
  }
  probe.parity_agreement =
      std::abs(probe.trajectories[0].ratios.back() / probe.trajectories[1].ratios.back() - 1.0);
  return probe;
}

}  // namespace spherepd
