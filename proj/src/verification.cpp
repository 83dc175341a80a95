#include "spherepd/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "spherepd/asymptotics.hpp"
#include "spherepd/errors.hpp"
#include "spherepd/gegenbauer.hpp"
#include "spherepd/operators.hpp"
#include "spherepd/schoenberg.hpp"
#include "spherepd/validation.hpp"

namespace spherepd {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", x);
  return buffer;
}

double grid_point(int i, int n) { return kPi * i / (n - 1); }

double sup_distance(const std::function<double(double)>& a, const std::function<double(double)>& b,
                    int n = 400) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = grid_point(i, n);
    worst = std::max(worst, std::abs(a(t) - b(t)));
  }
  return worst;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult bound_check(std::string name, double error, double tolerance) {
  return {std::move(name), error < tolerance, "error " + fmt(error) + " (tolerance " + fmt(tolerance) + ")"};
}

// Runs a check body, turning an unexpected exception into a failure.
void guarded(std::vector<CheckResult>& out, const std::string& name,
             const std::function<CheckResult()>& body) {
  try {
    out.push_back(body());
  } catch (const std::exception& e) {
    out.push_back({name, false, std::string("threw: ") + e.what()});
  }
}

SchoenbergSequence random_sequence(std::mt19937_64& rng, int d, int N) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> b(N + 1);
  double total = 0.0;
  for (double& x : b) {
    x = unit(rng);
    total += x;
  }
  for (double& x : b) {
    x /= total;
  }
  return SchoenbergSequence::make(Dimension::finite(d), std::move(b));
}

// Families with rapidly decaying coefficients in every dimension.
std::vector<IsotropicFunction> smooth_families() {
  return {make_multiquadric(1.0, 0.5), make_multiquadric(2.0, 0.3), make_raised_cosine()};
}

// --- lemma2.1: moments, derivative formulas, model metadata ------------------

SuiteResult lemma_2_1() {
  SuiteResult s{"lemma2.1", {}};
  auto& c = s.checks;

  guarded(c, "moment of b_1 = 1", [] {
    const auto m = moment_sum(SchoenbergSequence::make(Dimension::finite(3), {0.0, 1.0}), 2);
    return CheckResult{"moment of b_1 = 1", m.convergent && m.value == 1.0, "value " + fmt(m.value)};
  });
  guarded(c, "geometric second moment", [] {
    const double delta = 0.3;
    const auto m = moment_sum(multiquadric_circle_sequence(delta, 200), 2);
    return bound_check("geometric second moment", relative(m.value, 2 * delta / ((1 - delta) * (1 - delta))),
                       1e-12);
  });
  guarded(c, "cubic decay flagged divergent at power 2", [] {
    std::vector<double> b(1001, 0.0);
    for (int n = 1; n <= 1000; ++n) {
      b[n] = 1.0 / (static_cast<double>(n) * n * n);
    }
    const auto m = moment_sum(SchoenbergSequence::make(Dimension::finite(1), b), 2);
    return CheckResult{"cubic decay flagged divergent at power 2", !m.convergent,
                       "tail increment " + fmt(m.tail_increment)};
  });

  for (auto [tau, delta] : {std::pair{1.0, 0.3}, std::pair{2.0, 0.5}}) {
    const IsotropicFunction psi = make_multiquadric(tau, delta);
    const double fd2 = even_derivative_at_zero(psi, 2);
    const double fd4 = even_derivative_at_zero(psi, 4);
    const std::string tag = "multiquadric(" + fmt(tau) + "," + fmt(delta) + ")";
    guarded(c, tag + " derivatives from inf sequence", [&] {
      const auto seq = multiquadric_infinite_sequence(tau, delta);
      const double e = std::max(relative(second_derivative_at_zero_from_sequence(seq), fd2),
                                relative(fourth_derivative_at_zero_from_sequence(seq), fd4));
      return bound_check(tag + " derivatives from inf sequence", e, 1e-4);
    });
    for (int d : {1, 2, 3, 5}) {
      const std::string name = tag + " derivatives from d=" + std::to_string(d) + " sequence";
      guarded(c, name, [&] {
        const auto seq = analyze(psi, d, 80);
        const double e = std::max(relative(second_derivative_at_zero_from_sequence(seq), fd2),
                                  relative(fourth_derivative_at_zero_from_sequence(seq), fd4));
        return bound_check(name, e, 1e-4);
      });
    }
  }
  guarded(c, "minimizing sequence b_0 = b_1 = 1/2", [] {
    bool ok = true;
    for (int d : {1, 2, 3, 7}) {
      ok = ok && second_derivative_at_zero_from_sequence(
                     SchoenbergSequence::make(Dimension::finite(d), {0.5, 0.5})) == -0.5;
    }
    return CheckResult{"minimizing sequence b_0 = b_1 = 1/2", ok, "-psi''(0) = 1/2 for d in {1,2,3,7}"};
  });
  guarded(c, "corner bound at c = pi", [] {
    const double one = corner_bound(1, kPi);
    const double three = corner_bound(3, kPi);
    return CheckResult{"corner bound at c = pi", one == 1.0 && three == 4.0 / 3.0,
                       "d=1: " + fmt(one) + ", d=3: " + fmt(three)};
  });

  // model metadata
  const std::vector<IsotropicFunction> families = {
      make_multiquadric(1.5, 0.4), make_wendland(WendlandKind::C2, 4.0, 3.0),
      make_wendland(WendlandKind::C4, 6.0, 2.0), yadrenko_lift(make_gaspari_cohn(1.2)),
      restrict_to_sphere(make_gaspari_cohn(2.0)), make_truncated_linear(1.0), make_raised_cosine(),
      make_cosine(), make_constant()};
  guarded(c, "families equal 1 at zero", [&] {
    bool ok = true;
    for (const auto& f : families) {
      ok = ok && f(0.0) == 1.0;
    }
    return CheckResult{"families equal 1 at zero", ok, std::to_string(families.size()) + " families"};
  });
  guarded(c, "piecewise continuity at junctions", [] {
    double worst = 0.0;
    for (const RadialFunction& phi : {make_gaspari_cohn(1.0), make_gc_descente_profile()}) {
      for (double t : {0.5, 1.0}) {
        worst = std::max(worst, std::abs(phi(std::nextafter(t, 0.0)) - phi(std::nextafter(t, 2.0))));
      }
    }
    return bound_check("piecewise continuity at junctions", worst, 1e-12);
  });
  guarded(c, "second derivative metadata vs central difference", [&] {
    double worst = 0.0;
    for (const auto& f : families) {
      if (!f.second_derivative_at_zero()) {
        continue;
      }
      constexpr double h = 1e-4;
      const double fd = 2.0 * (f(h) - f(0.0)) / (h * h);
      worst = std::max(worst, relative(fd, *f.second_derivative_at_zero()));
    }
    return bound_check("second derivative metadata vs central difference", worst, 1e-4);
  });
  guarded(c, "lift and restriction keep phi''(0)", [] {
    const RadialFunction phi = make_gaspari_cohn(2.0);
    const double target = -40.0 / (3.0 * 4.0);
    // phi has a |t|^3 term, so the second difference is only first order in h
    auto extrapolated = [](const IsotropicFunction& f) {
      constexpr double h = 2e-4;
      const double coarse = 2.0 * (f(h) - f(0.0)) / (h * h);
      const double fine = 2.0 * (f(0.5 * h) - f(0.0)) / (0.25 * h * h);
      return 2.0 * fine - coarse;
    };
    const double e = std::max(relative(extrapolated(yadrenko_lift(phi)), target),
                              relative(extrapolated(restrict_to_sphere(phi)), target));
    return bound_check("lift and restriction keep phi''(0)", e, 1e-6);
  });

  // validation invariants
  guarded(c, "pd certification of class members", [] {
    const std::vector<std::pair<IsotropicFunction, int>> members = {
        {make_multiquadric(1.0, 0.5), 1},
        {make_multiquadric(2.0, 0.3), 5},
        {make_wendland(WendlandKind::C2, 4.0, kPi / 2), 3},
        {make_wendland(WendlandKind::C4, 6.0, 2.0), 3},
        {yadrenko_lift(make_gaspari_cohn(2.0 * std::sin(1.0))), 2},
        {restrict_to_sphere(make_gaspari_cohn(2.0)), 3},
        {make_truncated_linear(kPi / 2), 1},
        {make_raised_cosine(), 7}};
    double worst = 0.0;
    bool ok = true;
    for (const auto& [psi, d] : members) {
      for (std::uint64_t seed : {1, 2, 3, 5, 8}) {
        const auto r = pd_check(psi, d, 60, seed);
        ok = ok && r.consistent;
        worst = std::min(worst, r.min_eigenvalue);
      }
    }
    return CheckResult{"pd certification of class members", ok, "smallest eigenvalue " + fmt(worst)};
  });
  guarded(c, "counterexample 1.2 cos - 0.2 violated on S^1", [] {
    const IsotropicFunction psi([](double t) { return 1.2 * std::cos(t) - 0.2; }, "counterexample");
    const auto r = pd_check(psi, 1, 40, 1);
    return CheckResult{"counterexample 1.2 cos - 0.2 violated on S^1", !r.consistent,
                       "min eigenvalue " + fmt(r.min_eigenvalue)};
  });
  guarded(c, "gram spectrum is permutation invariant", [] {
    const IsotropicFunction psi = make_multiquadric(1.0, 0.6);
    auto points = sample_sphere(2, 40, 3);
    const double before = min_eigenvalue(gram_matrix(psi, points));
    std::mt19937_64 rng(11);
    std::shuffle(points.begin(), points.end(), rng);
    const double after = min_eigenvalue(gram_matrix(psi, points));
    return bound_check("gram spectrum is permutation invariant", std::abs(before - after), 1e-10);
  });
  guarded(c, "finite sequences are smooth at interior points", [] {
    std::mt19937_64 rng(5);
    bool ok = true;
    for (int d : {1, 3}) {
      const IsotropicFunction psi = as_function(random_sequence(rng, d, 6));
      for (double t : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        ok = ok && differentiability_probe(psi, t, 5).first_failing_order == 0;
      }
    }
    return CheckResult{"finite sequences are smooth at interior points", ok, "orders 1..5 at 5 points"};
  });
  return s;
}

// --- prop3.3: montee condition and sequence form -----------------------------

SuiteResult prop_3_3() {
  SuiteResult s{"prop3.3", {}};
  auto& c = s.checks;
  guarded(c, "f_d finite-sum and hypergeometric forms agree", [] {
    double worst = 0.0;
    for (int d = 3; d <= 8; ++d) {
      for (int i = 0; i < 200; ++i) {
        const double t = kPi * (i + 0.5) / 200.0;
        const WeightForms w = f_d(d, t);
        worst = std::max(worst, std::abs(w.finite_sum - w.hypergeometric));
      }
    }
    return bound_check("f_d finite-sum and hypergeometric forms agree", worst, 1e-10);
  });
  const std::vector<IsotropicFunction> families = {
      make_multiquadric(1.0, 0.5), make_multiquadric(2.0, 0.3), make_wendland(WendlandKind::C2, 4.0, kPi / 2),
      make_raised_cosine(), make_cosine(), restrict_to_sphere(make_gaspari_cohn(2.0))};
  for (int d = 3; d <= 5; ++d) {
    const std::string name = "series c(d) equals integral of f_d psi, d=" + std::to_string(d);
    guarded(c, name, [&] {
      double worst = 0.0;
      bool consistent = true;
      for (const auto& psi : families) {
        const MonteeCondition m = montee_condition(psi, Dimension::finite(d));
        worst = std::max(worst, std::abs(*m.series - *m.integral));
        consistent = consistent && m.consistent;
      }
      CheckResult r = bound_check(name, worst, 1e-8);
      r.passed = r.passed && consistent;
      return r;
    });
  }
  guarded(c, "cosine on S^3 has c(3) = -1/4", [] {
    const MonteeCondition m = montee_condition(make_cosine(), Dimension::finite(3));
    const double e = std::max(std::abs(*m.series + 0.25), std::abs(*m.integral + 0.25));
    return bound_check("cosine on S^3 has c(3) = -1/4", e, 1e-8);
  });
  guarded(c, "montee of the cosine on S^3 is rejected", [] {
    const auto r = montee_sequence(SchoenbergSequence::make(Dimension::finite(3), {0.0, 1.0}));
    return CheckResult{"montee of the cosine on S^3 is rejected", !r.admitted(), r.admissibility.reason};
  });
  for (int d = 3; d <= 5; ++d) {
    const std::string name = "montee sequence form matches function form, d=" + std::to_string(d);
    guarded(c, name, [&] {
      double worst = 0.0;
      for (const auto& psi : smooth_families()) {
        const auto by_sequence = montee_sequence(analyze(psi, d, 64));
        const auto by_function = montee_numeric(psi);
        const SchoenbergSequence out = *by_sequence.result_sequence;
        worst = std::max(worst, sup_distance([&](double t) { return synthesize(out, t); },
                                             *by_function.result_function));
      }
      return bound_check(name, worst, 1e-7);
    });
  }
  guarded(c, "montee of multiquadric stays pd on S^1", [] {
    const auto f = *montee_numeric(make_multiquadric(2.0, 0.5)).result_function;
    bool ok = true;
    for (std::uint64_t seed : {1, 2, 3, 5, 8}) {
      ok = ok && pd_check(f, 1, 60, seed).consistent;
    }
    return CheckResult{"montee of multiquadric stays pd on S^1", ok, "5 seeds"};
  });
  return s;
}

// --- prop3.4: descente ------------------------------------------------------

SuiteResult prop_3_4() {
  SuiteResult s{"prop3.4", {}};
  auto& c = s.checks;
  guarded(c, "multiquadric closed under the descente", [] {
    double worst = 0.0;
    for (double tau : {1.0, 2.0, 3.0}) {
      for (double delta : {0.2, 0.5, 0.8}) {
        const auto r = descente_numeric(make_multiquadric(tau, delta));
        worst = std::max(worst, sup_distance(*r.result_function, make_multiquadric(tau + 1, delta)));
      }
    }
    return bound_check("multiquadric closed under the descente", worst, 1e-10);
  });
  for (int d = 3; d <= 5; ++d) {
    const std::string name = "descente sequence form matches function form, d=" + std::to_string(d);
    guarded(c, name, [&] {
      double worst = 0.0;
      for (const auto& psi : smooth_families()) {
        const auto by_sequence = descente_sequence(analyze(psi, d, 80));
        const auto by_function = descente_numeric(psi);
        const SchoenbergSequence out = *by_sequence.result_sequence;
        worst = std::max(worst, sup_distance([&](double t) { return synthesize(out, t); },
                                             *by_function.result_function));
      }
      return bound_check(name, worst, 1e-7);
    });
  }
  guarded(c, "descente keeps the positive index set shifted by one", [] {
    std::mt19937_64 rng(13);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      SchoenbergSequence seq = random_sequence(rng, 1 + trial % 6, 12);
      std::vector<double> b = seq.coefficients;
      for (std::size_t n = 1; n < b.size(); n += 1 + trial % 3) {
        b[n] = 0.0;
      }
      b[1] = std::max(b[1], 0.1);
      double total = 0.0;
      for (double x : b) {
        total += x;
      }
      for (double& x : b) {
        x /= total;
      }
      seq = SchoenbergSequence::make(seq.dimension, b);
      const SchoenbergSequence out = *descente_sequence(seq).result_sequence;
      for (int n = 0; n + 1 <= seq.max_degree(); ++n) {
        ok = ok && ((out.at(n) > 0.0) == (seq.at(n + 1) > 0.0));
      }
    }
    return CheckResult{"descente keeps the positive index set shifted by one", ok, "20 random sequences"};
  });
  guarded(c, "descentes of compactly supported families stay pd", [] {
    const double c2 = 2.0;
    const std::vector<std::pair<IsotropicFunction, int>> cases = {
        {*descente_numeric(restrict_to_sphere(make_gaspari_cohn(c2))).result_function, 5},
        {*descente_numeric(yadrenko_lift(make_gaspari_cohn(2.0 * std::sin(c2 / 2)))).result_function, 4},
        {*descente_numeric(make_wendland(WendlandKind::C2, 4.0, kPi / 2)).result_function, 5},
        {*descente_numeric(make_wendland(WendlandKind::C4, 6.0, 2.0)).result_function, 5}};
    bool ok = true;
    double worst = 0.0;
    for (const auto& [psi, d] : cases) {
      for (std::uint64_t seed : {1, 2, 3, 5, 8}) {
        const auto r = pd_check(psi, d, 60, seed);
        ok = ok && r.consistent;
        worst = std::min(worst, r.min_eigenvalue);
      }
    }
    return CheckResult{"descentes of compactly supported families stay pd", ok,
                       "smallest eigenvalue " + fmt(worst)};
  });
  guarded(c, "descente of Wendland C2 has the closed form", [] {
    const double tau = 4.0;
    const double cc = 1.5;
    const auto r = descente_numeric(make_wendland(WendlandKind::C2, tau, cc));
    const auto closed = [&](double t) {
      if (t <= 0.0) {
        return 1.0;
      }
      return t >= cc ? 0.0 : t / std::sin(t) * std::pow(1.0 - t / cc, tau - 1);
    };
    return bound_check("descente of Wendland C2 has the closed form", sup_distance(*r.result_function, closed),
                       1e-8);
  });
  return s;
}

// --- prop3.5: infinite-dimensional case ---------------------------------------

SuiteResult prop_3_5() {
  SuiteResult s{"prop3.5", {}};
  auto& c = s.checks;
  guarded(c, "montee of multiquadric tau=1 has the logarithmic form", [] {
    double worst = 0.0;
    for (double delta : {0.2, 0.5, 0.8}) {
      const auto r = montee_numeric(make_multiquadric(1.0, delta));
      const double at_zero = 2.0 * std::log(1.0 + delta) - 2.0 * std::log(1.0 - delta);
      const auto closed = [delta, at_zero](double t) {
        return (2.0 * std::log(1.0 + delta) - std::log(1.0 + delta * delta - 2.0 * delta * std::cos(t))) /
               at_zero;
      };
      worst = std::max(worst, sup_distance(*r.result_function, closed));
    }
    return bound_check("montee of multiquadric tau=1 has the logarithmic form", worst, 1e-8);
  });
  guarded(c, "inf descente sequence of multiquadric is the tau+1 sequence", [] {
    double worst = 0.0;
    for (double tau : {1.0, 2.0}) {
      for (double delta : {0.3, 0.6}) {
        const auto out = *descente_sequence(multiquadric_infinite_sequence(tau, delta)).result_sequence;
        const auto expected = multiquadric_infinite_sequence(tau + 1, delta);
        for (int n = 0; n <= std::max(out.max_degree(), expected.max_degree()); ++n) {
          worst = std::max(worst, std::abs(out.at(n) - expected.at(n)));
        }
      }
    }
    return bound_check("inf descente sequence of multiquadric is the tau+1 sequence", worst, 1e-12);
  });
  guarded(c, "inf montee condition: alternating sum equals upper-half integral", [] {
    double worst = 0.0;
    for (double delta : {0.3, 0.6}) {
      const auto seq = multiquadric_infinite_sequence(1.5, delta);
      const auto by_sequence = montee_condition(seq);
      const auto by_function = montee_condition(make_multiquadric(1.5, delta), Dimension::inf());
      worst = std::max(worst, std::abs(*by_sequence.series - *by_function.infinite_integral));
    }
    return bound_check("inf montee condition: alternating sum equals upper-half integral", worst, 1e-10);
  });
  guarded(c, "inf montee sequence matches function form", [] {
    const auto seq = multiquadric_infinite_sequence(2.0, 0.4);
    const auto out = *montee_sequence(seq).result_sequence;
    const auto f = *montee_numeric(make_multiquadric(2.0, 0.4)).result_function;
    return bound_check("inf montee sequence matches function form",
                       sup_distance([&](double t) { return synthesize(out, t); }, f), 1e-10);
  });
  return s;
}

// --- lemma3.2: inversion ------------------------------------------------------

SuiteResult lemma_3_2() {
  SuiteResult s{"lemma3.2", {}};
  for (const IsotropicFunction& psi : {make_raised_cosine(), make_wendland(WendlandKind::C2, 4.0, kPi / 2)}) {
    const std::string a = "montee of descente recovers " + psi.label();
    guarded(s.checks, a, [&] {
      const auto back = montee_numeric(*descente_numeric(psi).result_function);
      return bound_check(a, sup_distance(*back.result_function, psi), 1e-8);
    });
    const std::string b = "descente of montee recovers " + psi.label();
    guarded(s.checks, b, [&] {
      const auto back = descente_numeric(*montee_numeric(psi).result_function);
      return bound_check(b, sup_distance(*back.result_function, psi), 1e-8);
    });
  }
  return s;
}

// --- eq10-11: turning bands ---------------------------------------------------

SuiteResult eq_10_11() {
  SuiteResult s{"eq10-11", {}};
  guarded(s.checks, "turning bands identities on random sequences", [] {
    std::mt19937_64 rng(17);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 1 + trial % 3;
      const SchoenbergSequence seq = random_sequence(rng, d, 2 + trial % 9);
      SchoenbergSequence up = shift(seq, -1);
      up.dimension = Dimension::finite(d + 2);
      for (int i = 0; i < 50; ++i) {
        const double t = grid_point(i, 50);
        worst = std::max(worst, std::abs(turning_bands_down(seq, t) - synthesize(seq, t)));
        worst = std::max(worst, std::abs(turning_bands_up(seq, t) - synthesize(up, t)));
      }
    }
    return bound_check("turning bands identities on random sequences", worst, 1e-8);
  });
  guarded(s.checks, "function-level lift matches the sequence lift", [] {
    std::mt19937_64 rng(19);
    double worst = 0.0;
    for (int d : {1, 2, 3}) {
      const SchoenbergSequence seq = random_sequence(rng, d, 5);
      const auto lift = turning_bands_up_function(as_function(seq), d);
      worst = std::max(worst, std::abs(lift.b0 - seq.at(0)));
      worst = std::max(worst, sup_distance(lift.function, [&](double t) { return turning_bands_up(seq, t); }, 50));
    }
    return bound_check("function-level lift matches the sequence lift", worst, 1e-8);
  });
  return s;
}

// --- prop5.1: bases, expansions and conversion to the circle ------------------

SuiteResult prop_5_1() {
  SuiteResult s{"prop5.1", {}};
  auto& c = s.checks;
  guarded(c, "normalized Gegenbauer bounded by 1", [] {
    double worst = 0.0;
    for (double lambda : {0.0, 0.5, 1.0, 3.5, 10.0}) {
      for (int i = 0; i < 1000; ++i) {
        const double x = -1.0 + 2.0 * i / 999.0;
        for (double v : normalized_gegenbauer_all(lambda, 200, x)) {
          worst = std::max(worst, std::abs(v));
        }
      }
    }
    return CheckResult{"normalized Gegenbauer bounded by 1", worst <= 1.0 + 1e-12, "max " + fmt(worst)};
  });
  guarded(c, "Gegenbauer three-term recurrence", [] {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> lam(0.1, 10.0);
    std::uniform_real_distribution<double> xs(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const double lambda = lam(rng);
      const double x = xs(rng);
      for (int n = 1; n < 200; ++n) {
        const double next = gegenbauer_value({lambda, n + 1, x});
        const double here = gegenbauer_value({lambda, n, x});
        const double prev = gegenbauer_value({lambda, n - 1, x});
        const double lhs = (n + 1) * next;
        const double rhs = 2.0 * (n + lambda) * x * here - (n + 2.0 * lambda - 1.0) * prev;
        const double scale = std::max({std::abs(lhs), std::abs(2.0 * (n + lambda) * x * here),
                                       std::abs((n + 2.0 * lambda - 1.0) * prev), 1e-300});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
      }
    }
    return bound_check("Gegenbauer three-term recurrence", worst, 1e-10);
  });
  guarded(c, "lambda = 0 gives cos(n theta)", [] {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = grid_point(i, 101);
      for (int n = 0; n <= 50; ++n) {
        worst = std::max(worst, std::abs(normalized_gegenbauer({0.0, n, std::cos(t)}) - std::cos(n * t)));
      }
    }
    return bound_check("lambda = 0 gives cos(n theta)", worst, 1e-13);
  });
  guarded(c, "analyze inverts synthesize", [] {
    std::mt19937_64 rng(29);
    double worst = 0.0;
    for (int trial = 0; trial < 28; ++trial) {
      const int d = 1 + trial % 7;
      const int N = 1 + (trial * 11) % 40;
      const SchoenbergSequence seq = random_sequence(rng, d, N);
      const SchoenbergSequence back = analyze(as_function(seq), d, N);
      for (int n = 0; n <= N; ++n) {
        worst = std::max(worst, std::abs(back.at(n) - seq.at(n)));
      }
    }
    return bound_check("analyze inverts synthesize", worst, 1e-8);
  });
  guarded(c, "constant projects to b_0 = 1", [] {
    double worst = 0.0;
    for (int d = 1; d <= 7; ++d) {
      const SchoenbergSequence seq = analyze(make_constant(), d, 20);
      worst = std::max(worst, std::abs(seq.at(0) - 1.0));
      for (int n = 1; n <= 20; ++n) {
        worst = std::max(worst, std::abs(seq.at(n)));
      }
    }
    return bound_check("constant projects to b_0 = 1", worst, 1e-10);
  });
  for (const IsotropicFunction& psi : {make_multiquadric(1.0, 0.5), make_wendland(WendlandKind::C2, 4.0, 3.0)}) {
    const std::string name = "to_one_dim agrees with direct circle expansion for " + psi.label();
    guarded(c, name, [&] {
      const SchoenbergSequence circle = analyze(psi, 1, 64);
      double worst = 0.0;
      for (int d = 2; d <= 5; ++d) {
        const SchoenbergSequence converted = to_one_dim(analyze(psi, d, 64));
        for (int n = 0; n <= 64; ++n) {
          worst = std::max(worst, std::abs(converted.at(n) - circle.at(n)));
        }
      }
      return bound_check(name, worst, 1e-6);
    });
  }
  guarded(c, "to_one_dim keeps parity", [] {
    bool ok = true;
    for (int d : {2, 3, 6}) {
      for (int j = 0; j <= 9; ++j) {
        std::vector<double> b(10, 0.0);
        b[j] = 1.0;
        const SchoenbergSequence out = to_one_dim(SchoenbergSequence::make(Dimension::finite(d), b));
        for (int n = 0; n <= 9; ++n) {
          if ((n - j) % 2 != 0 || n > j) {
            ok = ok && out.at(n) == 0.0;
          }
        }
      }
    }
    return CheckResult{"to_one_dim keeps parity", ok, "unit sequences, d in {2,3,6}"};
  });
  guarded(c, "Poisson kernel circle sequence", [] {
    const double delta = 0.3;
    const SchoenbergSequence seq = analyze(make_multiquadric(1.0, delta), 1, 32);
    const SchoenbergSequence exact = multiquadric_circle_sequence(delta, 32);
    double worst = 0.0;
    for (int n = 0; n <= 32; ++n) {
      worst = std::max(worst, std::abs(seq.at(n) - exact.at(n)));
    }
    return bound_check("Poisson kernel circle sequence", worst, 1e-12);
  });
  return s;
}

// --- lemma5.2: kappa moment asymptotics ---------------------------------------

SuiteResult lemma_5_2() {
  SuiteResult s{"lemma5.2", {}};
  auto& c = s.checks;
  guarded(c, "c_d(0) = 1 for d = 2, 3, 5", [] {
    const double e = std::max({std::abs(c_d_constant(2, 0) - 1.0), std::abs(c_d_constant(3, 0) - 1.0),
                               std::abs(c_d_constant(5, 0) - 1.0)});
    return bound_check("c_d(0) = 1 for d = 2, 3, 5", e, 1e-14);
  });
  guarded(c, "d=3 zeroth moment is 2j/(2j+1)", [] {
    double worst = 0.0;
    for (int j : {1, 7, 100}) {
      worst = std::max(worst, relative(kappa_moment_sum(3, 0, j, Parity::even), 2.0 * j / (2.0 * j + 1.0)));
    }
    return bound_check("d=3 zeroth moment is 2j/(2j+1)", worst, 1e-13);
  });
  for (int d = 2; d <= 7; ++d) {
    const std::string name = "moment ratios approach c_d(l), d=" + std::to_string(d);
    guarded(c, name, [&] {
      bool ok = true;
      double worst = 0.0;
      double worst_parity = 0.0;
      for (int l = 0; l <= 4; ++l) {
        const AsymptoticProbe p = kappa_probe(d, l, {500, 5000});
        for (const Trajectory& t : p.trajectories) {
          const double early = std::abs(t.ratios[0] / *p.target - 1.0);
          const double late = std::abs(t.ratios[1] / *p.target - 1.0);
          // exact identities sit at the rounding floor at both j
          ok = ok && late < 0.05 && (late < early || late <= 1e-9);
          worst = std::max(worst, late);
        }
        worst_parity = std::max(worst_parity, p.parity_agreement);
      }
      ok = ok && worst_parity < 1e-2;
      return CheckResult{name, ok,
                         "largest error at j=5000 " + fmt(worst) + ", even/odd disagreement " + fmt(worst_parity)};
    });
  }
  guarded(c, "dimension recursion of kappa", [] {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> dims(2, 12);
    std::uniform_int_distribution<int> js(1, 400);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const int d = dims(rng);
      const int j = js(rng);
      std::uniform_int_distribution<int> ns(0, j);
      int n = ns(rng);
      if ((j - n) % 2 != 0) {
        n = n == 0 ? 1 : n - 1;
      }
      worst = std::max(worst, relative(kappa_recursion_step(d, j, n), kernel_value(KernelKind::kappa(d + 2), j, n)));
    }
    return bound_check("dimension recursion of kappa", worst, 1e-12);
  });
  return s;
}

// --- lemma5.4: tau moments ------------------------------------------------------

SuiteResult lemma_5_4() {
  SuiteResult s{"lemma5.4", {}};
  auto& c = s.checks;
  for (Parity parity : {Parity::even, Parity::odd}) {
    for (int l : {0, 2, 4}) {
      const std::string name = std::string(parity_name(parity)) + " p_" + std::to_string(l) +
                               " closed form, exact for j <= 30";
      guarded(c, name, [&] {
        int first_bad = 0;
        for (int j = 1; j <= 30 && first_bad == 0; ++j) {
          if (tau_moment_exact(l, j, parity) != tau_moment_closed_form_exact(l, j, parity)) {
            first_bad = j;
          }
        }
        return CheckResult{name, first_bad == 0,
                           first_bad == 0 ? "all equal"
                                          : "differs at j=" + std::to_string(first_bad) + ": sum " +
                                                tau_moment_exact(l, first_bad, parity).str() + ", closed form " +
                                                tau_moment_closed_form_exact(l, first_bad, parity).str()};
      });
      const std::string fname = std::string(parity_name(parity)) + " p_" + std::to_string(l) +
                                " closed form, floating for j <= 1000";
      guarded(c, fname, [&] {
        double worst = 0.0;
        for (int j = 1; j <= 1000; ++j) {
          const TauMoment m = tau_moment_sum(l, j, parity);
          worst = std::max(worst, relative(m.value, *m.closed_form));
        }
        return bound_check(fname, worst, 1e-12);
      });
    }
  }
  guarded(c, "odd sums equal the binomial moments 1, 2j-1, (2j-1)(6j-5)", [] {
    bool ok = true;
    for (int j = 1; j <= 30; ++j) {
      ok = ok && tau_moment_exact(0, j, Parity::odd) == Rational(1) &&
           tau_moment_exact(2, j, Parity::odd) == Rational(2 * j - 1) &&
           tau_moment_exact(4, j, Parity::odd) == Rational((2 * j - 1) * (6 * j - 5));
    }
    return CheckResult{"odd sums equal the binomial moments 1, 2j-1, (2j-1)(6j-5)", ok, "exact, j <= 30"};
  });
  return s;
}

// --- conjecture -------------------------------------------------------------------

SuiteResult conjecture() {
  SuiteResult s{"conjecture", {}};
  auto& c = s.checks;
  guarded(c, "k=1 even ratio is exactly 2", [] {
    const AsymptoticProbe p = conjecture_probe(1, 10000);
    double worst = 0.0;
    for (double r : p.trajectories[0].ratios) {
      worst = std::max(worst, std::abs(r - 2.0));
    }
    return bound_check("k=1 even ratio is exactly 2", worst, 1e-10);
  });
  guarded(c, "k=1 and k=2 ratios approach 2 and 12", [] {
    const AsymptoticProbe one = conjecture_probe(1, 10000);
    const AsymptoticProbe two = conjecture_probe(2, 10000);
    double worst = 0.0;
    for (const Trajectory& t : one.trajectories) {
      worst = std::max(worst, relative(t.ratios.back(), 2.0));
    }
    for (const Trajectory& t : two.trajectories) {
      worst = std::max(worst, relative(t.ratios.back(), 12.0));
    }
    return bound_check("k=1 and k=2 ratios approach 2 and 12", worst, 1e-3);
  });
  for (int k = 3; k <= 15; ++k) {
    const std::string name = "k=" + std::to_string(k) + " trajectories stabilize";
    guarded(c, name, [&] {
      const AsymptoticProbe p = conjecture_probe(k, 10000);
      const double drift = std::max(p.trajectories[0].last_decade_drift, p.trajectories[1].last_decade_drift);
      const bool ok = drift < 0.02 && p.parity_agreement < 0.01;
      return CheckResult{name, ok,
                         "last-decade drift " + fmt(drift) + " (< 0.02), even/odd " + fmt(p.parity_agreement) +
                             " (< 0.01)"};
    });
  }
  return s;
}

// --- optimality ---------------------------------------------------------------------

SuiteResult optimality() {
  SuiteResult s{"optimality", {}};
  const std::vector<std::tuple<int, int, double>> cases = {
      {1, 0, kPi / 2}, {3, 0, kPi / 2}, {1, 1, 1.0}, {3, 1, 1.0}};
  for (const auto& [d, k, cc] : cases) {
    const std::string name =
        "witness d=" + std::to_string(d) + " k=" + std::to_string(k) + " c=" + fmt(cc);
    guarded(s.checks, name, [&] {
      const JumpReport r = optimality_witness(d, k, cc).report;
      const bool ok = r.detected && r.stable_at_zero;
      return CheckResult{name, ok,
                         "expected order " + std::to_string(r.expected_order) + ", first failing " +
                             std::to_string(r.first_failing_order) + ", gap " + fmt(r.gap) + ", noise " +
                             fmt(r.noise) + (k >= 1 ? (r.stable_at_zero ? ", stable at 0" : ", unstable at 0") : "")};
    });
  }
  return s;
}

const std::map<std::string, SuiteResult (*)()>& registry() {
  static const std::map<std::string, SuiteResult (*)()> suites = {
      {"lemma2.1", lemma_2_1}, {"prop3.3", prop_3_3},       {"prop3.4", prop_3_4},
      {"prop3.5", prop_3_5},   {"lemma3.2", lemma_3_2},     {"eq10-11", eq_10_11},
      {"prop5.1", prop_5_1},   {"lemma5.2", lemma_5_2},     {"lemma5.4", lemma_5_4},
      {"conjecture", conjecture}, {"optimality", optimality}};
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma2.1", "prop3.3",  "prop3.4",  "prop3.5",
                                                 "lemma3.2", "eq10-11",  "prop5.1",  "lemma5.2",
                                                 "lemma5.4", "conjecture", "optimality"};
  return names;
}

SuiteResult run_suite(const std::string& name) {
  const auto& suites = registry();
  const auto it = suites.find(name);
  if (it == suites.end()) {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return it->second();
}

}  // namespace spherepd
