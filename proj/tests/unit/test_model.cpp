#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spherepd/model.hpp"

using namespace spherepd;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("multiquadric values and metadata") {
  const IsotropicFunction mq = make_multiquadric(2.0, 0.4);
  CHECK(mq(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mq(kPi) == doctest::Approx(std::pow(0.6 / 1.4, 4)).epsilon(1e-14));
  REQUIRE(mq.has_derivative());
  REQUIRE(mq.second_derivative_at_zero());
  CHECK(*mq.second_derivative_at_zero() == doctest::Approx(even_derivative_at_zero(mq, 2)).epsilon(1e-6));
  CHECK_THROWS(make_multiquadric(1.0, 1.0));
  CHECK_THROWS(make_multiquadric(0.0, 0.5));
}

TEST_CASE("multiquadric(1, 0.3) second derivative from sympy") {
  const IsotropicFunction mq = make_multiquadric(1.0, 0.3);
  CHECK(*mq.second_derivative_at_zero() == doctest::Approx(-1.2244897959183673469).epsilon(1e-13));
  CHECK(even_derivative_at_zero(mq, 4) == doctest::Approx(10.220741357767596835).epsilon(1e-5));
}

TEST_CASE("wendland values") {
  const IsotropicFunction w2 = make_wendland(WendlandKind::C2, 4.0, 1.0);
  CHECK(w2(0.5) == doctest::Approx(0.1875).epsilon(1e-14));
  CHECK(w2(1.0) == 0.0);
  CHECK(w2(2.0) == 0.0);
  REQUIRE(w2.support_radius());
  CHECK(*w2.support_radius() == 1.0);
  const IsotropicFunction w4 = make_wendland(WendlandKind::C4, 6.0, 1.0);
  CHECK(w4(0.5) == doctest::Approx(0.10807291666666666667).epsilon(1e-14));
  CHECK_THROWS(make_wendland(WendlandKind::C2, 3.0, 1.0));
  CHECK_THROWS(make_wendland(WendlandKind::C4, 5.0, 1.0));
  CHECK_THROWS(make_wendland(WendlandKind::C2, 4.0, 4.0));
}

TEST_CASE("gaspari-cohn and its sphere versions") {
  const RadialFunction gc = make_gaspari_cohn(2.0);
  CHECK(gc(0.0) == 1.0);
  CHECK(std::abs(gc(2.0)) < 1e-15);
  CHECK(gc(3.0) == 0.0);
  CHECK(*gc.second_derivative_at_zero() == doctest::Approx(-40.0 / 12.0).epsilon(1e-15));
  // continuity at the junction t = c/2
  CHECK(gc(1.0 - 1e-12) == doctest::Approx(gc(1.0 + 1e-12)).epsilon(1e-9));

  const IsotropicFunction restricted = restrict_to_sphere(make_gaspari_cohn(kPi));
  CHECK(restricted(1.0) == doctest::Approx(make_gaspari_cohn(kPi)(1.0)).epsilon(1e-15));
  CHECK_THROWS(restrict_to_sphere(make_gaspari_cohn(4.0)));

  const IsotropicFunction lifted = yadrenko_lift(gc);
  CHECK(lifted(0.9) == doctest::Approx(gc(2.0 * std::sin(0.45))).epsilon(1e-15));
}

TEST_CASE("yadrenko lift of a constant is constant") {
  const RadialFunction one([](double) { return 1.0; }, "one");
  const IsotropicFunction psi = yadrenko_lift(one);
  for (double t : {0.0, 0.4, 2.0, kPi}) {
    CHECK(psi(t) == 1.0);
  }
}

TEST_CASE("simple families") {
  const IsotropicFunction hat = make_truncated_linear(2.0);
  CHECK(hat(0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(hat(2.5) == 0.0);
  CHECK(make_constant()(1.3) == 1.0);
  CHECK(make_cosine()(1.3) == doctest::Approx(std::cos(1.3)).epsilon(1e-15));
  CHECK(make_raised_cosine()(kPi) == doctest::Approx(0.0));
}

TEST_CASE("with_* returns modified copies") {
  const IsotropicFunction base = make_cosine();
  const IsotropicFunction labelled = base.with_label("other").with_breakpoints({0.5});
  CHECK(base.label() != "other");
  CHECK(labelled.label() == "other");
  CHECK(base.breakpoints().empty());
  CHECK(labelled.breakpoints().size() == 1);
}

TEST_CASE("numeric derivatives") {
  const IsotropicFunction mq = make_multiquadric(1.0, 0.5);
  CHECK(numeric_derivative(mq, 1, kPi / 2) == doctest::Approx(mq.derivative(kPi / 2)).epsilon(1e-6));
  for (int order = 1; order <= 5; ++order) {
    CHECK(std::abs(numeric_derivative(make_constant(), order, 1.0)) < 1e-6);
  }
  CHECK(numeric_derivative(make_cosine(), 2, 1.0) == doctest::Approx(-std::cos(1.0)).epsilon(1e-6));
  CHECK(numeric_derivative(make_cosine(), 3, 1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-6));
  CHECK(even_derivative_at_zero(make_cosine(), 4) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(even_derivative_at_zero(make_cosine(), 3) == 0.0);
  CHECK(derivative_of_order(make_cosine(), 0, 0.4) == doctest::Approx(std::cos(0.4)));
}

TEST_CASE("first_derivative falls back to finite differences") {
  const IsotropicFunction bare([](double t) { return std::cos(2 * t); }, "cos2");
  CHECK_FALSE(bare.has_derivative());
  CHECK_THROWS(bare.derivative(0.3));
  CHECK(first_derivative(bare, 0.3) == doctest::Approx(-2 * std::sin(0.6)).epsilon(1e-7));
  CHECK(second_derivative_at_zero_or_estimate(bare) == doctest::Approx(-4.0).epsilon(1e-6));
}
