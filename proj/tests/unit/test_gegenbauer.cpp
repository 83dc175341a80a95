#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spherepd/gegenbauer.hpp"

using namespace spherepd;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gegenbauer_value small cases") {
  CHECK(gegenbauer_value({1.0, 1, 0.25}) == doctest::Approx(0.5).epsilon(1e-15));
  for (double lambda : {0.0, 0.5, 1.0, 3.5}) {
    CHECK(gegenbauer_value({lambda, 0, -0.3}) == 1.0);
  }
  CHECK(std::abs(gegenbauer_value({1.0, 2, 0.5})) < 1e-15);
  // C_1^lambda(x) = 2 lambda x
  for (int d = 2; d <= 7; ++d) {
    CHECK(gegenbauer_value({sphere_lambda(d), 1, 0.4}) == doctest::Approx((d - 1) * 0.4).epsilon(1e-14));
  }
}

TEST_CASE("gegenbauer_value against mpmath") {
  CHECK(gegenbauer_value({1.5, 25, 0.3}) == doctest::Approx(4.30653620558499644575).epsilon(1e-12));
  CHECK(gegenbauer_value({0.5, 7, -0.8}) == doctest::Approx(0.2396512).epsilon(1e-12));
}

TEST_CASE("gegenbauer_value lambda = 0 is cos(n theta)") {
  const double theta = 0.7;
  CHECK(gegenbauer_value({0.0, 5, std::cos(theta)}) == doctest::Approx(std::cos(5 * theta)).epsilon(1e-13));
}

TEST_CASE("gegenbauer_value rejects invalid points") {
  CHECK_THROWS_AS(gegenbauer_value({1.0, 2, 1.5}), std::domain_error);
  CHECK_THROWS_AS(gegenbauer_value({-0.5, 2, 0.1}), std::domain_error);
  CHECK_THROWS_AS(gegenbauer_value({1.0, -1, 0.1}), std::domain_error);
}

TEST_CASE("gegenbauer_at_one") {
  CHECK(gegenbauer_at_one(1.0, 2) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(gegenbauer_at_one(0.5, 5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gegenbauer_at_one(2.5, 0) == 1.0);
  CHECK(gegenbauer_at_one(0.0, 9) == 1.0);
  CHECK(gegenbauer_at_one(1.5, 25) == doctest::Approx(351.0).epsilon(1e-13));
}

TEST_CASE("normalized_gegenbauer") {
  const double theta = 1.1;
  for (int d = 2; d <= 9; ++d) {
    CHECK(normalized_gegenbauer({sphere_lambda(d), 1, std::cos(theta)}) ==
          doctest::Approx(std::cos(theta)).epsilon(1e-14));
  }
  for (double lambda : {0.0, 0.5, 2.0, 7.5}) {
    for (int n : {0, 1, 4, 60}) {
      CHECK(normalized_gegenbauer({lambda, n, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  CHECK(std::abs(normalized_gegenbauer({0.0, 3, std::cos(kPi / 6)})) < 1e-14);
  CHECK(normalized_gegenbauer({1.5, 25, 0.3}) == doctest::Approx(0.01226933391904557392).epsilon(1e-11));
  CHECK(normalized_gegenbauer({3.0, 40, 0.1}) == doctest::Approx(-7.68992115876339916e-5).epsilon(1e-10));
}

TEST_CASE("normalized_gegenbauer stays bounded at high degree") {
  for (double x : {-0.99, -0.2, 0.37, 0.999}) {
    const double r = normalized_gegenbauer({3.0, 3000, x});
    CHECK(std::isfinite(r));
    CHECK(std::abs(r) <= 1.0 + 1e-12);
  }
}

TEST_CASE("normalized_gegenbauer_all matches single evaluations") {
  const auto all = normalized_gegenbauer_all(2.0, 30, -0.45);
  REQUIRE(all.size() == 31);
  for (int n : {0, 1, 7, 30}) {
    CHECK(all[n] == doctest::Approx(normalized_gegenbauer({2.0, n, -0.45})).epsilon(1e-14));
  }
}

TEST_CASE("gegenbauer_theta_derivative") {
  CHECK(gegenbauer_theta_derivative(1.0, 1, kPi / 2) == doctest::Approx(-2.0).epsilon(1e-14));
  for (double lambda : {0.5, 1.0, 3.0}) {
    CHECK(std::abs(gegenbauer_theta_derivative(lambda, 1, 0.0)) < 1e-15);
  }
  for (double theta : {0.3, 1.2, 2.9}) {
    CHECK(gegenbauer_theta_derivative(0.5, 2, theta) ==
          doctest::Approx(-3.0 * std::sin(theta) * std::cos(theta)).epsilon(1e-13));
  }
}

TEST_CASE("normalized theta derivative agrees with a central difference") {
  const double h = 1e-6;
  for (double lambda : {0.0, 0.5, 2.5}) {
    for (int n : {1, 3, 12}) {
      const double theta = 0.8;
      const double fd = (normalized_gegenbauer({lambda, n, std::cos(theta + h)}) -
                         normalized_gegenbauer({lambda, n, std::cos(theta - h)})) /
                        (2 * h);
      CHECK(normalized_gegenbauer_theta_derivative(lambda, n, theta) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}
