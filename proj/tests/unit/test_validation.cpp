#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spherepd/errors.hpp"
#include "spherepd/validation.hpp"

using namespace spherepd;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sampling is deterministic and lands on the sphere") {
  const auto a = sample_sphere(3, 25, 42);
  const auto b = sample_sphere(3, 25, 42);
  CHECK(a == b);
  CHECK(a != sample_sphere(3, 25, 43));
  for (const auto& x : a) {
    REQUIRE(x.size() == 4);
    double norm = 0.0;
    for (double v : x) {
      norm += v * v;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("gram matrix of the constant is rank one") {
  const auto points = sample_sphere(2, 30, 1);
  const Eigen::MatrixXd g = gram_matrix(make_constant(), points);
  CHECK(g.rows() == 30);
  CHECK(std::abs(min_eigenvalue(g)) < 1e-12);
  CHECK(pd_check(make_constant(), 2, 30, 1).consistent);
}

TEST_CASE("pd check verdicts") {
  const PDCheckReport mq = pd_check(make_multiquadric(1.0, 0.5), 2, 60, 1);
  CHECK(mq.verdict() == "pd-consistent");
  CHECK(mq.tolerance == doctest::Approx(60e-8));
  const IsotropicFunction bad([](double t) { return 1.2 * std::cos(t) - 0.2; }, "1.2cos-0.2");
  CHECK(pd_check(bad, 1, 40, 1).verdict() == "pd-violated");
}

TEST_CASE("class report parity counts") {
  const auto inf = multiquadric_infinite_sequence(1.0, 0.5);
  const ClassReport r = class_report(inf);
  CHECK(r.nonnegative);
  CHECK(r.truncation == inf.max_degree());
  CHECK(r.positive_even == r.truncation / 2 + 1);
  CHECK(r.positive_odd == (r.truncation + 1) / 2);

  const ClassReport cosine = class_report(SchoenbergSequence::make(Dimension::finite(3), {0.0, 1.0}));
  CHECK(cosine.positive_even == 0);
  CHECK(cosine.positive_odd == 1);

  const ClassReport half = class_report(SchoenbergSequence::make(Dimension::finite(3), {0.5, 0.5}));
  CHECK(half.positive_even == 1);
  CHECK(half.positive_odd == 1);
  CHECK(half.normalized);
  CHECK(half.positive_indices == std::vector<int>{0, 1});
}

TEST_CASE("differentiability probe at a kink") {
  const SmoothnessProbe p = differentiability_probe(make_truncated_linear(1.0), 1.0, 3);
  CHECK(p.first_failing_order == 1);
  CHECK_FALSE(p.orders[0].passed);
}

TEST_CASE("differentiability probe at the Wendland C2 cutoff") {
  // (1 + 4s)(1 - s)^4 vanishes to third order at s = 1; the fourth derivative jumps by 4!*(5)/c^4
  const double c = 1.5;
  const SmoothnessProbe p = differentiability_probe(make_wendland(WendlandKind::C2, 4.0, c), c, 5);
  CHECK(p.orders[0].passed);
  CHECK(p.orders[1].passed);
  CHECK(p.orders[2].passed);
  CHECK(p.first_failing_order == 4);
  CHECK(p.orders[3].left == doctest::Approx(120.0 / std::pow(c, 4)).epsilon(1e-3));
}

TEST_CASE("differentiability probe of a smooth function") {
  for (double theta0 : {0.5, 1.5, 2.6}) {
    const SmoothnessProbe p = differentiability_probe(make_multiquadric(2.0, 0.5), theta0, 5);
    CHECK(p.first_failing_order == 0);
  }
}

TEST_CASE("differentiability probe rejects endpoints") {
  CHECK_THROWS(differentiability_probe(make_cosine(), 0.0, 2));
  CHECK_THROWS(differentiability_probe(make_cosine(), kPi, 2));
}
