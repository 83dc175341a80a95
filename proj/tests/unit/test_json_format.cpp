#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spherepd/json_format.hpp"

using namespace spherepd;

TEST_CASE("doubles keep 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(format_double(1e23) == "9.9999999999999992e+22");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("dump_json writes non-finite floats as null and keeps key order") {
  Json j;
  j["z"] = 0.1;
  j["a"] = std::numeric_limits<double>::infinity();
  j["m"] = 3;
  CHECK(dump_json(j, -1) == R"({"z":0.10000000000000001,"a":null,"m":3})");
  CHECK(dump_json(Json::array(), 2) == "[]");
}

TEST_CASE("sequence JSON round trip") {
  const SchoenbergSequence s = SchoenbergSequence::make(Dimension::finite(4), {0.25, 0.5, 0.25}, 0.0);
  const SchoenbergSequence back = sequence_from_json(Json::parse(dump_json(to_json(s))));
  CHECK(back.dimension == s.dimension);
  CHECK(back.coefficients == s.coefficients);

  const SchoenbergSequence inf = SchoenbergSequence::make(Dimension::inf(), {1.0});
  CHECK(to_json(inf)["dimension"] == "inf");
  CHECK(sequence_from_json(to_json(inf)).dimension.infinite);
}

TEST_CASE("malformed sequence JSON is rejected") {
  CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"coefficients":[1]})")), std::invalid_argument);
  CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"dimension":2,"coefficients":[]})")), std::invalid_argument);
  CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"dimension":2,"coefficients":["x"]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"dimension":2.5,"coefficients":[1]})")),
                  std::invalid_argument);
}

TEST_CASE("report serializations") {
  PDCheckReport pd;
  pd.dimension = 2;
  pd.n_points = 10;
  pd.seed = 3;
  pd.min_eigenvalue = -1.0;
  pd.consistent = false;
  const Json j = to_json(pd);
  CHECK(j["verdict"] == "pd-violated");
  CHECK(j["seed"] == 3);

  SmoothnessProbe probe;
  probe.orders.push_back(OrderProbe{1, 1.0, std::nan(""), 0.0, 0.0, true, false, false});
  const Json p = to_json(probe);
  CHECK(p["orders"][0]["right"].is_null());
  CHECK(dump_json(p, -1).find("\"right\":null") != std::string::npos);
}
