#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "cli.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Invocation r;
  r.code = spherepd::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "spherepd_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("sequence of the Poisson kernel") {
  const Invocation r = call({"sequence", "--family", "multiquadric", "--tau", "1", "--delta", "0.3", "--dim", "1",
                             "--n", "32"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "sequence");
  CHECK(doc.contains("params"));
  CHECK(doc.contains("diagnostics"));
  CHECK(doc.contains("version"));
  const auto& b = doc["result"]["sequence"]["coefficients"];
  REQUIRE(b.size() == 33);
  CHECK(b[0].get<double>() == doctest::Approx(7.0 / 13.0).epsilon(1e-12));
  for (int n = 1; n <= 32; ++n) {
    CHECK(std::abs(b[n].get<double>() - 2 * std::pow(0.3, n) * 0.7 / 1.3) < 1e-12);
  }
}

TEST_CASE("descente of the multiquadric on a 100-point grid") {
  const Invocation r = call({"descente", "--family", "multiquadric", "--tau", "2", "--delta", "0.5", "--grid", "100"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& theta = doc["result"]["theta"];
  const auto& value = doc["result"]["value"];
  REQUIRE(theta.size() == 100);
  CHECK(theta[99].get<double>() == kPi);
  double worst = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double t = theta[i].get<double>();
    const double expected = std::pow(0.5, 6) / std::pow(1.25 - std::cos(t), 3);
    worst = std::max(worst, std::abs(value[i].get<double>() - expected));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("montee of cos on S^3 is rejected") {
  const Invocation r = call({"montee", "--family", "custom-cos", "--dim", "3"});
  CHECK(r.code == 2);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["result"]["admitted"] == false);
  CHECK(doc["result"]["reason"] == "c(d) negative: -0.25");
  CHECK(r.err.find("c(d) negative: -0.25") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args = {"check-pd", "--family", "wendland-c2", "--tau", "4", "--c", "1.2",
                                         "--dim", "3", "--seed", "5"};
  const Invocation a = call(args);
  const Invocation b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Invocation csv1 = call({"eval", "--family", "raised-cosine", "--format", "csv"});
  const Invocation csv2 = call({"eval", "--family", "raised-cosine", "--format", "csv"});
  CHECK(csv1.out == csv2.out);
  CHECK(csv1.out.rfind("theta,value\n0,1\n", 0) == 0);
}

TEST_CASE("default grid has 200 points") {
  const auto doc = nlohmann::json::parse(call({"eval", "--family", "constant"}).out);
  CHECK(doc["result"]["theta"].size() == 200);
  CHECK(doc["params"]["grid"] == 200);
}

TEST_CASE("seed default and environment variable") {
  auto seed_of = [](const Invocation& r) { return nlohmann::json::parse(r.out)["result"]["seed"].get<int>(); };
  const std::vector<std::string> args = {"check-pd", "--family", "constant", "--dim", "2", "--n", "5"};
  ::unsetenv(spherepd::cli::kSeedVariable);
  CHECK(seed_of(call(args)) == 1);
  ::setenv(spherepd::cli::kSeedVariable, "9", 1);
  CHECK(seed_of(call(args)) == 9);
  std::vector<std::string> explicit_seed = args;
  explicit_seed.insert(explicit_seed.end(), {"--seed", "4"});
  CHECK(seed_of(call(explicit_seed)) == 4);
  ::unsetenv(spherepd::cli::kSeedVariable);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(call({}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({"eval", "--family", "constant", "--bogus", "1"}).code == 1);
  CHECK(call({"eval", "--family", "nope"}).code == 1);
  CHECK(call({"eval", "--family", "multiquadric", "--tau", "1"}).code == 1);
  CHECK(call({"eval", "--family", "constant", "--tau", "1"}).code == 1);
  CHECK(call({"eval", "--family", "constant", "--format", "xml"}).code == 1);
  CHECK(call({"sequence", "--family", "constant"}).code == 1);
  CHECK(call({"montee", "--family", "constant", "--dim", "2"}).code == 1);
  CHECK(call({"verify", "no-such-suite"}).code == 1);
  CHECK(call({"eval", "--family", "constant", "--grid", "1"}).code == 1);
}

TEST_CASE("help exits with 0") {
  const Invocation r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check-pd") != std::string::npos);
}

TEST_CASE("curve input") {
  std::ostringstream text;
  text << "theta,value\n";
  for (int i = 0; i <= 200; ++i) {
    const double t = kPi * i / 200;
    text.precision(17);
    text << t << "," << (1 + std::cos(t)) / 2 << "\n";
  }
  const auto good = scratch("raised.csv");
  write_file(good, text.str());
  const Invocation r = call({"sequence", "--curve", good.string(), "--dim", "3", "--n", "4"});
  REQUIRE(r.code == 0);
  const auto b = nlohmann::json::parse(r.out)["result"]["sequence"]["coefficients"];
  CHECK(b[0].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(b[1].get<double>() == doctest::Approx(0.5).epsilon(1e-6));

  const auto unsorted = scratch("unsorted.csv");
  write_file(unsorted, "theta,value\n0,1\n1,0.5\n0.5,0.7\n2,0.1\n3.141592653589793,0\n");
  CHECK(call({"eval", "--curve", unsorted.string()}).code == 1);

  const auto no_header = scratch("no_header.csv");
  write_file(no_header, "0,1\n1,0.5\n2,0.1\n3.141592653589793,0\n");
  CHECK(call({"eval", "--curve", no_header.string()}).code == 1);

  const auto short_range = scratch("short.csv");
  write_file(short_range, "theta,value\n0,1\n1,0.5\n2,0.1\n3,0\n");
  CHECK(call({"eval", "--curve", short_range.string()}).code == 1);

  CHECK(call({"eval", "--curve", scratch("missing.csv").string()}).code == 1);
}

TEST_CASE("sequence input and --out") {
  const auto seq = scratch("seq.json");
  write_file(seq, R"({"dimension": 2, "coefficients": [0.2, 0.3, 0.5]})");
  const auto target = scratch("bands.json");
  const Invocation r = call({"turning-bands", "--sequence", seq.string(), "--direction", "up", "--out",
                             target.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(target);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["result"]["max_abs_difference"].get<double>() < 1e-8);
  CHECK(doc["result"]["target_dimension"] == 4);

  const Invocation circle = call({"to-one-dim", "--sequence", seq.string(), "--format", "csv"});
  REQUIRE(circle.code == 0);
  CHECK(circle.out.rfind("n,coefficient\n", 0) == 0);

  const auto broken = scratch("broken.json");
  write_file(broken, "{\"dimension\": 2");
  CHECK(call({"eval", "--sequence", broken.string()}).code == 1);
}

TEST_CASE("probe and verify") {
  const Invocation probe = call({"probe-smoothness", "--family", "truncated-linear", "--c", "1", "--theta0", "1",
                                 "--max-order", "2"});
  REQUIRE(probe.code == 0);
  CHECK(nlohmann::json::parse(probe.out)["result"]["first_failing_order"] == 1);

  const Invocation ok = call({"verify", "lemma3.2"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["result"]["passed"] == true);
}

TEST_CASE("descente rejection of the constant") {
  const Invocation r = call({"descente", "--family", "constant"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.out)["result"]["reason"].get<std::string>().rfind("flat at zero", 0) == 0);
}
