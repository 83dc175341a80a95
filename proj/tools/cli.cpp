#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <boost/math/interpolators/makima.hpp>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "spherepd/json_format.hpp"
#include "spherepd/model.hpp"
#include "spherepd/operators.hpp"
#include "spherepd/schoenberg.hpp"
#include "spherepd/validation.hpp"
#include "spherepd/verification.hpp"

namespace spherepd::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rejection {
  std::string reason;
  Json diagnostics;
};

struct Options {
  std::optional<std::string> family;
  std::optional<double> tau;
  std::optional<double> delta;
  std::optional<double> c;
  std::optional<std::string> curve;
  std::optional<std::string> sequence;
  std::optional<std::string> dim;
  std::optional<int> n;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> theta0;
  std::optional<int> max_order;
  std::optional<std::string> direction;
  std::optional<std::string> suite;
  std::string format = "json";
  std::optional<std::string> out;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  Json result;
  Json diagnostics = Json::object();
  Table table;
  int exit_code = kExitOk;
};

// --- inputs -------------------------------------------------------------------

struct FamilyInfo {
  const char* name;
  bool tau;
  bool delta;
  bool c;
};

constexpr FamilyInfo kFamilies[] = {
    {"multiquadric", true, true, false},     {"wendland-c2", true, false, true},
    {"wendland-c4", true, false, true},      {"gaspari-cohn-lift", false, false, true},
    {"gaspari-cohn-restrict", false, false, true}, {"truncated-linear", false, false, true},
    {"custom-cos", false, false, false},     {"raised-cosine", false, false, false},
    {"constant", false, false, false},
};

std::vector<std::string> family_names() {
  std::vector<std::string> names;
  for (const FamilyInfo& f : kFamilies) {
    names.emplace_back(f.name);
  }
  return names;
}

IsotropicFunction make_family(const Options& o) {
  const std::string& name = *o.family;
  const auto info = std::find_if(std::begin(kFamilies), std::end(kFamilies),
                                 [&](const FamilyInfo& f) { return name == f.name; });
  const auto param = [&](const std::optional<double>& value, bool wanted, const char* flag) {
    if (wanted && !value) {
      throw UsageError("--family " + name + " needs " + flag);
    }
    if (!wanted && value) {
      throw UsageError(std::string(flag) + " does not apply to --family " + name);
    }
    return value.value_or(0.0);
  };
  const double tau = param(o.tau, info->tau, "--tau");
  const double delta = param(o.delta, info->delta, "--delta");
  const double c = param(o.c, info->c, "--c");
  if (name == "multiquadric") {
    return make_multiquadric(tau, delta);
  }
  if (name == "wendland-c2") {
    return make_wendland(WendlandKind::C2, tau, c);
  }
  if (name == "wendland-c4") {
    return make_wendland(WendlandKind::C4, tau, c);
  }
  if (name == "gaspari-cohn-lift") {
    return yadrenko_lift(make_gaspari_cohn(c));
  }
  if (name == "gaspari-cohn-restrict") {
    return restrict_to_sphere(make_gaspari_cohn(c));
  }
  if (name == "truncated-linear") {
    return make_truncated_linear(c);
  }
  if (name == "custom-cos") {
    return make_cosine();
  }
  if (name == "raised-cosine") {
    return make_raised_cosine();
  }
  return make_constant();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

double parse_number(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(value)) {
    throw UsageError(where + ": not a finite number: '" + t + "'");
  }
  return value;
}

// Sampled curve with header "theta,value", theta strictly increasing from 0
// to pi. Interpolated by a modified Akima cubic with zero slope at both
// endpoints, as an even function of theta requires.
IsotropicFunction load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open curve file " + path);
  }
  std::string line;
  if (!std::getline(in, line) || trim(line) != "theta,value") {
    throw UsageError(path + ": first line must be the header 'theta,value'");
  }
  std::vector<double> x;
  std::vector<double> y;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_number) + ": expected two fields");
    }
    const std::string where = path + ":" + std::to_string(line_number);
    x.push_back(parse_number(line.substr(0, comma), where));
    y.push_back(parse_number(line.substr(comma + 1), where));
    if (x.size() > 1 && !(x.back() > x[x.size() - 2])) {
      throw UsageError(where + ": theta must be strictly increasing");
    }
  }
  if (x.size() < 4) {
    throw UsageError(path + ": at least 4 samples required");
  }
  if (std::abs(x.front()) > 1e-12 || std::abs(x.back() - kPi) > 1e-9) {
    throw UsageError(path + ": samples must cover [0, pi]");
  }
  x.front() = 0.0;
  x.back() = kPi;
  const std::vector<double> breaks(x.begin() + 1, x.end() - 1);
  using Spline = boost::math::interpolators::makima<std::vector<double>>;
  auto spline = std::make_shared<Spline>(std::move(x), std::move(y), 0.0, 0.0);
  return IsotropicFunction([spline](double t) { return (*spline)(std::clamp(t, 0.0, kPi)); },
                           "curve(" + path + ")")
      .with_derivative([spline](double t) { return spline->prime(std::clamp(t, 0.0, kPi)); })
      .with_breakpoints(breaks);
}

SchoenbergSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open sequence file " + path);
  }
  Json json;
  try {
    json = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": invalid JSON: " + e.what());
  }
  try {
    return sequence_from_json(json);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int source_count(const Options& o) {
  return (o.family ? 1 : 0) + (o.curve ? 1 : 0) + (o.sequence ? 1 : 0);
}

void require_one_source(const Options& o, bool sequence_allowed) {
  if (source_count(o) != 1) {
    throw UsageError(sequence_allowed ? "give exactly one of --family, --curve, --sequence"
                                      : "give exactly one of --family, --curve");
  }
  if (!o.family && (o.tau || o.delta || o.c)) {
    throw UsageError("--tau, --delta and --c only apply with --family");
  }
}

IsotropicFunction function_source(const Options& o) {
  if (o.family) {
    return make_family(o);
  }
  if (o.curve) {
    return load_curve(*o.curve);
  }
  return as_function(load_sequence(*o.sequence));
}

Dimension parse_dimension(const std::string& text) {
  try {
    return Dimension::parse(text);
  } catch (const std::exception&) {
    throw UsageError("--dim must be a positive integer or 'inf', got '" + text + "'");
  }
}

int finite_dimension(const Options& o) {
  const Dimension d = parse_dimension(*o.dim);
  if (d.infinite) {
    throw UsageError("--dim inf is not supported here");
  }
  return d.value;
}

// The sequence of a function source in the requested dimension. The infinite
// case needs a closed form and is available for the multiquadric only.
SchoenbergSequence analyzed_sequence(Options& o, const IsotropicFunction& psi, int default_n) {
  const Dimension d = parse_dimension(*o.dim);
  if (d.infinite) {
    if (!o.family || *o.family != "multiquadric") {
      throw UsageError("--dim inf is available for --family multiquadric only");
    }
    if (o.n) {
      throw UsageError("--n does not apply with --dim inf (the series is truncated at mass 1e-16)");
    }
    return multiquadric_infinite_sequence(*o.tau, *o.delta);
  }
  if (!o.n) {
    o.n = default_n;
  }
  if (*o.n < 0) {
    throw UsageError("--n must be >= 0");
  }
  return analyze(psi, d.value, *o.n);
}

SchoenbergSequence sequence_source(Options& o, int default_n) {
  if (o.sequence) {
    if (o.dim || o.n) {
      throw UsageError("--dim and --n do not apply with --sequence");
    }
    return load_sequence(*o.sequence);
  }
  if (!o.dim) {
    throw UsageError("--dim is required to expand a function");
  }
  return analyzed_sequence(o, function_source(o), default_n);
}

std::vector<double> theta_grid(Options& o) {
  if (!o.grid) {
    o.grid = 200;
  }
  if (*o.grid < 2) {
    throw UsageError("--grid must be >= 2");
  }
  const int m = *o.grid;
  std::vector<double> grid(m);
  for (int i = 0; i < m; ++i) {
    grid[i] = kPi * i / (m - 1);
  }
  grid.back() = kPi;
  return grid;
}

// --- output helpers -------------------------------------------------------------

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string quoted = "\"";
  for (char ch : s) {
    quoted += ch;
    if (ch == '"') {
      quoted += '"';
    }
  }
  return quoted + "\"";
}

Json diagnostics_json(const OperatorReport& report, const std::string& prefix = "") {
  Json j = Json::object();
  for (const auto& [name, value] : report.diagnostics) {
    j[prefix + name] = value;
  }
  return j;
}

void merge(Json& into, const Json& from) {
  for (const auto& [key, value] : from.items()) {
    into[key] = value;
  }
}

template <class F>
Output curve_output(const std::vector<double>& grid, F&& f) {
  Output out;
  std::vector<double> values;
  values.reserve(grid.size());
  out.table.header = {"theta", "value"};
  for (double t : grid) {
    values.push_back(f(t));
    out.table.rows.push_back({format_double(t), format_double(values.back())});
  }
  out.result["theta"] = grid;
  out.result["value"] = values;
  return out;
}

Table sequence_table(const SchoenbergSequence& seq) {
  Table t;
  t.header = {"n", "coefficient"};
  for (std::size_t i = 0; i < seq.coefficients.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_double(seq.coefficients[i])});
  }
  return t;
}

void throw_if_rejected(const OperatorReport& report, const Json& diagnostics) {
  if (!report.admitted()) {
    throw Rejection{report.admissibility.reason, diagnostics};
  }
}

OperatorReport sequence_operator(const SchoenbergSequence& seq, bool montee) {
  try {
    return montee ? montee_sequence(seq) : descente_sequence(seq);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// --- subcommands ------------------------------------------------------------------

Output cmd_eval(Options& o) {
  require_one_source(o, true);
  const IsotropicFunction psi = function_source(o);
  Output out = curve_output(theta_grid(o), psi);
  Json result;
  result["label"] = psi.label();
  merge(result, out.result);
  out.result = result;
  return out;
}

Output cmd_sequence(Options& o) {
  require_one_source(o, false);
  if (!o.dim) {
    throw UsageError("--dim is required");
  }
  const SchoenbergSequence seq = analyzed_sequence(o, function_source(o), 32);
  Output out;
  out.result["sequence"] = to_json(seq);
  out.result["class"] = to_json(class_report(seq));
  out.table = sequence_table(seq);
  return out;
}

// Montee or descente. With a sequence (given, or expanded from the function
// with --dim) the sequence form decides admissibility; the curve comes from
// the function form whenever a function is available.
Output cmd_operator(Options& o, bool montee) {
  require_one_source(o, true);
  const std::vector<double> grid = theta_grid(o);
  std::optional<OperatorReport> seq_report;
  Json diagnostics = Json::object();
  if (o.sequence || o.dim) {
    seq_report = sequence_operator(sequence_source(o, 64), montee);
    diagnostics = diagnostics_json(*seq_report, o.sequence ? "" : "sequence ");
    throw_if_rejected(*seq_report, diagnostics);
  }
  Output out;
  if (o.sequence) {
    const SchoenbergSequence& result = *seq_report->result_sequence;
    out = curve_output(grid, [&](double t) { return synthesize(result, t); });
    out.result["normalizer"] = seq_report->normalizer;
  } else {
    const IsotropicFunction psi = function_source(o);
    const OperatorReport report = montee ? montee_numeric(psi) : descente_numeric(psi);
    merge(diagnostics, diagnostics_json(report));
    throw_if_rejected(report, diagnostics);
    out = curve_output(grid, *report.result_function);
    out.result["normalizer"] = report.normalizer;
  }
  if (seq_report) {
    out.result["sequence"] = to_json(*seq_report->result_sequence);
  }
  out.diagnostics = diagnostics;
  return out;
}

Output cmd_turning_bands(Options& o) {
  require_one_source(o, true);
  if (!o.direction) {
    throw UsageError("--direction up|down is required");
  }
  const SchoenbergSequence seq = sequence_source(o, 32);
  if (seq.dimension.infinite) {
    throw UsageError("turning bands needs a finite dimension");
  }
  const std::vector<double> grid = theta_grid(o);
  const bool up = *o.direction == "up";
  SchoenbergSequence lifted = shift(seq, -1);
  lifted.dimension = Dimension::finite(seq.dimension.value + 2);

  Output out;
  out.table.header = {"theta", "direct", "identity"};
  std::vector<double> direct;
  std::vector<double> identity;
  double worst = 0.0;
  for (double t : grid) {
    direct.push_back(synthesize(up ? lifted : seq, t));
    identity.push_back(up ? turning_bands_up(seq, t) : turning_bands_down(seq, t));
    worst = std::max(worst, std::abs(direct.back() - identity.back()));
    out.table.rows.push_back({format_double(t), format_double(direct.back()), format_double(identity.back())});
  }
  out.result["direction"] = *o.direction;
  out.result["dimension"] = seq.dimension.value;
  out.result["target_dimension"] = up ? seq.dimension.value + 2 : seq.dimension.value;
  out.result["theta"] = grid;
  out.result["direct"] = direct;
  out.result["identity"] = identity;
  out.result["max_abs_difference"] = worst;
  if (up) {
    out.result["lifted_sequence"] = to_json(lifted);
  }
  return out;
}

Output cmd_to_one_dim(Options& o) {
  require_one_source(o, true);
  const SchoenbergSequence seq = sequence_source(o, 64);
  if (!seq.dimension.infinite && seq.dimension.value < 2) {
    throw UsageError("to-one-dim needs a dimension >= 2 or inf");
  }
  const SchoenbergSequence circle = to_one_dim(seq);
  Output out;
  out.result["input"] = to_json(seq);
  out.result["sequence"] = to_json(circle);
  out.table = sequence_table(circle);
  return out;
}

Output cmd_check_pd(Options& o) {
  require_one_source(o, true);
  if (!o.dim) {
    throw UsageError("--dim is required");
  }
  const int d = finite_dimension(o);
  if (!o.n) {
    o.n = 60;
  }
  if (*o.n < 1) {
    throw UsageError("--n must be >= 1");
  }
  if (!o.seed) {
    o.seed = 1;
  }
  const PDCheckReport report = pd_check(function_source(o), d, *o.n, *o.seed);
  Output out;
  out.result = to_json(report);
  out.table.header = {"key", "value"};
  for (const auto& [key, value] : out.result.items()) {
    out.table.rows.push_back(
        {key, value.is_number_float() ? format_double(value.get<double>())
                                      : (value.is_string() ? value.get<std::string>() : value.dump())});
  }
  return out;
}

Output cmd_probe(Options& o) {
  require_one_source(o, true);
  if (!o.theta0) {
    throw UsageError("--theta0 is required");
  }
  if (!o.max_order) {
    o.max_order = 5;
  }
  const SmoothnessProbe probe = differentiability_probe(function_source(o), *o.theta0, *o.max_order);
  Output out;
  out.result = to_json(probe);
  out.table.header = {"order", "left", "right", "gap", "noise", "left_converged", "right_converged", "passed"};
  const auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  for (const OrderProbe& p : probe.orders) {
    out.table.rows.push_back({std::to_string(p.order), format_double(p.left), format_double(p.right),
                              format_double(p.gap), format_double(p.noise), flag(p.left_converged),
                              flag(p.right_converged), flag(p.passed)});
  }
  return out;
}

Output cmd_verify(Options& o, std::ostream& err) {
  std::vector<std::string> names;
  if (*o.suite == "all") {
    names = suite_names();
  } else {
    names = {*o.suite};
  }
  Output out;
  out.table.header = {"suite", "check", "passed", "detail"};
  Json suites = Json::array();
  std::vector<std::string> failed;
  for (const std::string& name : names) {
    const SuiteResult suite = run_suite(name);
    Json checks = Json::array();
    for (const CheckResult& check : suite.checks) {
      Json row;
      row["name"] = check.name;
      row["passed"] = check.passed;
      row["detail"] = check.detail;
      checks.push_back(row);
      out.table.rows.push_back(
          {suite.suite, csv_text(check.name), check.passed ? "true" : "false", csv_text(check.detail)});
    }
    Json entry;
    entry["suite"] = suite.suite;
    entry["passed"] = suite.passed();
    entry["checks"] = checks;
    suites.push_back(entry);
    if (!suite.passed()) {
      failed.push_back(name);
    }
  }
  out.result["suites"] = suites;
  out.result["passed"] = failed.empty();
  if (!failed.empty()) {
    std::string list;
    for (const std::string& name : failed) {
      list += (list.empty() ? "" : ", ") + name;
    }
    err << "verification failed: " << list << "\n";
    out.exit_code = kExitVerifyFailed;
  }
  return out;
}

// --- plumbing ---------------------------------------------------------------------

Json params_json(const Options& o) {
  Json p = Json::object();
  const auto put = [&](const char* key, const auto& value) {
    if (value) {
      p[key] = *value;
    }
  };
  put("family", o.family);
  put("tau", o.tau);
  put("delta", o.delta);
  put("c", o.c);
  put("curve", o.curve);
  put("sequence", o.sequence);
  put("dim", o.dim);
  put("n", o.n);
  put("grid", o.grid);
  put("seed", o.seed);
  put("theta0", o.theta0);
  put("max_order", o.max_order);
  put("direction", o.direction);
  put("suite", o.suite);
  p["format"] = o.format;
  return p;
}

std::string render(const Options& o, const std::string& command, const Output& output) {
  if (o.format == "csv") {
    std::string text;
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        text += (i ? "," : "") + cells[i];
      }
      text += '\n';
    };
    line(output.table.header);
    for (const auto& row : output.table.rows) {
      line(row);
    }
    return text;
  }
  Json doc;
  doc["command"] = command;
  doc["params"] = params_json(o);
  doc["result"] = output.result;
  doc["diagnostics"] = output.diagnostics;
  doc["version"] = SPHEREPD_VERSION;
  return dump_json(doc) + "\n";
}

Output rejection_output(const Rejection& r) {
  Output out;
  out.result["admitted"] = false;
  out.result["reason"] = r.reason;
  out.diagnostics = r.diagnostics;
  out.table.header = {"admitted", "reason"};
  out.table.rows.push_back({"false", csv_text(r.reason)});
  out.exit_code = kExitRejected;
  return out;
}

void add_source_options(CLI::App* sub, Options& o, bool sequence_allowed) {
  sub->add_option("--family", o.family, "Named family")->check(CLI::IsMember(family_names()));
  sub->add_option("--tau", o.tau, "Family shape parameter");
  sub->add_option("--delta", o.delta, "Multiquadric parameter in (0, 1)");
  sub->add_option("--c", o.c, "Support radius or scale");
  sub->add_option("--curve", o.curve, "CSV file with header theta,value");
  if (sequence_allowed) {
    sub->add_option("--sequence", o.sequence, "JSON file {dimension, coefficients, tail_mass}");
  }
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "Write the output to this file instead of stdout");
}

void add_grid_option(CLI::App* sub, Options& o) {
  sub->add_option("--grid", o.grid, "Number of uniform points on [0, pi], inclusive (default 200)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive definite functions on spheres: expansions, operators and checks", "spherepd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SPHEREPD_VERSION);
  Options o;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a function or a synthesized sequence on a grid");
  add_source_options(eval, o, true);
  add_grid_option(eval, o);

  CLI::App* sequence = app.add_subcommand("sequence", "Expand a function into d-Schoenberg coefficients");
  add_source_options(sequence, o, false);
  sequence->add_option("--dim", o.dim, "Sphere dimension (integer or inf)");
  sequence->add_option("--n", o.n, "Truncation degree (default 32)");

  CLI::App* montee = app.add_subcommand("montee", "Apply the montee");
  CLI::App* descente = app.add_subcommand("descente", "Apply the descente");
  for (CLI::App* sub : {montee, descente}) {
    add_source_options(sub, o, true);
    sub->add_option("--dim", o.dim, "Decide admissibility on the sequence in this dimension");
    sub->add_option("--n", o.n, "Truncation degree of that sequence (default 64)");
    add_grid_option(sub, o);
  }

  CLI::App* bands = app.add_subcommand("turning-bands", "Check a turning-bands identity on a grid");
  add_source_options(bands, o, true);
  bands->add_option("--dim", o.dim, "Dimension of the expansion of a function source");
  bands->add_option("--n", o.n, "Truncation degree of that expansion (default 32)");
  bands->add_option("--direction", o.direction, "up: d to d+2, down: d from d+2")
      ->check(CLI::IsMember({"up", "down"}));
  add_grid_option(bands, o);

  CLI::App* circle = app.add_subcommand("to-one-dim", "Convert a d-Schoenberg sequence to the circle");
  add_source_options(circle, o, true);
  circle->add_option("--dim", o.dim, "Dimension of the expansion of a function source");
  circle->add_option("--n", o.n, "Truncation degree of that expansion (default 64)");

  CLI::App* pd = app.add_subcommand("check-pd", "Gram-matrix test on random points of S^d");
  add_source_options(pd, o, true);
  pd->add_option("--dim", o.dim, "Sphere dimension");
  pd->add_option("--n", o.n, "Number of points (default 60)");
  pd->add_option("--seed", o.seed, "Sampling seed (default 1)")->envname(kSeedVariable);

  CLI::App* probe = app.add_subcommand("probe-smoothness", "One-sided derivative comparison at a point");
  add_source_options(probe, o, true);
  probe->add_option("--theta0", o.theta0, "Probe location in (0, pi)");
  probe->add_option("--max-order", o.max_order, "Highest order, 1..5 (default 5)")->check(CLI::Range(1, 5));

  CLI::App* verify = app.add_subcommand("verify", "Run a named verification suite, or all");
  std::vector<std::string> suites = suite_names();
  suites.emplace_back("all");
  verify->add_option("suite", o.suite, "Suite name")->required()->check(CLI::IsMember(suites));

  for (CLI::App* sub : app.get_subcommands({})) {
    add_output_options(sub, o);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  Output output;
  try {
    try {
      if (chosen == eval) {
        output = cmd_eval(o);
      } else if (chosen == sequence) {
        output = cmd_sequence(o);
      } else if (chosen == montee) {
        output = cmd_operator(o, true);
      } else if (chosen == descente) {
        output = cmd_operator(o, false);
      } else if (chosen == bands) {
        output = cmd_turning_bands(o);
      } else if (chosen == circle) {
        output = cmd_to_one_dim(o);
      } else if (chosen == pd) {
        output = cmd_check_pd(o);
      } else if (chosen == probe) {
        output = cmd_probe(o);
      } else {
        output = cmd_verify(o, err);
      }
    } catch (const Rejection& r) {
      err << "rejected: " << r.reason << "\n";
      output = rejection_output(r);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text = render(o, command, output);
  if (o.out) {
    std::ofstream file(*o.out, std::ios::binary);
    if (!file || !(file << text)) {
      err << "cannot write " << *o.out << "\n";
      return kExitUsage;
    }
  } else {
    out << text;
  }
  return output.exit_code;
}

}  // namespace spherepd::cli
