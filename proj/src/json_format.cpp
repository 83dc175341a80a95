#include "spherepd/json_format.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace spherepd {

std::string format_double(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

namespace {

void write(const Json& value, int indent, int depth, std::string& out) {
  const auto newline = [&](int level) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * level), ' ');
    }
  };
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) {
          out += ',';
        }
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent >= 0 ? ": " : ":";
        write(item, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) {
          out += ',';
        }
        first = false;
        newline(depth + 1);
        write(item, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = value.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += value.dump();
  }
}

Json float_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  write(value, indent, 0, out);
  return out;
}

Json to_json(const SchoenbergSequence& seq) {
  Json j;
  if (seq.dimension.infinite) {
    j["dimension"] = "inf";
  } else {
    j["dimension"] = seq.dimension.value;
  }
  j["coefficients"] = seq.coefficients;
  j["tail_mass"] = seq.tail_mass;
  return j;
}

SchoenbergSequence sequence_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("dimension") || !json.contains("coefficients")) {
    throw std::invalid_argument("sequence JSON needs 'dimension' and 'coefficients'");
  }
  Dimension dim;
  const Json& d = json.at("dimension");
  if (d.is_string()) {
    dim = Dimension::parse(d.get<std::string>());
  } else if (d.is_number_integer()) {
    dim = Dimension::finite(d.get<int>());
  } else {
    throw std::invalid_argument("sequence JSON: 'dimension' must be an integer or \"inf\"");
  }
  const Json& c = json.at("coefficients");
  if (!c.is_array() || c.empty()) {
    throw std::invalid_argument("sequence JSON: 'coefficients' must be a nonempty array");
  }
  std::vector<double> coefficients;
  for (const auto& x : c) {
    if (!x.is_number()) {
      throw std::invalid_argument("sequence JSON: coefficients must be numbers");
    }
    coefficients.push_back(x.get<double>());
  }
  double tail = 0.0;
  if (json.contains("tail_mass")) {
    if (!json.at("tail_mass").is_number()) {
      throw std::invalid_argument("sequence JSON: 'tail_mass' must be a number");
    }
    tail = json.at("tail_mass").get<double>();
  }
  return SchoenbergSequence::make(dim, std::move(coefficients), tail);
}

Json to_json(const PDCheckReport& report) {
  Json j;
  j["dimension"] = report.dimension;
  j["n_points"] = report.n_points;
  j["seed"] = report.seed;
  j["min_eigenvalue"] = report.min_eigenvalue;
  j["tolerance"] = report.tolerance;
  j["verdict"] = report.verdict();
  return j;
}

Json to_json(const ClassReport& report) {
  Json j;
  j["nonnegative"] = report.nonnegative;
  j["normalized"] = report.normalized;
  j["coefficient_sum"] = report.coefficient_sum;
  j["truncation"] = report.truncation;
  j["positive_even"] = report.positive_even;
  j["positive_odd"] = report.positive_odd;
  j["positive_indices"] = report.positive_indices;
  j["caveat"] = report.caveat;
  return j;
}

Json to_json(const SmoothnessProbe& probe) {
  Json j;
  j["theta0"] = probe.theta0;
  j["max_order"] = probe.max_order;
  j["first_failing_order"] = probe.first_failing_order;
  Json orders = Json::array();
  for (const OrderProbe& o : probe.orders) {
    Json row;
    row["order"] = o.order;
    row["left"] = float_or_null(o.left);
    row["right"] = float_or_null(o.right);
    row["gap"] = float_or_null(o.gap);
    row["noise"] = float_or_null(o.noise);
    row["left_converged"] = o.left_converged;
    row["right_converged"] = o.right_converged;
    row["passed"] = o.passed;
    orders.push_back(row);
  }
  j["orders"] = orders;
  return j;
}

Json to_json(const MonteeCondition& condition) {
  Json j;
  j["dimension"] = condition.dimension.to_string();
  j["series"] = condition.series ? Json(*condition.series) : Json(nullptr);
  j["integral"] = condition.integral ? Json(*condition.integral) : Json(nullptr);
  j["infinite_integral"] =
      condition.infinite_integral ? Json(*condition.infinite_integral) : Json(nullptr);
  j["nonnegative"] = condition.nonnegative;
  j["consistent"] = condition.consistent;
  return j;
}

Json to_json(const JumpReport& report) {
  Json j;
  j["expected_order"] = report.expected_order;
  j["first_failing_order"] = report.first_failing_order;
  j["left"] = float_or_null(report.left);
  j["right"] = float_or_null(report.right);
  j["gap"] = float_or_null(report.gap);
  j["noise"] = float_or_null(report.noise);
  j["detected"] = report.detected;
  j["shift_constant"] = report.shift_constant;
  if (!report.second_differences.empty()) {
    j["second_differences_at_zero"] = report.second_differences;
    j["extrapolated_second_derivative"] = report.extrapolated_second_derivative;
    j["second_derivative_target"] = report.second_derivative_target;
    j["stable_at_zero"] = report.stable_at_zero;
  }
  return j;
}

Json to_json(const AsymptoticProbe& probe) {
  Json j;
  j["kind"] = probe.kind;
  Json params;
  for (const auto& [name, value] : probe.parameters) {
    params[name] = value;
  }
  j["parameters"] = params;
  j["power"] = probe.power;
  j["target"] = probe.target ? Json(*probe.target) : Json(nullptr);
  j["j_grid"] = probe.j_grid;
  Json trajectories = Json::array();
  for (const Trajectory& t : probe.trajectories) {
    Json row;
    row["parity"] = parity_name(t.parity);
    row["values"] = t.values;
    row["ratios"] = t.ratios;
    row["last_decade_drift"] = t.last_decade_drift;
    row["stabilization"] = t.stabilization;
    trajectories.push_back(row);
  }
  j["trajectories"] = trajectories;
  j["parity_agreement"] = probe.parity_agreement;
  return j;
}

}  // namespace spherepd
