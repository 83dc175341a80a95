#pragma once

#include <json.hpp>
#include <string>

#include "spherepd/asymptotics.hpp"
#include "spherepd/operators.hpp"
#include "spherepd/schoenberg.hpp"
#include "spherepd/validation.hpp"

namespace spherepd {

using Json = nlohmann::ordered_json;

/// Shortest text of a double with 17 significant digits ("%.17g").
std::string format_double(double x);

/// Serializes with floats at 17 significant digits; non-finite floats
/// become null. Key order is insertion order.
std::string dump_json(const Json& value, int indent = 2);

/// {dimension: int or "inf", coefficients: [...], tail_mass: x}
Json to_json(const SchoenbergSequence& seq);
/// Inverse of to_json; throws std::invalid_argument on malformed input.
SchoenbergSequence sequence_from_json(const Json& json);

Json to_json(const PDCheckReport& report);
Json to_json(const ClassReport& report);
Json to_json(const SmoothnessProbe& probe);
Json to_json(const MonteeCondition& condition);
Json to_json(const JumpReport& report);
Json to_json(const AsymptoticProbe& probe);

}  // namespace spherepd
