#pragma once

#include <json.hpp>

#include "ocoswitch/problem_model.hpp"

namespace oco {

using Json = nlohmann::ordered_json;

// Round-trippable instance encoding. External-oracle functions have no
// portable representation and raise unsupported_operation.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json set_to_json(const FeasibleSet& set);
FeasibleSet set_from_json(const Json& j);

}  // namespace oco
