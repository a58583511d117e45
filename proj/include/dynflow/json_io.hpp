#pragma once

// JSON (de)serialization of every file format the command-line tool speaks:
// networks, step functions, piecewise-linear maps, edge flows, walk inflows,
// decompositions, travel times and purity reports. Rationals are strings
// ("p/q" or "p"), never floats, so exactness survives serialization.

#include "dynflow/decompose.hpp"

// The vendored single header defines everything in nlohmann; the ordered
// type keeps object key order (and thus output bytes) deterministic.
#include "json.hpp"

#include <string>

namespace dynflow {

using Json = nlohmann::ordered_json;

// Throws std::invalid_argument with a path-like description on malformed
// input (missing keys, wrong types, invalid rationals, shape violations).
Rational json_to_rational(const Json& j);
StepFunction json_to_step(const Json& j);
PiecewiseLinear json_to_pwl(const Json& j);
TravelTimeModel json_to_model(const Json& j);
DynNetwork json_to_network(const Json& j);  // also runs net.validate()
EdgeFlowVector json_to_edge_flows(const Json& j, const DynNetwork& net);
WalkInflowMap json_to_walk_inflows(const Json& j, const DynNetwork& net);
Decomposition json_to_decomposition(const Json& j, const DynNetwork& net);

Json rational_to_json(const Rational& r);
Json step_to_json(const StepFunction& f);
Json pwl_to_json(const PiecewiseLinear& f);
Json edge_flows_to_json(const EdgeFlowVector& g);
Json travel_times_to_json(const TravelTimes& tt);
Json decomposition_to_json(const Decomposition& d);
Json purity_to_json(const std::vector<PurityWitness>& witnesses);

}  // namespace dynflow
