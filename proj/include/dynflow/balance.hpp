#pragma once

// Node balances of edge flows under fixed travel times, classification of
// nodes as conserving / net sources / net sinks, validation of s,d-flows and
// circulations, and the exact total-travel-time functional.

#include "dynflow/loading.hpp"
#include "dynflow/network.hpp"
#include "dynflow/time_algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>

namespace dynflow {

// The balance at node v: sum of inflow rates into the outgoing edges minus
// the arrival measure (pushforward through the exit maps) of the incoming
// edges. Positive parts mean flow appears at v, negative parts mean flow is
// absorbed.
TimeMeasure node_balance(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                         const NodeId& v);

struct NodeClassification {
  enum class Kind { Conserving, NetSource, NetSink, NonAbsolutelyContinuous, Mixed };
  Kind kind;
  StepFunction rate;  // r_v >= 0 for NetSource / NetSink (sign dropped); zero otherwise
  std::vector<std::pair<Rational, Rational>> atoms;  // for NonAbsolutelyContinuous
};

struct NodeBalanceReport {
  std::map<NodeId, TimeMeasure> balances;
  std::map<NodeId, NodeClassification> classes;
};

NodeBalanceReport node_balances(const TravelTimes& tt, const DynNetwork& net,
                                const EdgeFlowVector& g);

// A concrete certificate that g is an s,d-flow: nonnegative net outflow rate
// at the source, nonpositive balance at the destination, conservation
// everywhere else.
struct SdFlowCertificate {
  StepFunction r_s;                  // >= 0
  TimeMeasure destination_balance;   // <= 0 setwise
};

// Constructive counterexample: the node, a cell or atom location where the
// balance misbehaves, and the signed discrepancy there.
struct FlowViolation {
  NodeId node;
  Interval where;
  Rational discrepancy;  // measure of `where` under the offending balance part
  std::string message;
};

std::variant<SdFlowCertificate, FlowViolation> validate_sd_flow(const TravelTimes& tt,
                                                                const DynNetwork& net,
                                                                const EdgeFlowVector& g);

// A cell where an edge carries flow despite a positive travel time.
struct ZeroSupportWitness {
  EdgeId edge;
  Interval cell;
};

// Confirms that g lives only where the delay vanishes; nullopt means ok.
std::optional<ZeroSupportWitness> is_zero_supported(const TravelTimes& tt, const DynNetwork& net,
                                                    const EdgeFlowVector& g);

// <D, g> = sum_e \int D_e * g_e. Also evaluated through the node balances
// (sum_v \int -id d nabla_v) and asserted equal; a mismatch throws
// std::logic_error since it can only mean an implementation bug.
Rational total_travel_time(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g);

}  // namespace dynflow
