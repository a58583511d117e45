#pragma once

// Directed multigraph model with a source, a destination and a horizon, plus
// the walk and cycle machinery the decomposition algorithms require.

#include "dynflow/rational.hpp"
#include "dynflow/travel_model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dynflow {

using NodeId = std::string;
using EdgeId = std::string;

struct EdgeDef {
  EdgeId id;
  NodeId tail;
  NodeId head;
  TravelTimeModel model;
};

struct DynNetwork {
  std::vector<NodeId> nodes;
  std::vector<EdgeDef> edges;
  NodeId source;
  NodeId destination;
  Rational horizon;

  const EdgeDef& edge(const EdgeId& id) const;
  bool has_node(const NodeId& id) const;
  // Outgoing edges of a node, sorted by edge id (the deterministic branching
  // order used everywhere).
  std::vector<const EdgeDef*> out_edges(const NodeId& v) const;
  std::vector<const EdgeDef*> in_edges(const NodeId& v) const;

  // Checks edge endpoints, distinct edge ids, source != destination, and that
  // every node is connected to the source (underlying undirected graph).
  // Throws std::invalid_argument with a description on violation.
  void validate() const;
};

// A nonempty head-to-tail incident edge sequence.
struct Walk {
  std::vector<EdgeId> edges;
  bool operator==(const Walk&) const = default;
  auto operator<=>(const Walk&) const = default;
};

// A closed walk visiting no node twice except the start; stored in canonical
// rotation (lexicographically smallest edge id first) so map keys are
// well-defined.
struct SimpleCycle {
  std::vector<EdgeId> edges;

  static SimpleCycle canonical(std::vector<EdgeId> edges);

  bool operator==(const SimpleCycle&) const = default;
  auto operator<=>(const SimpleCycle&) const = default;
};

struct WalkViolation {
  std::size_t index;  // position of the offending edge (or 0 for empty walks)
  std::string message;
};

// Confirms the incidence chain; when as_sd_walk is set additionally checks
// first tail == source and last head == destination. nullopt means ok.
std::optional<WalkViolation> validate_walk(const DynNetwork& net, const Walk& w,
                                           bool as_sd_walk = false);

// All s,d-walks whose summed per-edge lower bounds are <= budget, emitted in
// non-decreasing edge-count order with lexicographic tie-break on the edge-id
// sequence. Stops early when visit returns false. When any usable lower bound
// is zero a length cap is required (the stream would be infinite otherwise).
void for_each_sd_walk(const DynNetwork& net, const std::map<EdgeId, Rational>& min_travel,
                      const Rational& budget, std::optional<int> length_cap,
                      const std::function<bool(const Walk&)>& visit);

std::vector<Walk> enumerate_walks(const DynNetwork& net,
                                  const std::map<EdgeId, Rational>& min_travel,
                                  const Rational& budget,
                                  std::optional<int> length_cap = std::nullopt);

// Every elementary directed cycle exactly once, canonicalized, sorted by
// (length, edge sequence).
std::vector<SimpleCycle> enumerate_simple_cycles(const DynNetwork& net);

// Independent brute-force oracle (closed node-simple edge sequences up to
// length |V|); intended for small graphs.
std::vector<SimpleCycle> enumerate_simple_cycles_bruteforce(const DynNetwork& net);

// A closed walk from `start` traversing each cycle's edges with the given
// multiplicity (Hierholzer). Throws if start lies on no cycle or the cycle
// set is not connected through shared nodes.
Walk eulerian_circuit(const DynNetwork& net,
                      const std::vector<std::pair<SimpleCycle, int>>& cycles, const NodeId& start);

}  // namespace dynflow
