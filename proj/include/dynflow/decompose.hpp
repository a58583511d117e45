#pragma once

// Decomposition of dynamic s,d-flows into walk inflows plus zero-travel-time
// circulations: the per-walk maximal subtraction problem (an exact rational
// LP), the full decomposition loop, the flow-carrying-walk finder, zero-cycle
// peeling, active-component analysis, purity checking and purification.

#include "dynflow/balance.hpp"
#include "dynflow/loading.hpp"
#include "dynflow/network.hpp"

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace dynflow {

// ---------------------------------------------------------------------------
// Exact rational linear programming (maximize c^T x s.t. A x <= b, x >= 0)

struct RationalLP {
  std::vector<Rational> objective;            // c
  std::vector<std::vector<Rational>> rows;    // A (dense)
  std::vector<Rational> bounds;               // b
};

struct LpOptimum {
  Rational value;
  std::vector<Rational> assignment;
};
struct LpUnbounded {};
struct LpInfeasible {};
using LpResult = std::variant<LpOptimum, LpUnbounded, LpInfeasible>;

// Primal simplex with Bland's rule; fully deterministic and exact.
LpResult solve_lp(const RationalLP& lp);

// ---------------------------------------------------------------------------
// The per-walk maximal subtraction problem

struct FdkProblem {
  Walk walk;
  EdgeFlowVector residual;        // g^k >= 0, on tt.horizon
  StepFunction source_budget;     // r_s^k >= 0
  TimeMeasure destination_floor;  // nabla_d g^k <= 0 setwise
};

// The maximal inflow h for the walk subject to: h = 0 on plateau preimages of
// the arrival maps (existence of the load), per-edge load <= residual, h <=
// source budget, and destination arrival density <= -floor density. Groups of
// coupled departure cells become one LP each; free cells use the closed form.
StepFunction solve_fdk(const TravelTimes& tt, const DynNetwork& net, const FdkProblem& p);

// Independent oracle: one dense LP over the complete cell arrangement with no
// grouping or closed-form shortcuts. Intended for cross-checking.
StepFunction solve_fdk_dense(const TravelTimes& tt, const DynNetwork& net, const FdkProblem& p);

// ---------------------------------------------------------------------------
// Decomposition

struct Decomposition {
  WalkInflowMap walk_inflows;
  std::map<SimpleCycle, StepFunction> cycle_inflows;
  // Walks examined during the walk phase (informational; 0 for decompositions
  // assembled by hand or read from a file).
  std::size_t iterations = 0;
};

struct DecomposeConfig {
  // Walks are streamed in edge-count-then-lexicographic order with summed
  // free-flow delays <= budget (default: the end of the flow's support).
  std::optional<Rational> budget;
  std::optional<int> length_cap;  // required when zero-delay edges exist
};

// Sum of all walk loads and cycle inflows of d, per edge, on tt.horizon.
EdgeFlowVector reconstruct(const TravelTimes& tt, const DynNetwork& net, const Decomposition& d);

// Walk phase (maximal subtraction per streamed walk) followed by zero-cycle
// peeling of the residual. Requires validate_sd_flow(g) to pass; throws
// std::runtime_error with a description when the post-walk residual is not a
// zero-travel circulation (invalid input or insufficient budget/cap).
Decomposition decompose(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                        const DecomposeConfig& cfg = {});

// Peels a conserving, zero-travel-supported circulation into simple-cycle
// inflows, cell by cell in the canonical cycle order. Throws on a nonzero
// final residual (precondition violation), naming a witness cell.
std::map<SimpleCycle, StepFunction> zero_cycle_decompose(const TravelTimes& tt,
                                                         const DynNetwork& net,
                                                         const EdgeFlowVector& g_star);

// ---------------------------------------------------------------------------
// Flow-carrying walk

struct FlowCarryingWalk {
  Walk walk;
  StepFunction inflow;      // nonzero, <= r_s, with load <= g
  std::size_t tree_depth;   // levels of the search tree that were expanded
};
struct NoPositiveSourceOutflow {};

// Constructive existence of a flow-carrying s,d-walk: splits the residual
// outflow across outgoing edges level by level until a copy of the
// destination cannot forward everything, then back-propagates the excess
// through the inverse loads.
std::variant<FlowCarryingWalk, NoPositiveSourceOutflow> find_flow_carrying_walk(
    const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g);

// ---------------------------------------------------------------------------
// Purity

struct ActiveComponent {
  std::vector<SimpleCycle> cycles;  // sorted
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::vector<Interval> active;     // positive-measure activity times
};

struct ActiveComponents {
  std::vector<ActiveComponent> components;
};

// Per time cell, the node-sharing connected components of the active cycles
// (cycle inflow positive and all its delays zero), aggregated over cells with
// identical cycle sets.
ActiveComponents active_components(const TravelTimes& tt, const DynNetwork& net,
                                   const std::map<SimpleCycle, StepFunction>& cycle_inflows);

struct PurityWitness {
  ActiveComponent component;
  Interval cell;  // neither the destination condition nor a leaving edge holds
};

struct PurityResult {
  bool pure = true;
  std::vector<PurityWitness> witnesses;
};

// A decomposition is purifiable iff every active component, at almost every
// activity time, either contains the destination while flow is arriving there
// or has a flow-carrying edge leaving it.
PurityResult check_pure(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                        const Decomposition& d);

struct PurifyResult {
  Decomposition decomposition;
  bool pure = true;                      // all cycle inflows were eliminated
  std::vector<PurityWitness> witnesses;  // components that had to be retained
};

// Rewrites the decomposition so that purifiable components' cycle inflows are
// carried by (spliced) walks instead; components with purity witnesses are
// retained unchanged and reported. The aggregate edge flow is preserved
// exactly (asserted).
PurifyResult purify(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                    const Decomposition& d);

}  // namespace dynflow
