#pragma once

// Travel-time computation from edge flows, forward network loading of walk
// inflows, and the parameterized loading operator (walk inflow -> edge flows
// under travel times frozen at a fixed edge flow u) with its existence check
// and inverse.

#include "dynflow/network.hpp"
#include "dynflow/time_algebra.hpp"

#include <map>
#include <variant>

namespace dynflow {

// Travel times induced by a fixed edge flow, on the extended horizon: the
// horizon is enlarged so every exit-time map sends [0, t_f] into [0, t_f]
// (delays taper to 0 at slope -1 beyond the flow support).
struct TravelTimes {
  Rational horizon;
  std::map<EdgeId, PiecewiseLinear> delay;  // D_e on [0, horizon], >= 0
  std::map<EdgeId, MonotoneMap> exit;       // T_e = id + D_e

  const PiecewiseLinear& delay_of(const EdgeId& e) const;
  const MonotoneMap& exit_of(const EdgeId& e) const;
};

// Nonnegative edge flow rates, all on a common horizon.
using EdgeFlowVector = std::map<EdgeId, StepFunction>;

// Finite-support walk inflow rates.
using WalkInflowMap = std::map<Walk, StepFunction>;

// Non-existence of a parameterized load: inflow mass arrives at some walk
// index during a plateau of the arrival map. Carries (walk index, atom
// location, atom mass) witnesses.
struct NonExistence {
  struct Atom {
    std::size_t index;  // j: the offending arrival map A_{w,j}
    Rational location;
    Rational mass;
  };
  std::vector<Atom> atoms;
};

// Exit-time dynamics of a single edge under a given inflow. The returned
// delay D (and T = id + D) live on an extended domain [0, H] with
// H >= g.horizon() chosen so that any queue/volume has fully drained and D is
// constant at free flow from then on (exogenous models keep their declared
// delay). The map T may exceed H at the right end; travel_times() performs
// the final horizon extension and taper.
std::pair<PiecewiseLinear, MonotoneMap> vickrey_exit_time(const Rational& tau, const Rational& nu,
                                                          const StepFunction& g);
std::pair<PiecewiseLinear, MonotoneMap> linear_delay_exit_time(const Rational& tau,
                                                               const Rational& nu,
                                                               const StepFunction& g);

// Travel times for all edges under edge flows u (u may live on any horizon
// >= the network's). Applies the horizon extension / taper so that all maps
// are endomorphisms of [0, t_ext].
TravelTimes travel_times(const DynNetwork& net, const EdgeFlowVector& u);

// A_{w,1} = id; A_{w,j} = T_{w[j-1]} o A_{w,j-1}; j = |w|+1 is the
// destination arrival map.
MonotoneMap arrival_function(const TravelTimes& tt, const DynNetwork& net, const Walk& w,
                             std::size_t j);

// The load of h at walk index j: the absolutely continuous part of the
// pushforward of h through A_{w,j}; NonExistence when plateau mass appears.
std::variant<StepFunction, NonExistence> parameterized_load_edgewise(const TravelTimes& tt,
                                                                     const DynNetwork& net,
                                                                     const Walk& w, std::size_t j,
                                                                     const StepFunction& h);

// Per-edge loads summed over all indices of the walk; contains every network
// edge (zeros included). Exists iff every index-level load exists.
std::variant<EdgeFlowVector, NonExistence> parameterized_load(const TravelTimes& tt,
                                                              const DynNetwork& net, const Walk& w,
                                                              const StepFunction& h);

// The unique h with load(w, j, h) == f_j, for f_j vanishing on [0, A_{w,j}(0)).
StepFunction inverse_load(const TravelTimes& tt, const DynNetwork& net, const Walk& w,
                          std::size_t j, const StepFunction& f_j);

// Outflow rate of an edge: pushforward of g_e through T_e (with atom check).
std::variant<StepFunction, NonExistence> edge_outflow(const TravelTimes& tt, const EdgeId& e,
                                                      const StepFunction& g_e);

struct LoadingResult {
  EdgeFlowVector flows;  // on tt.horizon
  TravelTimes times;
};

// Computes the flow-dependent fixed point of walk inflows by event-driven
// forward propagation, then verifies exactly that the result reproduces
// itself under its own travel times. Throws std::runtime_error when the
// verification fails (never silently accepts an unverified fixed point).
LoadingResult network_loading(const DynNetwork& net, const WalkInflowMap& h);

}  // namespace dynflow
