#include "dynflow/decompose.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dynflow {

// ---------------------------------------------------------------------------
// Indicator set algebra on step functions (0/1 valued, common horizon)

namespace {

using Ind = StepFunction;

// {f != 0} as an indicator (f is assumed nonnegative).
Ind ind_support(const StepFunction& f) {
  std::vector<Rational> pts = f.breakpoints;
  std::vector<Rational> vals;
  for (const Rational& v : f.values) vals.push_back(v != 0 ? Rational(1) : Rational(0));
  return StepFunction::from_cells(std::move(pts), std::move(vals));
}

Ind ind_from_intervals(const std::vector<Interval>& ivs, const Rational& horizon) {
  Ind out = StepFunction::zero(horizon);
  for (const Interval& iv : ivs) {
    if (iv.length() == 0) continue;
    out = pw_max(out, StepFunction::box(Rational(1), iv.lo, iv.hi, horizon));
  }
  return out;
}

Ind ind_and(const Ind& a, const Ind& b) { return pw_min(a, b); }

Ind ind_minus(const Ind& a, const Ind& b) {
  const std::vector<Rational> cuts = refine({&a, &b}, {});
  std::vector<Rational> pts = cuts;
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    vals.push_back(a.value_at(mid) != 0 && b.value_at(mid) == 0 ? Rational(1) : Rational(0));
  }
  return StepFunction::from_cells(std::move(pts), std::move(vals));
}

// f restricted to {ind != 0}.
StepFunction mask(const StepFunction& f, const Ind& ind) {
  const std::vector<Rational> cuts = refine({&f, &ind}, {});
  std::vector<Rational> pts = cuts;
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    vals.push_back(ind.value_at(mid) != 0 ? f.value_at(mid) : Rational(0));
  }
  return StepFunction::from_cells(std::move(pts), std::move(vals));
}

// The essential image A({ind != 0}): the support of the pushforward density
// (plateau images are single points and carry no measure).
Ind ind_image(const Ind& d, const MonotoneMap& a) {
  return ind_support(pushforward(d, a).density);
}

// A^{-1}({ind != 0}) as an indicator (plateau preimages of interior points
// are included; they carry no inflow mass downstream).
Ind ind_preimage(const Ind& x, const MonotoneMap& a, const Rational& horizon) {
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    if (x.values[i] == 0) continue;
    for (const Interval& iv : preimage(a, Interval::closed_open(x.breakpoints[i], x.breakpoints[i + 1]))) {
      ivs.push_back(iv);
    }
  }
  return ind_from_intervals(ivs, horizon);
}

std::vector<Interval> intervals_of(const Ind& ind) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < ind.values.size(); ++i) {
    if (ind.values[i] == 0) continue;
    out.push_back(Interval::closed_open(ind.breakpoints[i], ind.breakpoints[i + 1]));
  }
  return out;
}

Walk splice_walk(const Walk& w, std::size_t j, const Walk& circuit) {
  Walk out = w;
  out.edges.insert(out.edges.begin() + static_cast<std::ptrdiff_t>(j - 1),
                   circuit.edges.begin(), circuit.edges.end());
  return out;
}

void add_inflow(WalkInflowMap& m, const Walk& w, const StepFunction& h) {
  const auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, h);
  } else {
    it->second = pw_add(extend_horizon(it->second, h.horizon()), h);
  }
}

void sub_inflow(WalkInflowMap& m, const Walk& w, const StepFunction& h, const char* what) {
  const auto it = m.find(w);
  if (it == m.end()) throw std::logic_error(std::string(what) + ": walk has no inflow (bug)");
  it->second = pw_sub(extend_horizon(it->second, h.horizon()), h);
  if (!it->second.nonnegative()) {
    throw std::logic_error(std::string(what) + ": walk inflow driven negative (bug)");
  }
  if (it->second.is_zero()) m.erase(it);
}

}  // namespace

// ---------------------------------------------------------------------------
// Active components

ActiveComponents active_components(const TravelTimes& tt, const DynNetwork& net,
                                   const std::map<SimpleCycle, StepFunction>& cycle_inflows) {
  ActiveComponents out;
  if (cycle_inflows.empty()) return out;
  std::vector<const SimpleCycle*> cycles;
  std::vector<StepFunction> inflows;
  std::vector<const StepFunction*> fs;
  std::vector<const PiecewiseLinear*> ds;
  for (const auto& [c, h] : cycle_inflows) {
    cycles.push_back(&c);
    inflows.push_back(extend_horizon(h, tt.horizon));
    for (const EdgeId& e : c.edges) ds.push_back(&tt.delay_of(e));
  }
  for (const auto& f : inflows) fs.push_back(&f);
  const std::vector<Rational> cuts = refine(fs, ds, tt.horizon);

  // Per cell: the node-sharing components of the cycles that are active there
  // (positive inflow, all delays identically zero on the cell).
  std::map<std::vector<std::size_t>, std::vector<Interval>> by_cycle_set;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < cycles.size(); ++k) {
      if (inflows[k].value_at(mid) == 0) continue;
      bool zero = true;
      for (const EdgeId& e : cycles[k]->edges) {
        const auto& d = tt.delay_of(e);
        zero = zero && d.eval(cuts[i]) == 0 && d.eval(cuts[i + 1]) == 0;
      }
      if (zero) active.push_back(k);
    }
    if (active.empty()) continue;
    // Union-find over the active cycles by shared nodes.
    std::map<std::size_t, std::size_t> parent;
    for (const std::size_t k : active) parent[k] = k;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::map<NodeId, std::size_t> seen;
    for (const std::size_t k : active) {
      for (const EdgeId& e : cycles[k]->edges) {
        const NodeId& v = net.edge(e).tail;
        const auto it = seen.find(v);
        if (it == seen.end()) {
          seen.emplace(v, k);
        } else {
          parent[find(it->second)] = find(k);
        }
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (const std::size_t k : active) comps[find(k)].push_back(k);
    for (auto& [root, ks] : comps) {
      std::sort(ks.begin(), ks.end());
      auto& ivs = by_cycle_set[ks];
      if (!ivs.empty() && ivs.back().hi == cuts[i]) {
        ivs.back().hi = cuts[i + 1];
      } else {
        ivs.push_back(Interval::closed_open(cuts[i], cuts[i + 1]));
      }
    }
  }
  for (const auto& [ks, ivs] : by_cycle_set) {
    ActiveComponent comp;
    for (const std::size_t k : ks) {
      comp.cycles.push_back(*cycles[k]);
      for (const EdgeId& e : cycles[k]->edges) {
        comp.edges.insert(e);
        comp.nodes.insert(net.edge(e).tail);
        comp.nodes.insert(net.edge(e).head);
      }
    }
    comp.active = ivs;
    out.components.push_back(std::move(comp));
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const ActiveComponent& a, const ActiveComponent& b) {
              if (a.cycles != b.cycles) return a.cycles < b.cycles;
              return a.active.front().lo < b.active.front().lo;
            });
  return out;
}

// ---------------------------------------------------------------------------
// Purity check

namespace {

// Witness cells of one component: the positive-length subcells of its
// activity set where neither the destination condition nor a flow-carrying
// leaving edge holds.
std::vector<PurityWitness> component_witnesses(const TravelTimes& tt, const DynNetwork& net,
                                               const EdgeFlowVector& g,
                                               const ActiveComponent& comp) {
  const TimeMeasure dest = node_balance(tt, net, g, net.destination);
  std::vector<const EdgeDef*> leaving;
  for (const auto& e : net.edges) {
    if (comp.nodes.count(e.tail) && !comp.edges.count(e.id)) leaving.push_back(&e);
  }
  std::vector<StepFunction> leaving_flows;
  for (const EdgeDef* e : leaving) {
    const auto it = g.find(e->id);
    leaving_flows.push_back(it != g.end() ? extend_horizon(it->second, tt.horizon)
                                          : StepFunction::zero(tt.horizon));
  }
  std::vector<const StepFunction*> fs{&dest.density};
  for (const auto& f : leaving_flows) fs.push_back(&f);
  const Ind activity = ind_from_intervals(comp.active, tt.horizon);
  fs.push_back(&activity);
  const std::vector<Rational> cuts = refine(fs, {}, tt.horizon);

  const bool has_dest = comp.nodes.count(net.destination) > 0;
  std::vector<PurityWitness> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    if (activity.value_at(mid) == 0) continue;
    bool ok = has_dest && dest.density.value_at(mid) < 0;
    for (const auto& f : leaving_flows) ok = ok || f.value_at(mid) > 0;
    if (!ok) {
      if (!out.empty() && out.back().cell.hi == cuts[i]) {
        out.back().cell.hi = cuts[i + 1];
      } else {
        out.push_back({comp, Interval::closed_open(cuts[i], cuts[i + 1])});
      }
    }
  }
  return out;
}

}  // namespace

PurityResult check_pure(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                        const Decomposition& d) {
  PurityResult res;
  const ActiveComponents comps = active_components(tt, net, d.cycle_inflows);
  for (const ActiveComponent& comp : comps.components) {
    auto w = component_witnesses(tt, net, g, comp);
    res.witnesses.insert(res.witnesses.end(), w.begin(), w.end());
  }
  res.pure = res.witnesses.empty();
  return res;
}

// ---------------------------------------------------------------------------
// Purification

namespace {

// Phase 1 for one component: reroute a sliver of every covering walk through
// an Eulerian circuit of the component, so that afterwards every activity
// time has walks traversing every component edge with positive inflow.
void thread_component(const TravelTimes& tt, const DynNetwork& net, Decomposition& dec,
                      const ActiveComponent& comp) {
  const Ind activity = ind_from_intervals(comp.active, tt.horizon);
  // min over the component's cycle inflows, on the activity set.
  StepFunction min_c = StepFunction::constant(Rational(0), tt.horizon);
  bool first = true;
  for (const SimpleCycle& c : comp.cycles) {
    const StepFunction h = extend_horizon(dec.cycle_inflows.at(c), tt.horizon);
    min_c = first ? h : pw_min(min_c, h);
    first = false;
  }
  min_c = mask(min_c, activity);

  // Candidate (walk, index) pairs: arrivals at the destination inside the
  // component, or traversals of an edge leaving the component.
  struct Cand {
    Walk walk;
    std::size_t j;
  };
  std::vector<Cand> cands;
  for (const auto& [w, h] : dec.walk_inflows) {
    for (std::size_t j = 1; j <= w.edges.size() + 1; ++j) {
      if (j == w.edges.size() + 1) {
        if (comp.nodes.count(net.destination)) cands.push_back({w, j});
      } else {
        const EdgeDef& e = net.edge(w.edges[j - 1]);
        if (comp.nodes.count(e.tail) && !comp.edges.count(e.id)) cands.push_back({w, j});
      }
    }
  }

  std::vector<std::pair<SimpleCycle, int>> circuit_cycles;
  for (const SimpleCycle& c : comp.cycles) circuit_cycles.emplace_back(c, 1);

  Ind remaining = activity;
  Rational frac(1);
  for (const Cand& cand : cands) {
    if (remaining.is_zero()) break;
    const auto hit = dec.walk_inflows.find(cand.walk);
    if (hit == dec.walk_inflows.end()) continue;
    const StepFunction h_w = extend_horizon(hit->second, tt.horizon);
    const MonotoneMap a = arrival_function(tt, net, cand.walk, cand.j);
    const Ind dl = ind_and(ind_preimage(remaining, a, tt.horizon), ind_support(h_w));
    if (dl.is_zero()) continue;
    const Ind image = ind_image(dl, a);
    if (image.is_zero()) continue;
    const StepFunction hhat = inverse_load(tt, net, cand.walk, cand.j, mask(min_c, image));
    const StepFunction rho = pw_min(scale(hhat, Rational(1, 2)), h_w);
    if (rho.is_zero()) continue;
    frac /= 2;
    const StepFunction transfer = scale(rho, frac);

    const NodeId start = cand.j == cand.walk.edges.size() + 1
                             ? net.destination
                             : net.edge(cand.walk.edges[cand.j - 1]).tail;
    const Walk circuit = eulerian_circuit(net, circuit_cycles, start);
    const Walk spliced = splice_walk(cand.walk, cand.j, circuit);

    const TimeMeasure arr = pushforward(rho, a);
    if (!arr.atoms.empty()) {
      throw std::logic_error("rerouted inflow hit an arrival plateau (bug)");
    }
    sub_inflow(dec.walk_inflows, cand.walk, transfer, "component threading");
    add_inflow(dec.walk_inflows, spliced, transfer);
    const StepFunction ell = scale(arr.density, frac);
    for (const SimpleCycle& c : comp.cycles) {
      StepFunction& hc = dec.cycle_inflows.at(c);
      hc = pw_sub(extend_horizon(hc, tt.horizon), ell);
      if (!hc.nonnegative()) {
        throw std::logic_error("component threading drove a cycle inflow negative (bug)");
      }
    }
    remaining = ind_minus(remaining, image);
  }
  if (!remaining.is_zero()) {
    throw std::logic_error("component activity could not be covered by walks (bug)");
  }
}

// Phase 2 for one cycle: absorb its entire inflow into walks that traverse a
// fixed edge of the cycle, splicing in enough copies of the cycle.
void absorb_cycle(const TravelTimes& tt, const DynNetwork& net, Decomposition& dec,
                  const SimpleCycle& cyc) {
  const auto hc_it = dec.cycle_inflows.find(cyc);
  if (hc_it == dec.cycle_inflows.end()) return;
  const StepFunction h_c = extend_horizon(hc_it->second, tt.horizon);
  if (h_c.is_zero()) {
    dec.cycle_inflows.erase(hc_it);
    return;
  }
  const EdgeId e = cyc.edges.front();
  const NodeId start = net.edge(e).tail;

  struct Cover {
    Walk walk;
    std::size_t j;
    MonotoneMap arrival;
    Ind image;
    StepFunction h_w;  // snapshot at cover time
  };
  std::vector<Cover> covers;
  Ind remaining = ind_support(h_c);
  for (const auto& [w, h] : dec.walk_inflows) {
    for (std::size_t j = 1; j <= w.edges.size(); ++j) {
      if (w.edges[j - 1] != e) continue;
      if (remaining.is_zero()) break;
      const StepFunction h_w = extend_horizon(h, tt.horizon);
      const MonotoneMap a = arrival_function(tt, net, w, j);
      const Ind dm = ind_and(ind_preimage(remaining, a, tt.horizon), ind_support(h_w));
      const Ind image = ind_image(dm, a);
      if (image.is_zero()) continue;
      covers.push_back({w, j, a, image, h_w});
      remaining = ind_minus(remaining, image);
    }
  }
  if (!remaining.is_zero()) {
    throw std::logic_error("cycle activity could not be covered by walks (bug)");
  }
  std::map<Walk, int> walk_multiplicity;
  for (const Cover& m : covers) ++walk_multiplicity[m.walk];

  for (const Cover& m : covers) {
    const int mult = walk_multiplicity.at(m.walk);
    const StepFunction hhat = inverse_load(tt, net, m.walk, m.j, mask(h_c, m.image));
    const std::vector<Rational> cuts = refine({&hhat, &m.h_w}, {}, tt.horizon);
    // Group the departure cells by the number of cycle copies they need.
    std::map<int, std::vector<Rational>> amounts;  // copies -> per-cell amount
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
      const Rational hv = hhat.value_at(mid);
      if (hv == 0) continue;
      const Rational wv = m.h_w.value_at(mid);
      if (wv <= 0) {
        throw std::logic_error("cycle absorption needs inflow where the walk has none (bug)");
      }
      const int n = rational_ceil(Rational(hv / wv)).convert_to<int>();
      auto& vals = amounts[n];
      vals.resize(cuts.size() - 1, Rational(0));
      vals[i] = hv / (Rational(n) * mult);
    }
    for (auto& [n, vals] : amounts) {
      std::vector<Rational> pts = cuts;
      const StepFunction amount = StepFunction::from_cells(std::move(pts), std::move(vals));
      const Walk circuit = eulerian_circuit(net, {{cyc, n * mult}}, start);
      const Walk spliced = splice_walk(m.walk, m.j, circuit);
      sub_inflow(dec.walk_inflows, m.walk, amount, "cycle absorption");
      add_inflow(dec.walk_inflows, spliced, amount);
    }
  }
  dec.cycle_inflows.erase(cyc);
}

}  // namespace

PurifyResult purify(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                    const Decomposition& d) {
  const EdgeFlowVector before = reconstruct(tt, net, d);
  PurifyResult res;
  res.decomposition = d;
  for (auto& [c, h] : res.decomposition.cycle_inflows) h = extend_horizon(h, tt.horizon);

  const ActiveComponents comps = active_components(tt, net, res.decomposition.cycle_inflows);
  std::vector<const ActiveComponent*> passing;
  std::set<SimpleCycle> retained;
  for (const ActiveComponent& comp : comps.components) {
    auto w = component_witnesses(tt, net, g, comp);
    if (w.empty()) {
      passing.push_back(&comp);
    } else {
      // Retained as-is: the component is not purifiable on the witness cells,
      // and we keep it whole rather than splitting its activity set.
      res.witnesses.insert(res.witnesses.end(), w.begin(), w.end());
      for (const SimpleCycle& c : comp.cycles) retained.insert(c);
    }
  }
  for (const ActiveComponent* comp : passing) {
    thread_component(tt, net, res.decomposition, *comp);
  }
  // Absorb the cycles of the passing components; a cycle also active in a
  // retained component keeps its inflow (absorption is all-or-nothing).
  std::set<SimpleCycle> to_absorb;
  for (const ActiveComponent* comp : passing) {
    for (const SimpleCycle& c : comp->cycles) {
      if (!retained.count(c)) to_absorb.insert(c);
    }
  }
  for (const SimpleCycle& c : to_absorb) {
    absorb_cycle(tt, net, res.decomposition, c);
  }
  for (auto it = res.decomposition.walk_inflows.begin();
       it != res.decomposition.walk_inflows.end();) {
    it = it->second.is_zero() ? res.decomposition.walk_inflows.erase(it) : std::next(it);
  }
  for (auto it = res.decomposition.cycle_inflows.begin();
       it != res.decomposition.cycle_inflows.end();) {
    it = it->second.is_zero() ? res.decomposition.cycle_inflows.erase(it) : std::next(it);
  }
  res.pure = res.decomposition.cycle_inflows.empty();

  const EdgeFlowVector after = reconstruct(tt, net, res.decomposition);
  for (const auto& [e, f] : before) {
    if (!(after.at(e) == f)) {
      throw std::logic_error("purification changed the aggregate flow on edge " + e + " (bug)");
    }
  }
  return res;
}

}  // namespace dynflow
