#include "dynflow/loading.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace dynflow {

const PiecewiseLinear& TravelTimes::delay_of(const EdgeId& e) const {
  const auto it = delay.find(e);
  if (it == delay.end()) throw std::invalid_argument("no travel time for edge " + e);
  return it->second;
}

const MonotoneMap& TravelTimes::exit_of(const EdgeId& e) const {
  const auto it = exit.find(e);
  if (it == exit.end()) throw std::invalid_argument("no exit time for edge " + e);
  return it->second;
}

namespace {

// ---------------------------------------------------------------------------
// Incremental single-edge dynamics. Both kernels maintain the exit-time map
// T as a polyline extended cell by cell; the frontier is the time up to which
// the inflow has been committed.

struct VickreyDyn {
  Rational tau, nu;
  Rational t{0}, q{0};  // frontier, queue volume at the frontier
  std::vector<Rational> pts, tvals;

  VickreyDyn(Rational tau_, Rational nu_) : tau(std::move(tau_)), nu(std::move(nu_)) {
    pts.push_back(Rational(0));
    tvals.push_back(tau);  // T(0) = tau + q0/nu with q0 = 0
  }

  void append(const Rational& time, const Rational& tvalue) {
    if (time == pts.back()) return;
    pts.push_back(time);
    tvals.push_back(tvalue);
  }

  // Advances over [t, t2) with constant inflow rate a.
  void advance_cell(const Rational& t2, const Rational& a) {
    while (t < t2) {
      if (q > 0 && a < nu) {
        // Queue drains at rate nu - a; it may empty inside the cell.
        const Rational t_empty = t + q / (nu - a);
        const Rational step = std::min(t_empty, t2);
        q -= (nu - a) * (step - t);
        t = step;
        append(t, t + tau + q / nu);
      } else {
        // Queue grows at rate a - nu (or stays empty when a <= nu).
        const Rational growth = q > 0 || a > nu ? a - nu : Rational(0);
        q += growth * (t2 - t);
        t = t2;
        append(t, t + tau + q / nu);
      }
    }
  }

  // No further inflow: drains any remaining queue (T is flat there, carrying
  // no inflow mass), then T continues at slope 1.
  void finish() {
    if (q > 0) {
      t += q / nu;
      q = 0;
      append(t, t + tau);
    }
  }
};

struct LinearDelayDyn {
  Rational tau, nu;
  Rational t{0}, x{0};  // frontier, edge volume at the frontier
  std::vector<Rational> pts, tvals;
  // Committed aggregate inflow as (cell start, rate); cell ends at next start
  // or the frontier.
  std::vector<std::pair<Rational, Rational>> in_cells;

  LinearDelayDyn(Rational tau_, Rational nu_) : tau(std::move(tau_)), nu(std::move(nu_)) {
    pts.push_back(Rational(0));
    tvals.push_back(tau);
  }

  void append(const Rational& time, const Rational& tvalue) {
    if (time == pts.back()) return;
    pts.push_back(time);
    tvals.push_back(tvalue);
  }

  Rational eval_T(const Rational& time) const {
    // Interpolation on the committed polyline.
    auto it = std::upper_bound(pts.begin(), pts.end(), time);
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    if (i > 0) --i;
    if (i + 1 >= pts.size()) return tvals.back();
    return tvals[i] + (tvals[i + 1] - tvals[i]) * (time - pts[i]) / (pts[i + 1] - pts[i]);
  }

  Rational inflow_at(const Rational& s) const {
    for (std::size_t i = in_cells.size(); i-- > 0;) {
      if (in_cells[i].first <= s) return in_cells[i].second;
    }
    return Rational(0);
  }

  // The committed outflow rate at time `cur` plus the next time it can
  // change. Valid while cur < T(frontier).
  std::pair<Rational, Rational> outflow_at(const Rational& cur) const {
    if (cur < tvals.front()) return {Rational(0), tvals.front()};
    // Find the polyline segment whose image contains cur.
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (tvals[i] <= cur && cur < tvals[i + 1]) {
        const Rational m = (tvals[i + 1] - tvals[i]) / (pts[i + 1] - pts[i]);
        // Entry time s = T^{-1}(cur) inside the segment.
        const Rational s = pts[i] + (cur - tvals[i]) / m;
        const Rational a_s = inflow_at(s);
        // Next change: image of the segment end or of the next inflow cell
        // boundary after s.
        Rational next_kink = pts[i + 1];
        for (const auto& [start, rate] : in_cells) {
          if (start > s && start < next_kink) next_kink = start;
        }
        return {a_s / m, eval_T(next_kink)};
      }
    }
    // cur at or beyond T(frontier): no committed outflow knowledge; the
    // caller never asks for this while advancing (T(frontier) > frontier).
    throw std::logic_error("linear delay outflow query beyond committed horizon");
  }

  void advance_cell(const Rational& t2, const Rational& a) {
    in_cells.emplace_back(t, a);
    step_until(t2, a, false);
  }

  void finish() {
    if (x > 0) {
      in_cells.emplace_back(t, Rational(0));
      // Everything has exited by the image of the frontier; step there.
      step_until(t + tau + x / nu, Rational(0), true);
      if (x != 0) throw std::runtime_error("linear delay volume failed to drain");
    }
  }

  void step_until(const Rational& t2, const Rational& a, bool stop_when_empty) {
    while (t < t2) {
      // outflow_at guarantees next_change > t, so every iteration advances.
      const auto [out, next_change] = outflow_at(t);
      const Rational step = std::min(t2, next_change);
      const Rational xprime = a - out;
      if (nu + xprime < 0) {
        throw std::runtime_error("linear delay violates FIFO (exit map would decrease)");
      }
      if (stop_when_empty && xprime < 0) {
        const Rational t_zero = t + x / (-xprime);
        if (t_zero <= step) {
          x = 0;
          t = t_zero;
          append(t, t + tau);
          return;
        }
      }
      x += xprime * (step - t);
      t = step;
      append(t, t + tau + x / nu);
    }
  }
};

// ---------------------------------------------------------------------------
// Shared assembly helpers

PiecewiseLinear polyline_to_delay(const std::vector<Rational>& pts,
                                  const std::vector<Rational>& tvals) {
  std::vector<Rational> dvals;
  dvals.reserve(tvals.size());
  for (std::size_t i = 0; i < pts.size(); ++i) dvals.push_back(tvals[i] - pts[i]);
  return PiecewiseLinear::from_points(pts, dvals);
}

// Runs the full dynamics of one edge over a complete inflow function,
// extending the domain until the queue/volume has drained.
template <typename Dyn>
std::pair<PiecewiseLinear, MonotoneMap> run_dynamics(Dyn dyn, const StepFunction& g) {
  if (!g.nonnegative()) throw std::invalid_argument("edge inflow must be nonnegative");
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    dyn.advance_cell(g.breakpoints[i + 1], g.values[i]);
  }
  dyn.finish();
  // Pad the domain to at least the inflow horizon (free flow at the tail).
  if (dyn.pts.back() < g.horizon()) dyn.append(g.horizon(), g.horizon() + dyn.tau);
  PiecewiseLinear delay = polyline_to_delay(dyn.pts, dyn.tvals);
  std::vector<Rational> tv;
  for (std::size_t i = 0; i < delay.breakpoints.size(); ++i) {
    tv.push_back(delay.breakpoints[i] + delay.values[i]);
  }
  MonotoneMap exit = PiecewiseLinear::from_points(delay.breakpoints, std::move(tv));
  if (!exit.is_monotone()) throw std::runtime_error("edge exit time is not monotone");
  return {std::move(delay), std::move(exit)};
}

// Extends a delay function from its current domain to `to`, keeping the last
// value constant.
PiecewiseLinear extend_delay_const(const PiecewiseLinear& d, const Rational& to) {
  if (d.horizon() == to) return d;
  std::vector<Rational> bps = d.breakpoints;
  std::vector<Rational> vals = d.values;
  bps.push_back(to);
  vals.push_back(vals.back());
  return PiecewiseLinear::from_points(std::move(bps), std::move(vals));
}

// Extends a delay function beyond `from` by the FIFO-preserving taper at
// slope -1 down to zero, out to `to`.
PiecewiseLinear taper_delay(const PiecewiseLinear& d, const Rational& to) {
  const Rational from = d.horizon();
  if (from == to) return d;
  std::vector<Rational> bps = d.breakpoints;
  std::vector<Rational> vals = d.values;
  const Rational hit_zero = from + vals.back();
  if (hit_zero < to) {
    if (vals.back() > 0) {
      bps.push_back(hit_zero);
      vals.push_back(Rational(0));
    }
    bps.push_back(to);
    vals.push_back(Rational(0));
  } else {
    bps.push_back(to);
    vals.push_back(vals.back() - (to - from));
  }
  return PiecewiseLinear::from_points(std::move(bps), std::move(vals));
}

}  // namespace

std::pair<PiecewiseLinear, MonotoneMap> vickrey_exit_time(const Rational& tau, const Rational& nu,
                                                          const StepFunction& g) {
  if (tau <= 0 || nu <= 0) throw std::invalid_argument("vickrey requires tau > 0 and nu > 0");
  return run_dynamics(VickreyDyn(tau, nu), g);
}

std::pair<PiecewiseLinear, MonotoneMap> linear_delay_exit_time(const Rational& tau,
                                                               const Rational& nu,
                                                               const StepFunction& g) {
  if (tau <= 0 || nu <= 0) throw std::invalid_argument("linear delay requires tau > 0 and nu > 0");
  return run_dynamics(LinearDelayDyn(tau, nu), g);
}

TravelTimes travel_times(const DynNetwork& net, const EdgeFlowVector& u) {
  // Common base horizon of the given flows.
  Rational hu = net.horizon;
  for (const auto& [id, g] : u) hu = std::max(hu, g.horizon());

  // Per-edge delay on an edge-specific domain (>= hu once extended).
  std::map<EdgeId, PiecewiseLinear> raw;
  Rational h1 = hu;
  for (const auto& e : net.edges) {
    const auto it = u.find(e.id);
    const StepFunction g = it != u.end() ? it->second : StepFunction::zero(hu);
    if (!g.nonnegative()) throw std::invalid_argument("edge flow must be nonnegative: " + e.id);
    PiecewiseLinear d;
    switch (e.model.kind) {
      case TravelTimeModel::Kind::Vickrey:
        d = vickrey_exit_time(e.model.tau, e.model.nu, g).first;
        break;
      case TravelTimeModel::Kind::LinearDelay:
        d = linear_delay_exit_time(e.model.tau, e.model.nu, g).first;
        break;
      case TravelTimeModel::Kind::Exogenous:
        d = e.model.exo_delay;
        break;
    }
    h1 = std::max(h1, d.horizon());
    raw.emplace(e.id, std::move(d));
  }

  // Harmonize all delays to the common point h1, then taper to zero so every
  // exit map is an endomorphism of [0, t_ext].
  Rational t_ext = h1;
  for (auto& [id, d] : raw) {
    const bool exo = net.edge(id).model.kind == TravelTimeModel::Kind::Exogenous;
    // Model-computed delays sit at free flow past their domain; exogenous
    // delays taper once their declared domain ends.
    d = exo ? taper_delay(d, h1) : extend_delay_const(d, h1);
    t_ext = std::max(t_ext, Rational(h1 + d.values.back()));
  }
  TravelTimes tt;
  tt.horizon = t_ext;
  for (auto& [id, d] : raw) {
    PiecewiseLinear delay = taper_delay(d, t_ext);
    std::vector<Rational> tv;
    for (std::size_t i = 0; i < delay.breakpoints.size(); ++i) {
      tv.push_back(delay.breakpoints[i] + delay.values[i]);
    }
    MonotoneMap exit = PiecewiseLinear::from_points(delay.breakpoints, std::move(tv));
    if (!exit.is_monotone()) {
      throw std::runtime_error("exit time of edge " + id + " violates FIFO");
    }
    tt.delay.emplace(id, std::move(delay));
    tt.exit.emplace(id, std::move(exit));
  }
  return tt;
}

MonotoneMap arrival_function(const TravelTimes& tt, const DynNetwork& net, const Walk& w,
                             std::size_t j) {
  if (j < 1 || j > w.edges.size() + 1) throw std::invalid_argument("arrival index out of range");
  MonotoneMap a = PiecewiseLinear::identity(tt.horizon);
  for (std::size_t i = 1; i < j; ++i) {
    a = compose(tt.exit_of(w.edges[i - 1]), a);
  }
  (void)net;
  return a;
}

std::variant<StepFunction, NonExistence> parameterized_load_edgewise(const TravelTimes& tt,
                                                                     const DynNetwork& net,
                                                                     const Walk& w, std::size_t j,
                                                                     const StepFunction& h) {
  if (!h.nonnegative()) throw std::invalid_argument("walk inflow must be nonnegative");
  const StepFunction hx = extend_horizon(h, tt.horizon);
  const MonotoneMap a = arrival_function(tt, net, w, j);
  const TimeMeasure m = pushforward(hx, a);
  auto r = absolutely_continuous_part(m);
  if (std::holds_alternative<StepFunction>(r)) return std::get<StepFunction>(r);
  NonExistence err;
  for (const auto& [loc, mass] : m.atoms) err.atoms.push_back({j, loc, mass});
  return err;
}

std::variant<EdgeFlowVector, NonExistence> parameterized_load(const TravelTimes& tt,
                                                              const DynNetwork& net, const Walk& w,
                                                              const StepFunction& h) {
  EdgeFlowVector out;
  for (const auto& e : net.edges) out.emplace(e.id, StepFunction::zero(tt.horizon));
  NonExistence err;
  for (std::size_t j = 1; j <= w.edges.size(); ++j) {
    auto r = parameterized_load_edgewise(tt, net, w, j, h);
    if (std::holds_alternative<NonExistence>(r)) {
      const auto& e = std::get<NonExistence>(r);
      err.atoms.insert(err.atoms.end(), e.atoms.begin(), e.atoms.end());
    } else if (err.atoms.empty()) {
      auto& acc = out.at(w.edges[j - 1]);
      acc = pw_add(acc, std::get<StepFunction>(r));
    }
  }
  if (!err.atoms.empty()) return err;
  return out;
}

StepFunction inverse_load(const TravelTimes& tt, const DynNetwork& net, const Walk& w,
                          std::size_t j, const StepFunction& f_j) {
  if (!f_j.nonnegative()) throw std::invalid_argument("edge flow must be nonnegative");
  const StepFunction f = extend_horizon(f_j, tt.horizon);
  const MonotoneMap a = arrival_function(tt, net, w, j);
  const Rational a0 = a.values.front();
  if (a0 > 0 && !restrict_to(f, Interval::closed_open(Rational(0), a0)).is_zero()) {
    throw std::invalid_argument("inverse load requires f = 0 before the first arrival time");
  }
  // Differentiate t -> \int_{[0, A(t)]} f cellwise: density f(A(t)) * A'(t).
  std::vector<Rational> pts = a.breakpoints;
  for (const Rational& bp : f.breakpoints) {
    const auto pre = preimage(a, Interval::closed(bp, bp));
    for (const auto& iv : pre) {
      pts.push_back(iv.lo);
      pts.push_back(iv.hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational& lo = pts[i];
    const Rational& hi = pts[i + 1];
    const Rational ya = a.eval(lo);
    const Rational yb = a.eval(hi);
    if (ya == yb) {
      vals.push_back(Rational(0));  // plateau: the unique preimage density is 0
    } else {
      const Rational mid = a.eval((lo + hi) / 2);
      vals.push_back(f.value_at(mid) * (yb - ya) / (hi - lo));
    }
  }
  return StepFunction::from_cells(std::move(pts), std::move(vals));
}

std::variant<StepFunction, NonExistence> edge_outflow(const TravelTimes& tt, const EdgeId& e,
                                                      const StepFunction& g_e) {
  if (!g_e.nonnegative()) throw std::invalid_argument("edge flow must be nonnegative");
  const StepFunction g = extend_horizon(g_e, tt.horizon);
  const TimeMeasure m = pushforward(g, tt.exit_of(e));
  auto r = absolutely_continuous_part(m);
  if (std::holds_alternative<StepFunction>(r)) return std::get<StepFunction>(r);
  NonExistence err;
  for (const auto& [loc, mass] : m.atoms) err.atoms.push_back({2, loc, mass});
  return err;
}

// ---------------------------------------------------------------------------
// Event-driven network loading

namespace {

struct Piece {
  Rational a, b, rate;  // rate != 0 on [a, b)
};

// Inflow contribution of one (walk, index) pair into its edge.
struct Contribution {
  std::size_t walk;    // index into the walk list
  std::size_t j;       // 1-based index along the walk
  EdgeId edge;         // w[j]
  std::vector<Piece> delivered;
  Rational frontier{0};  // delivered completely on [0, frontier)
  bool done = false;     // nothing further will arrive
  std::size_t pushed = 0;  // pieces fully pushed through the edge (by index)
  Rational pushed_upto{0};
};

struct EdgeRuntime {
  const EdgeDef* def = nullptr;
  std::vector<std::size_t> contribs;
  std::optional<VickreyDyn> vick;
  std::optional<LinearDelayDyn> lind;
  bool resolved = false;
  Rational frontier{0};

  bool dynamic() const { return def->model.kind != TravelTimeModel::Kind::Exogenous; }
};

// Exit-time polyline of an exogenous edge, valid on [0, upto].
MonotoneMap exo_exit_polyline(const TravelTimeModel& model, const Rational& upto) {
  const PiecewiseLinear d =
      upto > model.exo_delay.horizon() ? taper_delay(model.exo_delay, upto) : model.exo_delay;
  std::vector<Rational> tv;
  std::vector<Rational> bps;
  for (std::size_t i = 0; i < d.breakpoints.size(); ++i) {
    if (d.breakpoints[i] > upto) break;
    bps.push_back(d.breakpoints[i]);
    tv.push_back(d.breakpoints[i] + d.values[i]);
  }
  if (bps.back() < upto) {
    bps.push_back(upto);
    tv.push_back(upto + d.eval(upto));
  }
  return PiecewiseLinear::from_points(std::move(bps), std::move(tv));
}

// Pushes the part of `pieces` lying in [w0, w1) through the exit polyline
// (pts, tvals); appends image pieces to `out`. Throws if positive mass lands
// on a plateau (the loaded flow would not exist).
void push_window(const std::vector<Piece>& pieces, const Rational& w0, const Rational& w1,
                 const std::vector<Rational>& pts, const std::vector<Rational>& tvals,
                 std::vector<Piece>& out) {
  for (const auto& p : pieces) {
    const Rational a = std::max(p.a, w0);
    const Rational b = std::min(p.b, w1);
    if (a >= b) continue;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Rational sa = std::max(pts[i], a);
      const Rational sb = std::min(pts[i + 1], b);
      if (sa >= sb) continue;
      const Rational m = (tvals[i + 1] - tvals[i]) / (pts[i + 1] - pts[i]);
      if (m == 0) {
        throw std::runtime_error("network loading: inflow mass meets a flat exit map");
      }
      const Rational ya = tvals[i] + (sa - pts[i]) * m;
      const Rational yb = tvals[i] + (sb - pts[i]) * m;
      out.push_back({ya, yb, p.rate / m});
    }
  }
}

}  // namespace

LoadingResult network_loading(const DynNetwork& net, const WalkInflowMap& h) {
  net.validate();
  std::vector<const Walk*> walks;
  std::vector<const StepFunction*> rates;
  for (const auto& [w, rate] : h) {
    if (auto v = validate_walk(net, w, true)) {
      throw std::invalid_argument("walk inflow on an invalid walk (index " +
                                  std::to_string(v->index) + "): " + v->message);
    }
    if (!rate.nonnegative()) throw std::invalid_argument("walk inflow must be nonnegative");
    walks.push_back(&w);
    rates.push_back(&rate);
  }

  // Contributions: one per (walk, index), fed by its predecessor.
  std::vector<Contribution> contribs;
  std::map<EdgeId, EdgeRuntime> edges;
  for (const auto& e : net.edges) {
    EdgeRuntime rt;
    rt.def = &e;
    if (e.model.kind == TravelTimeModel::Kind::Vickrey) {
      rt.vick.emplace(e.model.tau, e.model.nu);
    } else if (e.model.kind == TravelTimeModel::Kind::LinearDelay) {
      rt.lind.emplace(e.model.tau, e.model.nu);
    }
    edges.emplace(e.id, std::move(rt));
  }
  for (std::size_t wi = 0; wi < walks.size(); ++wi) {
    for (std::size_t j = 1; j <= walks[wi]->edges.size(); ++j) {
      Contribution c;
      c.walk = wi;
      c.j = j;
      c.edge = walks[wi]->edges[j - 1];
      if (j == 1) {
        const auto& r = *rates[wi];
        for (std::size_t i = 0; i < r.values.size(); ++i) {
          if (r.values[i] != 0) c.delivered.push_back({r.breakpoints[i], r.breakpoints[i + 1], r.values[i]});
        }
        c.done = true;
      }
      edges.at(c.edge).contribs.push_back(contribs.size());
      contribs.push_back(std::move(c));
    }
  }
  auto successor = [&](const Contribution& c) -> Contribution* {
    if (c.j >= walks[c.walk]->edges.size()) return nullptr;
    // Contributions were created walk-major, index-minor: the successor is
    // the next entry.
    for (auto& cand : contribs) {
      if (cand.walk == c.walk && cand.j == c.j + 1) return &cand;
    }
    return nullptr;
  };
  auto deliver = [&](Contribution& succ, const std::vector<Piece>& pieces, const Rational& upto,
                     bool done) {
    for (const auto& p : pieces) {
      if (p.rate != 0 && p.a < p.b) succ.delivered.push_back(p);
    }
    std::sort(succ.delivered.begin(), succ.delivered.end(),
              [](const Piece& x, const Piece& y) { return x.a < y.a; });
    succ.frontier = std::max(succ.frontier, upto);
    if (done) succ.done = true;
  };

  // Sweep until every contribution is fully delivered and processed.
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [eid, rt] : edges) {
      if (rt.contribs.empty()) continue;
      if (!rt.dynamic()) {
        // Exogenous: the exit map is known in full; push on delivery.
        for (const std::size_t ci : rt.contribs) {
          Contribution& c = contribs[ci];
          const Rational upto = c.done && !c.delivered.empty()
                                    ? std::max(c.frontier, c.delivered.back().b)
                                    : c.frontier;
          if (upto > c.pushed_upto || (c.done && c.pushed < c.delivered.size())) {
            const MonotoneMap T = exo_exit_polyline(rt.def->model, upto);
            std::vector<Piece> out;
            push_window(c.delivered, c.pushed_upto, upto, T.breakpoints, T.values, out);
            if (Contribution* succ = successor(c)) {
              deliver(*succ, out, T.eval(upto), c.done);
            }
            c.pushed_upto = upto;
            c.pushed = c.delivered.size();
            progress = true;
          }
        }
        continue;
      }
      if (rt.resolved) continue;
      // Dynamic edge: advance to the least contribution frontier.
      bool all_done = true;
      std::optional<Rational> t_avail;
      for (const std::size_t ci : rt.contribs) {
        const Contribution& c = contribs[ci];
        if (!c.done) {
          all_done = false;
          if (!t_avail || c.frontier < *t_avail) t_avail = c.frontier;
        }
      }
      Rational target = rt.frontier;
      if (all_done) {
        for (const std::size_t ci : rt.contribs) {
          if (!contribs[ci].delivered.empty()) {
            target = std::max(target, contribs[ci].delivered.back().b);
          }
        }
      } else {
        target = *t_avail;
      }
      if (!all_done && target <= rt.frontier) continue;

      // Aggregate inflow cells on [frontier, target).
      std::vector<Rational> cuts{rt.frontier, target};
      for (const std::size_t ci : rt.contribs) {
        for (const auto& p : contribs[ci].delivered) {
          if (p.a > rt.frontier && p.a < target) cuts.push_back(p.a);
          if (p.b > rt.frontier && p.b < target) cuts.push_back(p.b);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      const std::size_t seg_before = rt.vick ? rt.vick->pts.size() : rt.lind->pts.size();
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational a(0);
        for (const std::size_t ci : rt.contribs) {
          for (const auto& p : contribs[ci].delivered) {
            if (p.a <= cuts[i] && cuts[i + 1] <= p.b) a += p.rate;
          }
        }
        if (rt.vick) {
          rt.vick->advance_cell(cuts[i + 1], a);
        } else {
          rt.lind->advance_cell(cuts[i + 1], a);
        }
      }
      if (all_done) {
        if (rt.vick) {
          rt.vick->finish();
        } else {
          rt.lind->finish();
        }
        rt.resolved = true;
      }
      (void)seg_before;
      const auto& pts = rt.vick ? rt.vick->pts : rt.lind->pts;
      const auto& tvals = rt.vick ? rt.vick->tvals : rt.lind->tvals;
      const Rational new_frontier = all_done ? pts.back() : target;
      // Push each contribution's window through the newly known map part.
      for (const std::size_t ci : rt.contribs) {
        Contribution& c = contribs[ci];
        std::vector<Piece> out;
        push_window(c.delivered, rt.frontier, new_frontier, pts, tvals, out);
        if (Contribution* succ = successor(c)) {
          // Interpolated T at the frontier bounds the successor's knowledge.
          Rational timg = tvals.back();
          if (!all_done) {
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
              if (pts[i] <= new_frontier && new_frontier <= pts[i + 1]) {
                timg = tvals[i] + (tvals[i + 1] - tvals[i]) * (new_frontier - pts[i]) /
                                      (pts[i + 1] - pts[i]);
              }
            }
          }
          deliver(*succ, out, timg, all_done && c.done);
        }
      }
      rt.frontier = new_frontier;
      progress = true;
    }
  }
  for (const auto& c : contribs) {
    if (!c.done) throw std::runtime_error("network loading failed to converge");
  }

  // Materialize the edge flows.
  Rational h_flows = net.horizon;
  for (const auto& c : contribs) {
    for (const auto& p : c.delivered) h_flows = std::max(h_flows, p.b);
  }
  EdgeFlowVector flows;
  for (const auto& e : net.edges) {
    std::vector<Rational> pts{Rational(0), h_flows};
    for (const std::size_t ci : edges.at(e.id).contribs) {
      for (const auto& p : contribs[ci].delivered) {
        pts.push_back(p.a);
        pts.push_back(p.b);
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Rational> vals;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      Rational v(0);
      for (const std::size_t ci : edges.at(e.id).contribs) {
        for (const auto& p : contribs[ci].delivered) {
          if (p.a <= pts[i] && pts[i + 1] <= p.b) v += p.rate;
        }
      }
      vals.push_back(v);
    }
    flows.emplace(e.id, StepFunction::from_cells(std::move(pts), std::move(vals)));
  }

  // Exact post-hoc verification: the flows must reproduce themselves under
  // their own travel times (never accept an unverified fixed point).
  TravelTimes tt = travel_times(net, flows);
  for (auto& [id, g] : flows) g = extend_horizon(g, tt.horizon);
  EdgeFlowVector check;
  for (const auto& e : net.edges) check.emplace(e.id, StepFunction::zero(tt.horizon));
  for (std::size_t wi = 0; wi < walks.size(); ++wi) {
    auto r = parameterized_load(tt, net, *walks[wi], *rates[wi]);
    if (std::holds_alternative<NonExistence>(r)) {
      std::ostringstream os;
      os << "network loading fixed point does not exist (atoms at";
      for (const auto& a : std::get<NonExistence>(r).atoms) {
        os << " " << rational_to_string(a.location);
      }
      os << ")";
      throw std::runtime_error(os.str());
    }
    for (const auto& [id, f] : std::get<EdgeFlowVector>(r)) {
      check.at(id) = pw_add(check.at(id), f);
    }
  }
  for (const auto& e : net.edges) {
    if (!(check.at(e.id) == flows.at(e.id))) {
      throw std::runtime_error("network loading fixed point failed verification on edge " + e.id);
    }
  }
  return {std::move(flows), std::move(tt)};
}

}  // namespace dynflow
