#include "dynflow/decompose.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dynflow {

// ---------------------------------------------------------------------------
// Simplex (two-phase, dense, Bland's rule)

namespace {

struct Tableau {
  // rows x (num_cols + 1); the last column is the rhs.
  std::vector<std::vector<Rational>> t;
  std::vector<std::size_t> basis;  // basic variable of each row
  std::size_t cols;

  // Maximizes the objective `obj` (size cols) over the current feasible
  // basis; returns false when unbounded.
  bool run(const std::vector<Rational>& obj, const std::vector<bool>& allowed) {
    const std::size_t m = t.size();
    for (;;) {
      // Reduced costs z_j - c_j; entering column = smallest j with c_j - z_j > 0.
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!allowed[j]) continue;
        bool basic = false;
        for (std::size_t i = 0; i < m; ++i) basic = basic || basis[i] == j;
        if (basic) continue;
        Rational red = obj[j];
        for (std::size_t i = 0; i < m; ++i) red -= obj[basis[i]] * t[i][j];
        if (red > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return true;
      // Ratio test with Bland tie-break on the leaving basic variable.
      std::size_t leave = m;
      Rational best(0);
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        const Rational ratio = t[i][cols] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = t[row][col];
    for (auto& x : t[row]) x /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == row || t[i][col] == 0) continue;
      const Rational f = t[i][col];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }
};

}  // namespace

LpResult solve_lp(const RationalLP& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  for (const auto& r : lp.rows) {
    if (r.size() != n) throw std::invalid_argument("LP row width mismatch");
  }
  if (lp.bounds.size() != m) throw std::invalid_argument("LP bound count mismatch");

  // Columns: n structural + m slack + (up to m) artificial.
  std::size_t art = 0;
  for (const auto& b : lp.bounds) {
    if (b < 0) ++art;
  }
  Tableau tab;
  tab.cols = n + m + art;
  tab.t.assign(m, std::vector<Rational>(tab.cols + 1, Rational(0)));
  tab.basis.assign(m, 0);
  std::size_t next_art = n + m;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = lp.bounds[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? -lp.rows[i][j] : lp.rows[i][j];
    tab.t[i][n + i] = flip ? Rational(-1) : Rational(1);
    tab.t[i][tab.cols] = flip ? -lp.bounds[i] : lp.bounds[i];
    if (flip) {
      tab.t[i][next_art] = 1;
      tab.basis[i] = next_art++;
    } else {
      tab.basis[i] = n + i;
    }
  }
  std::vector<bool> allowed(tab.cols, true);
  if (art > 0) {
    // Phase 1: drive the artificial variables to zero.
    std::vector<Rational> pobj(tab.cols, Rational(0));
    for (std::size_t j = n + m; j < tab.cols; ++j) pobj[j] = Rational(-1);
    tab.run(pobj, allowed);
    Rational infeas(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] >= n + m) infeas += tab.t[i][tab.cols];
    }
    if (infeas != 0) return LpInfeasible{};
    // Pivot leftover degenerate artificials out where possible and ban them.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] < n + m) continue;
      for (std::size_t j = 0; j < n + m; ++j) {
        if (tab.t[i][j] != 0) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = n + m; j < tab.cols; ++j) allowed[j] = false;
  }
  std::vector<Rational> obj(tab.cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) obj[j] = lp.objective[j];
  if (!tab.run(obj, allowed)) return LpUnbounded{};
  LpOptimum opt;
  opt.assignment.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) opt.assignment[tab.basis[i]] = tab.t[i][tab.cols];
  }
  opt.value = Rational(0);
  for (std::size_t j = 0; j < n; ++j) opt.value += lp.objective[j] * opt.assignment[j];
  return opt;
}

// ---------------------------------------------------------------------------
// FD^k

namespace {

struct FdkCells {
  std::vector<Rational> pts;                    // departure refinement
  std::vector<MonotoneMap> arrivals;            // A_{w,j}, index j-1, j = 1..|w|+1
  std::vector<bool> forced_zero;                // plateau cells
  std::vector<Rational> upper;                  // source-budget cap per cell
  // Per constraint target: list of (cap step function, indices j using it).
  struct Target {
    StepFunction cap;
    std::vector<std::size_t> js;  // 1-based walk indices
  };
  std::vector<Target> targets;
};

StepFunction floor_cap(const FdkProblem& p, const Rational& horizon) {
  // Destination arrival densities may not exceed -density(floor).
  if (!p.destination_floor.nonpositive_setwise()) {
    throw std::invalid_argument("destination floor must be nonpositive");
  }
  return extend_horizon(scale(p.destination_floor.density, Rational(-1)), horizon);
}

FdkCells build_fdk_cells(const TravelTimes& tt, const DynNetwork& net, const FdkProblem& p) {
  FdkCells fc;
  const std::size_t k = p.walk.edges.size();
  for (std::size_t j = 1; j <= k + 1; ++j) {
    fc.arrivals.push_back(arrival_function(tt, net, p.walk, j));
  }
  // Constraint targets: one per distinct edge of the walk plus the
  // destination, each with the walk indices that hit it.
  std::map<EdgeId, std::vector<std::size_t>> by_edge;
  for (std::size_t j = 1; j <= k; ++j) by_edge[p.walk.edges[j - 1]].push_back(j);
  for (const auto& [e, js] : by_edge) {
    const auto it = p.residual.find(e);
    StepFunction cap =
        it != p.residual.end() ? extend_horizon(it->second, tt.horizon) : StepFunction::zero(tt.horizon);
    if (!cap.nonnegative()) throw std::invalid_argument("residual must be nonnegative");
    fc.targets.push_back({std::move(cap), js});
  }
  fc.targets.push_back({floor_cap(p, tt.horizon), {k + 1}});

  // Departure refinement: arrival-map breakpoints plus preimages of every
  // cap breakpoint, plus the source budget breakpoints.
  std::vector<Rational> pts{Rational(0), tt.horizon};
  const StepFunction budget = extend_horizon(p.source_budget, tt.horizon);
  pts.insert(pts.end(), budget.breakpoints.begin(), budget.breakpoints.end());
  for (const auto& a : fc.arrivals) pts.insert(pts.end(), a.breakpoints.begin(), a.breakpoints.end());
  for (const auto& tgt : fc.targets) {
    for (const std::size_t j : tgt.js) {
      const auto& a = fc.arrivals[j - 1];
      for (const Rational& b : tgt.cap.breakpoints) {
        for (const auto& iv : preimage(a, Interval::closed(b, b))) {
          pts.push_back(iv.lo);
          pts.push_back(iv.hi);
        }
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  while (!pts.empty() && pts.back() > tt.horizon) pts.pop_back();
  fc.pts = std::move(pts);

  const std::size_t n = fc.pts.size() - 1;
  fc.forced_zero.assign(n, false);
  fc.upper.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    const Rational mid = (fc.pts[i] + fc.pts[i + 1]) / 2;
    fc.upper[i] = budget.value_at(mid);
    for (const auto& a : fc.arrivals) {
      if (a.eval(fc.pts[i]) == a.eval(fc.pts[i + 1])) {
        // Positive-length plateau of some arrival map: no load can exist.
        if (&a != &fc.arrivals.front()) fc.forced_zero[i] = true;
      }
    }
  }
  return fc;
}

struct FdkRow {
  std::map<std::size_t, Rational> coef;  // cell index -> coefficient
  Rational cap;
};

std::vector<FdkRow> build_fdk_rows(const FdkCells& fc) {
  std::vector<FdkRow> rows;
  const std::size_t n = fc.pts.size() - 1;
  for (const auto& tgt : fc.targets) {
    // Arrival refinement for this target.
    std::vector<Rational> q = tgt.cap.breakpoints;
    for (const std::size_t j : tgt.js) {
      for (const Rational& t : fc.pts) q.push_back(fc.arrivals[j - 1].eval(t));
    }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    for (std::size_t a = 0; a + 1 < q.size(); ++a) {
      const Rational mid = (q[a] + q[a + 1]) / 2;
      FdkRow row;
      row.cap = tgt.cap.value_at(mid);
      for (const std::size_t j : tgt.js) {
        const auto& A = fc.arrivals[j - 1];
        for (std::size_t i = 0; i < n; ++i) {
          if (fc.forced_zero[i]) continue;
          const Rational ya = A.eval(fc.pts[i]);
          const Rational yb = A.eval(fc.pts[i + 1]);
          if (ya == yb) continue;  // plateau at the identity index is impossible
          if (ya <= mid && mid < yb) {
            row.coef[i] += (fc.pts[i + 1] - fc.pts[i]) / (yb - ya);
          }
        }
      }
      if (!row.coef.empty()) rows.push_back(std::move(row));
    }
  }
  return rows;
}

StepFunction assemble_cells(const FdkCells& fc, const std::vector<Rational>& value) {
  std::vector<Rational> pts = fc.pts;
  std::vector<Rational> vals = value;
  return StepFunction::from_cells(std::move(pts), std::move(vals));
}

}  // namespace

StepFunction solve_fdk(const TravelTimes& tt, const DynNetwork& net, const FdkProblem& p) {
  if (!p.source_budget.nonnegative()) {
    throw std::invalid_argument("source budget must be nonnegative");
  }
  const FdkCells fc = build_fdk_cells(tt, net, p);
  const std::vector<FdkRow> rows = build_fdk_rows(fc);
  const std::size_t n = fc.pts.size() - 1;
  std::vector<Rational> value(n, Rational(0));

  // Union-find over cells coupled through shared rows.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& row : rows) {
    if (row.coef.size() < 2) continue;
    const std::size_t head = find(row.coef.begin()->first);
    for (const auto& [i, c] : row.coef) parent[find(i)] = head;
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fc.forced_zero[i] && fc.upper[i] > 0) groups[find(i)].push_back(i);
  }
  for (const auto& [root, cells] : groups) {
    if (cells.size() == 1) {
      // All rows touching this cell are single-variable caps.
      const std::size_t i = cells.front();
      Rational best = fc.upper[i];
      for (const auto& row : rows) {
        const auto it = row.coef.find(i);
        if (it != row.coef.end()) best = std::min(best, Rational(row.cap / it->second));
      }
      value[i] = std::max(best, Rational(0));
      continue;
    }
    RationalLP lp;
    std::map<std::size_t, std::size_t> var_of;
    for (const std::size_t i : cells) {
      var_of[i] = lp.objective.size();
      lp.objective.push_back(fc.pts[i + 1] - fc.pts[i]);
    }
    for (const std::size_t i : cells) {
      std::vector<Rational> r(lp.objective.size(), Rational(0));
      r[var_of[i]] = 1;
      lp.rows.push_back(std::move(r));
      lp.bounds.push_back(fc.upper[i]);
    }
    for (const auto& row : rows) {
      std::vector<Rational> r(lp.objective.size(), Rational(0));
      bool touches = false;
      for (const auto& [i, c] : row.coef) {
        const auto it = var_of.find(i);
        if (it != var_of.end()) {
          r[it->second] = c;
          touches = true;
        }
      }
      if (!touches) continue;
      lp.rows.push_back(std::move(r));
      lp.bounds.push_back(row.cap);
    }
    const LpResult res = solve_lp(lp);
    if (!std::holds_alternative<LpOptimum>(res)) {
      throw std::logic_error("maximal-subtraction LP is not solvable (bug)");
    }
    const auto& opt = std::get<LpOptimum>(res);
    for (const std::size_t i : cells) value[i] = opt.assignment[var_of[i]];
  }
  return assemble_cells(fc, value);
}

StepFunction solve_fdk_dense(const TravelTimes& tt, const DynNetwork& net, const FdkProblem& p) {
  if (!p.source_budget.nonnegative()) {
    throw std::invalid_argument("source budget must be nonnegative");
  }
  const FdkCells fc = build_fdk_cells(tt, net, p);
  const std::vector<FdkRow> rows = build_fdk_rows(fc);
  const std::size_t n = fc.pts.size() - 1;
  // One LP over every cell, with the plateau and budget constraints as
  // explicit rows; no grouping, no closed forms.
  RationalLP lp;
  for (std::size_t i = 0; i < n; ++i) lp.objective.push_back(fc.pts[i + 1] - fc.pts[i]);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> r(n, Rational(0));
    r[i] = 1;
    lp.rows.push_back(std::move(r));
    lp.bounds.push_back(fc.forced_zero[i] ? Rational(0) : fc.upper[i]);
  }
  for (const auto& row : rows) {
    std::vector<Rational> r(n, Rational(0));
    for (const auto& [i, c] : row.coef) r[i] = c;
    lp.rows.push_back(std::move(r));
    lp.bounds.push_back(row.cap);
  }
  const LpResult res = solve_lp(lp);
  if (!std::holds_alternative<LpOptimum>(res)) {
    throw std::logic_error("dense maximal-subtraction LP is not solvable (bug)");
  }
  return assemble_cells(fc, std::get<LpOptimum>(res).assignment);
}

// ---------------------------------------------------------------------------
// Decomposition

EdgeFlowVector reconstruct(const TravelTimes& tt, const DynNetwork& net, const Decomposition& d) {
  EdgeFlowVector out;
  for (const auto& e : net.edges) out.emplace(e.id, StepFunction::zero(tt.horizon));
  for (const auto& [w, h] : d.walk_inflows) {
    auto r = parameterized_load(tt, net, w, h);
    if (!std::holds_alternative<EdgeFlowVector>(r)) {
      throw std::runtime_error("decomposition walk inflow has no load");
    }
    for (const auto& [e, f] : std::get<EdgeFlowVector>(r)) out.at(e) = pw_add(out.at(e), f);
  }
  for (const auto& [c, h] : d.cycle_inflows) {
    const StepFunction hx = extend_horizon(h, tt.horizon);
    for (const EdgeId& e : c.edges) out.at(e) = pw_add(out.at(e), hx);
  }
  return out;
}

Decomposition decompose(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                        const DecomposeConfig& cfg) {
  auto vr = validate_sd_flow(tt, net, g);
  if (std::holds_alternative<FlowViolation>(vr)) {
    const auto& v = std::get<FlowViolation>(vr);
    throw std::invalid_argument("not an s,d-flow: " + v.message + " at node " + v.node);
  }
  EdgeFlowVector residual;
  for (const auto& e : net.edges) {
    const auto it = g.find(e.id);
    residual.emplace(e.id, it != g.end() ? extend_horizon(it->second, tt.horizon)
                                         : StepFunction::zero(tt.horizon));
  }
  StepFunction r_s = std::get<SdFlowCertificate>(vr).r_s;

  Rational budget(0);
  if (cfg.budget) {
    budget = *cfg.budget;
  } else {
    for (const auto& [e, f] : residual) {
      if (auto end = f.support_end()) budget = std::max(budget, *end);
    }
  }
  std::map<EdgeId, Rational> min_travel;
  for (const auto& e : net.edges) min_travel[e.id] = e.model.min_delay();

  Decomposition dec;
  for_each_sd_walk(net, min_travel, budget, cfg.length_cap, [&](const Walk& w) {
    if (r_s.is_zero()) return false;  // nothing left to route
    ++dec.iterations;
    FdkProblem p;
    p.walk = w;
    p.residual = residual;
    p.source_budget = r_s;
    p.destination_floor = node_balance(tt, net, residual, net.destination);
    const StepFunction h = solve_fdk(tt, net, p);
    if (h.is_zero()) return true;
    auto lr = parameterized_load(tt, net, w, h);
    if (!std::holds_alternative<EdgeFlowVector>(lr)) {
      throw std::logic_error("maximal subtraction produced a non-loadable inflow (bug)");
    }
    for (const auto& [e, f] : std::get<EdgeFlowVector>(lr)) {
      residual.at(e) = pw_sub(residual.at(e), f);
      if (!residual.at(e).nonnegative()) {
        throw std::logic_error("walk subtraction drove the residual negative (bug)");
      }
    }
    r_s = pw_sub(r_s, h);
    if (!r_s.nonnegative()) {
      throw std::logic_error("walk subtraction drove the source budget negative (bug)");
    }
    dec.walk_inflows[w] = h;
    return true;
  });

  // The leftover must be a zero-travel circulation.
  for (const auto& v : net.nodes) {
    const TimeMeasure m = node_balance(tt, net, residual, v);
    if (!m.is_zero()) {
      throw std::runtime_error(
          "residual after the walk phase is not a circulation (node " + v +
          "); the flow is invalid or the walk budget/length cap is too small");
    }
  }
  if (auto wtn = is_zero_supported(tt, net, residual)) {
    throw std::runtime_error("residual after the walk phase is carried on edge " + wtn->edge +
                             " with positive travel time; the flow is invalid or the walk "
                             "budget/length cap is too small");
  }
  dec.cycle_inflows = zero_cycle_decompose(tt, net, residual);
  return dec;
}

std::map<SimpleCycle, StepFunction> zero_cycle_decompose(const TravelTimes& tt,
                                                         const DynNetwork& net,
                                                         const EdgeFlowVector& g_star) {
  const std::vector<SimpleCycle> cycles = enumerate_simple_cycles(net);
  EdgeFlowVector res;
  std::vector<const StepFunction*> fs;
  std::vector<const PiecewiseLinear*> ds;
  for (const auto& e : net.edges) {
    const auto it = g_star.find(e.id);
    res.emplace(e.id, it != g_star.end() ? extend_horizon(it->second, tt.horizon)
                                         : StepFunction::zero(tt.horizon));
    ds.push_back(&tt.delay_of(e.id));
  }
  for (const auto& [e, f] : res) fs.push_back(&f);
  const std::vector<Rational> cuts = refine(fs, ds, tt.horizon);

  std::map<SimpleCycle, std::vector<Rational>> cell_values;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    std::map<EdgeId, Rational> val;
    for (const auto& [e, f] : res) val[e] = f.value_at(mid);
    for (const auto& c : cycles) {
      bool zero_travel = true;
      for (const EdgeId& e : c.edges) {
        const auto& d = tt.delay_of(e);
        zero_travel = zero_travel && d.eval(cuts[i]) == 0 && d.eval(cuts[i + 1]) == 0;
      }
      Rational m = zero_travel ? val[c.edges.front()] : Rational(0);
      if (zero_travel) {
        for (const EdgeId& e : c.edges) m = std::min(m, val[e]);
      }
      if (m > 0) {
        for (const EdgeId& e : c.edges) val[e] -= m;
      }
      auto& cv = cell_values[c];
      cv.resize(cuts.size() - 1, Rational(0));
      cv[i] = m > 0 ? m : Rational(0);
    }
    for (const auto& [e, v] : val) {
      if (v != 0) {
        std::ostringstream os;
        os << "circulation residual " << rational_to_string(v) << " left on edge " << e
           << " over [" << rational_to_string(cuts[i]) << ", " << rational_to_string(cuts[i + 1])
           << ")";
        throw std::runtime_error(os.str());
      }
    }
  }
  std::map<SimpleCycle, StepFunction> out;
  for (auto& [c, vals] : cell_values) {
    std::vector<Rational> pts = cuts;
    StepFunction h = StepFunction::from_cells(std::move(pts), std::move(vals));
    if (!h.is_zero()) out.emplace(c, std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flow-carrying walk

namespace {

struct TreeNode {
  NodeId v;
  std::size_t parent;  // index; the root points to itself
  EdgeId in_edge;      // empty for the root
  StepFunction outflow;  // rate arriving at v along in_edge (r_s at the root)
};

}  // namespace

std::variant<FlowCarryingWalk, NoPositiveSourceOutflow> find_flow_carrying_walk(
    const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g) {
  auto vr = validate_sd_flow(tt, net, g);
  if (std::holds_alternative<FlowViolation>(vr)) {
    const auto& v = std::get<FlowViolation>(vr);
    throw std::invalid_argument("not an s,d-flow: " + v.message + " at node " + v.node);
  }
  const StepFunction r_s = std::get<SdFlowCertificate>(vr).r_s;
  if (r_s.is_zero()) return NoPositiveSourceOutflow{};

  EdgeFlowVector delta;
  Rational total_mass(0);
  for (const auto& e : net.edges) {
    const auto it = g.find(e.id);
    delta.emplace(e.id, it != g.end() ? extend_horizon(it->second, tt.horizon)
                                      : StepFunction::zero(tt.horizon));
    total_mass += integrate(delta.at(e.id));
  }
  const Rational source_mass = integrate(r_s);
  // Termination bound on the number of expanded levels.
  const std::size_t depth_bound =
      rational_floor(Rational(total_mass / source_mass)).convert_to<std::size_t>() + 1;

  std::vector<TreeNode> nodes;
  nodes.push_back({net.source, 0, "", r_s});
  std::vector<std::size_t> frontier{0};
  for (std::size_t depth = 0;; ++depth) {
    if (depth > depth_bound) {
      throw std::logic_error("flow-carrying-walk search exceeded its termination bound (bug)");
    }
    std::vector<std::size_t> next;
    for (const std::size_t ni : frontier) {
      const NodeId v = nodes[ni].v;
      const StepFunction r = nodes[ni].outflow;
      const auto outs = net.out_edges(v);
      // Greedy pointwise split of r across the outgoing residuals.
      std::vector<const StepFunction*> fs{&r};
      for (const EdgeDef* e : outs) fs.push_back(&delta.at(e->id));
      const std::vector<Rational> cuts = refine(fs, {}, tt.horizon);
      std::map<EdgeId, std::vector<Rational>> take;
      std::vector<Rational> excess(cuts.size() - 1, Rational(0));
      bool failed = false;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
        Rational rem = r.value_at(mid);
        for (const EdgeDef* e : outs) {
          const Rational amt = std::min(rem, delta.at(e->id).value_at(mid));
          take[e->id].push_back(amt);
          rem -= amt;
        }
        excess[i] = rem;
        failed = failed || rem > 0;
      }
      if (failed) {
        if (v != net.destination) {
          throw std::logic_error("outflow split failed away from the destination (bug)");
        }
        // Back-propagate the unforwardable excess along the tree walk.
        std::vector<EdgeId> path;
        for (std::size_t cur = ni; cur != 0; cur = nodes[cur].parent) {
          path.push_back(nodes[cur].in_edge);
        }
        std::reverse(path.begin(), path.end());
        std::vector<Rational> pts = cuts;
        StepFunction f = StepFunction::from_cells(std::move(pts), std::move(excess));
        for (std::size_t j = path.size(); j-- > 0;) {
          f = inverse_load(tt, net, Walk{{path[j]}}, 2, f);
        }
        return FlowCarryingWalk{Walk{std::move(path)}, std::move(f), depth};
      }
      for (const EdgeDef* e : outs) {
        std::vector<Rational> pts = cuts;
        StepFunction fe = StepFunction::from_cells(std::move(pts), std::move(take[e->id]));
        if (fe.is_zero()) continue;
        delta.at(e->id) = pw_sub(delta.at(e->id), fe);
        const TimeMeasure m = pushforward(fe, tt.exit_of(e->id));
        if (!m.atoms.empty()) {
          throw std::runtime_error("edge outflow along " + e->id +
                                   " is not absolutely continuous");
        }
        nodes.push_back({e->head, ni, e->id, m.density});
        next.push_back(nodes.size() - 1);
      }
    }
    if (next.empty()) {
      throw std::logic_error("flow-carrying-walk search ran out of leaves (bug)");
    }
    frontier = std::move(next);
  }
}

}  // namespace dynflow
