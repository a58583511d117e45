#include "dynflow/balance.hpp"

#include <sstream>
#include <stdexcept>

namespace dynflow {

namespace {

StepFunction flow_of(const EdgeFlowVector& g, const EdgeId& e, const Rational& horizon) {
  const auto it = g.find(e);
  if (it == g.end()) return StepFunction::zero(horizon);
  if (!it->second.nonnegative()) {
    throw std::invalid_argument("edge flow must be nonnegative: " + e);
  }
  return extend_horizon(it->second, horizon);
}

// First cell (on the canonical refinement) where the density violates `ok`,
// as a witness interval with its signed mass.
std::optional<std::pair<Interval, Rational>> first_bad_cell(
    const StepFunction& density, const std::function<bool(const Rational&)>& ok) {
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    if (!ok(density.values[i])) {
      const Interval cell =
          Interval::closed_open(density.breakpoints[i], density.breakpoints[i + 1]);
      return std::make_pair(cell, Rational(density.values[i] * cell.length()));
    }
  }
  return std::nullopt;
}

}  // namespace

TimeMeasure node_balance(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                         const NodeId& v) {
  if (!net.has_node(v)) throw std::invalid_argument("unknown node: " + v);
  TimeMeasure m = TimeMeasure::zero(tt.horizon);
  for (const EdgeDef* e : net.out_edges(v)) {
    m = measure_add(m, TimeMeasure::from_density(flow_of(g, e->id, tt.horizon)));
  }
  for (const EdgeDef* e : net.in_edges(v)) {
    m = measure_sub(m, pushforward(flow_of(g, e->id, tt.horizon), tt.exit_of(e->id)));
  }
  return m;
}

NodeBalanceReport node_balances(const TravelTimes& tt, const DynNetwork& net,
                                const EdgeFlowVector& g) {
  NodeBalanceReport rep;
  for (const NodeId& v : net.nodes) {
    TimeMeasure m = node_balance(tt, net, g, v);
    NodeClassification c;
    c.rate = StepFunction::zero(tt.horizon);
    if (!m.atoms.empty()) {
      c.kind = NodeClassification::Kind::NonAbsolutelyContinuous;
      c.atoms = m.atoms;
    } else if (m.density.is_zero()) {
      c.kind = NodeClassification::Kind::Conserving;
    } else if (m.density.nonnegative()) {
      c.kind = NodeClassification::Kind::NetSource;
      c.rate = m.density;
    } else if (scale(m.density, Rational(-1)).nonnegative()) {
      c.kind = NodeClassification::Kind::NetSink;
      c.rate = scale(m.density, Rational(-1));
    } else {
      c.kind = NodeClassification::Kind::Mixed;
    }
    rep.classes.emplace(v, std::move(c));
    rep.balances.emplace(v, std::move(m));
  }
  return rep;
}

std::variant<SdFlowCertificate, FlowViolation> validate_sd_flow(const TravelTimes& tt,
                                                                const DynNetwork& net,
                                                                const EdgeFlowVector& g) {
  for (const NodeId& v : net.nodes) {
    TimeMeasure m = node_balance(tt, net, g, v);
    if (v == net.source) {
      if (!m.atoms.empty()) {
        return FlowViolation{v, Interval::point(m.atoms.front().first), m.atoms.front().second,
                             "source balance has an atom"};
      }
      if (auto bad = first_bad_cell(m.density, [](const Rational& x) { return x >= 0; })) {
        return FlowViolation{v, bad->first, bad->second, "source balance is negative"};
      }
    } else if (v == net.destination) {
      for (const auto& [loc, mass] : m.atoms) {
        if (mass > 0) {
          return FlowViolation{v, Interval::point(loc), mass,
                               "destination balance has a positive atom"};
        }
      }
      if (auto bad = first_bad_cell(m.density, [](const Rational& x) { return x <= 0; })) {
        return FlowViolation{v, bad->first, bad->second, "destination balance is positive"};
      }
    } else {
      if (!m.atoms.empty()) {
        return FlowViolation{v, Interval::point(m.atoms.front().first), m.atoms.front().second,
                             "interior balance has an atom"};
      }
      if (auto bad = first_bad_cell(m.density, [](const Rational& x) { return x == 0; })) {
        return FlowViolation{v, bad->first, bad->second, "flow not conserved at interior node"};
      }
    }
  }
  SdFlowCertificate cert;
  cert.r_s = node_balance(tt, net, g, net.source).density;
  cert.destination_balance = node_balance(tt, net, g, net.destination);
  return cert;
}

std::optional<ZeroSupportWitness> is_zero_supported(const TravelTimes& tt, const DynNetwork& net,
                                                    const EdgeFlowVector& g) {
  for (const auto& e : net.edges) {
    const StepFunction ge = flow_of(g, e.id, tt.horizon);
    const PiecewiseLinear& d = tt.delay_of(e.id);
    const auto cuts = refine({&ge}, {&d});
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (ge.value_at(cuts[i]) == 0) continue;
      if (d.eval(cuts[i]) != 0 || d.eval(cuts[i + 1]) != 0) {
        return ZeroSupportWitness{e.id, Interval::closed_open(cuts[i], cuts[i + 1])};
      }
    }
  }
  return std::nullopt;
}

Rational total_travel_time(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g) {
  Rational direct(0);
  for (const auto& e : net.edges) {
    const StepFunction ge = flow_of(g, e.id, tt.horizon);
    direct += integrate_product(tt.delay_of(e.id), ge,
                                Interval::closed(Rational(0), tt.horizon));
  }
  Rational via_balances(0);
  for (const NodeId& v : net.nodes) {
    via_balances += integrate_neg_id(node_balance(tt, net, g, v));
  }
  if (direct != via_balances) {
    std::ostringstream os;
    os << "total travel time mismatch: direct " << rational_to_string(direct)
       << " vs node-balance form " << rational_to_string(via_balances);
    throw std::logic_error(os.str());
  }
  return direct;
}

}  // namespace dynflow
