#include "dynflow/json_io.hpp"

#include <stdexcept>

namespace dynflow {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<Rational> rational_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(json_to_rational(x));
  return out;
}

std::vector<std::string> string_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) fail(std::string(what) + " must contain strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Json rationals_to_json(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const Rational& x : xs) out.push_back(rational_to_string(x));
  return out;
}

}  // namespace

Rational json_to_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) fail("rationals must be strings like \"p/q\"");
  return parse_rational(j.get<std::string>());
}

StepFunction json_to_step(const Json& j) {
  return StepFunction::from_cells(rational_array(field(j, "breakpoints"), "breakpoints"),
                                  rational_array(field(j, "values"), "values"));
}

PiecewiseLinear json_to_pwl(const Json& j) {
  return PiecewiseLinear::from_points(rational_array(field(j, "breakpoints"), "breakpoints"),
                                      rational_array(field(j, "values"), "values"));
}

TravelTimeModel json_to_model(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) fail("model kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "vickrey") {
    return TravelTimeModel::vickrey(json_to_rational(field(j, "tau")),
                                    json_to_rational(field(j, "nu")));
  }
  if (k == "linear_delay") {
    return TravelTimeModel::linear_delay(json_to_rational(field(j, "tau")),
                                         json_to_rational(field(j, "nu")));
  }
  if (k == "exogenous") {
    return TravelTimeModel::exogenous(json_to_pwl(field(j, "D")));
  }
  fail("unknown model kind \"" + k + "\"");
}

DynNetwork json_to_network(const Json& j) {
  DynNetwork net;
  net.nodes = string_array(field(j, "nodes"), "nodes");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) fail("edges must be an array");
  for (const auto& e : edges) {
    EdgeDef def;
    def.id = field(e, "id").get<std::string>();
    def.tail = field(e, "tail").get<std::string>();
    def.head = field(e, "head").get<std::string>();
    def.model = json_to_model(field(e, "model"));
    net.edges.push_back(std::move(def));
  }
  net.source = field(j, "source").get<std::string>();
  net.destination = field(j, "destination").get<std::string>();
  net.horizon = json_to_rational(field(j, "horizon"));
  net.validate();
  return net;
}

EdgeFlowVector json_to_edge_flows(const Json& j, const DynNetwork& net) {
  const Json& flows = field(j, "flows");
  if (!flows.is_object()) fail("flows must be an object keyed by edge id");
  EdgeFlowVector out;
  for (const auto& [e, f] : flows.items()) {
    net.edge(e);  // throws on unknown ids
    StepFunction sf = json_to_step(f);
    if (!sf.nonnegative()) fail("flow on edge " + e + " is negative");
    out.emplace(e, std::move(sf));
  }
  return out;
}

WalkInflowMap json_to_walk_inflows(const Json& j, const DynNetwork& net) {
  const Json& inflows = field(j, "inflows");
  if (!inflows.is_array()) fail("inflows must be an array");
  WalkInflowMap out;
  for (const auto& entry : inflows) {
    Walk w{string_array(field(entry, "walk"), "walk")};
    if (const auto bad = validate_walk(net, w, true)) {
      fail("inflow walk invalid at index " + std::to_string(bad->index) + ": " + bad->message);
    }
    StepFunction rate = json_to_step(field(entry, "rate"));
    if (!rate.nonnegative()) fail("walk inflow rate is negative");
    const auto it = out.find(w);
    if (it == out.end()) {
      out.emplace(std::move(w), std::move(rate));
    } else {
      const Rational h = std::max(it->second.horizon(), rate.horizon());
      it->second = pw_add(extend_horizon(it->second, h), extend_horizon(rate, h));
    }
  }
  return out;
}

Decomposition json_to_decomposition(const Json& j, const DynNetwork& net) {
  Decomposition out;
  const Json& walks = field(j, "walks");
  if (!walks.is_array()) fail("walks must be an array");
  for (const auto& entry : walks) {
    Walk w{string_array(field(entry, "walk"), "walk")};
    if (const auto bad = validate_walk(net, w, true)) {
      fail("decomposition walk invalid at index " + std::to_string(bad->index) + ": " +
           bad->message);
    }
    StepFunction rate = json_to_step(field(entry, "rate"));
    if (!rate.nonnegative()) fail("walk inflow rate is negative");
    out.walk_inflows.emplace(std::move(w), std::move(rate));
  }
  const Json& cycles = field(j, "cycles");
  if (!cycles.is_array()) fail("cycles must be an array");
  for (const auto& entry : cycles) {
    std::vector<EdgeId> ids = string_array(field(entry, "cycle"), "cycle");
    Walk as_walk{ids};
    if (const auto bad = validate_walk(net, as_walk, false)) {
      fail("decomposition cycle invalid at index " + std::to_string(bad->index) + ": " +
           bad->message);
    }
    if (net.edge(ids.front()).tail != net.edge(ids.back()).head) {
      fail("decomposition cycle is not closed");
    }
    StepFunction rate = json_to_step(field(entry, "rate"));
    if (!rate.nonnegative()) fail("cycle inflow rate is negative");
    out.cycle_inflows.emplace(SimpleCycle::canonical(std::move(ids)), std::move(rate));
  }
  return out;
}

Json rational_to_json(const Rational& r) { return rational_to_string(r); }

Json step_to_json(const StepFunction& f) {
  return Json{{"breakpoints", rationals_to_json(f.breakpoints)},
              {"values", rationals_to_json(f.values)}};
}

Json pwl_to_json(const PiecewiseLinear& f) {
  return Json{{"breakpoints", rationals_to_json(f.breakpoints)},
              {"values", rationals_to_json(f.values)}};
}

Json edge_flows_to_json(const EdgeFlowVector& g) {
  Json flows = Json::object();
  for (const auto& [e, f] : g) flows[e] = step_to_json(f);
  return Json{{"flows", std::move(flows)}};
}

Json travel_times_to_json(const TravelTimes& tt) {
  Json delays = Json::object();
  Json exits = Json::object();
  for (const auto& [e, d] : tt.delay) delays[e] = pwl_to_json(d);
  for (const auto& [e, t] : tt.exit) exits[e] = pwl_to_json(t);
  return Json{{"horizon", rational_to_json(tt.horizon)},
              {"delays", std::move(delays)},
              {"exits", std::move(exits)}};
}

Json decomposition_to_json(const Decomposition& d) {
  Json walks = Json::array();
  for (const auto& [w, h] : d.walk_inflows) {
    walks.push_back(Json{{"walk", w.edges}, {"rate", step_to_json(h)}});
  }
  Json cycles = Json::array();
  for (const auto& [c, h] : d.cycle_inflows) {
    cycles.push_back(Json{{"cycle", c.edges}, {"rate", step_to_json(h)}});
  }
  return Json{{"walks", std::move(walks)}, {"cycles", std::move(cycles)}};
}

Json purity_to_json(const std::vector<PurityWitness>& witnesses) {
  Json out;
  out["verdict"] = witnesses.empty() ? "pure" : "witnesses";
  Json ws = Json::array();
  for (const PurityWitness& w : witnesses) {
    Json cycles = Json::array();
    for (const SimpleCycle& c : w.component.cycles) cycles.push_back(c.edges);
    Json comp{{"cycles", std::move(cycles)},
              {"nodes", std::vector<NodeId>(w.component.nodes.begin(), w.component.nodes.end())},
              {"edges", std::vector<EdgeId>(w.component.edges.begin(), w.component.edges.end())}};
    ws.push_back(Json{{"component", std::move(comp)},
                      {"interval", Json::array({rational_to_json(w.cell.lo),
                                                rational_to_json(w.cell.hi)})}});
  }
  out["witnesses"] = std::move(ws);
  return out;
}

}  // namespace dynflow
