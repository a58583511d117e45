// Command-line surface: file I/O around the loading, decomposition and
// purity operations. Exit codes: 0 ok, 2 parse error, 3 loading failure,
// 4 invalid flow, 5 walk budget exhausted, 6 reconstruction mismatch.

#include "dynflow/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace dynflow;

constexpr int kExitParse = 2;
constexpr int kExitLoading = 3;
constexpr int kExitInvalidFlow = 4;
constexpr int kExitBudget = 5;
constexpr int kExitMismatch = 6;

struct CommandError {
  int code;
  std::string message;
};

struct Output {
  std::string out_path;      // empty: primary document goes to stdout
  std::string format = "json";

  // Primary JSON document plus a deterministic line-oriented summary.
  void emit(const Json& doc, const std::vector<std::string>& summary) const {
    if (!out_path.empty()) {
      std::ofstream os(out_path);
      if (!os) throw CommandError{kExitParse, "cannot open output file " + out_path};
      os << doc.dump(2) << "\n";
    }
    if (format == "text") {
      for (const auto& line : summary) std::cout << line << "\n";
    } else if (out_path.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      Json s = Json::object();
      s["summary"] = summary;
      std::cout << s.dump(2) << "\n";
    }
  }
};

Json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CommandError{kExitParse, "cannot open " + path};
  try {
    return Json::parse(is);
  } catch (const std::exception& e) {
    throw CommandError{kExitParse, path + ": " + e.what()};
  }
}

DynNetwork load_network(const std::string& path) {
  try {
    return json_to_network(read_json(path));
  } catch (const CommandError&) {
    throw;
  } catch (const std::exception& e) {
    throw CommandError{kExitParse, path + ": " + std::string(e.what())};
  }
}

template <typename F>
auto parse_with(const std::string& path, F&& f) {
  const Json j = read_json(path);
  try {
    return f(j);
  } catch (const std::exception& e) {
    throw CommandError{kExitParse, path + ": " + std::string(e.what())};
  }
}

std::string interval_str(const Interval& iv) {
  return "[" + rational_to_string(iv.lo) + ", " + rational_to_string(iv.hi) + ")";
}

// Validates g as an s,d-flow under its own travel times; CommandError(4) with
// the witness on violation.
SdFlowCertificate require_sd_flow(const TravelTimes& tt, const DynNetwork& net,
                                  const EdgeFlowVector& g) {
  auto r = validate_sd_flow(tt, net, g);
  if (std::holds_alternative<FlowViolation>(r)) {
    const auto& v = std::get<FlowViolation>(r);
    throw CommandError{kExitInvalidFlow, "invalid flow: " + v.message + " at node " + v.node +
                                             " on " + interval_str(v.where) + " (mass " +
                                             rational_to_string(v.discrepancy) + ")"};
  }
  return std::get<SdFlowCertificate>(r);
}

// Exact reconstruction identity; CommandError(6) naming the first witness
// cell on mismatch.
void require_reconstruction(const TravelTimes& tt, const DynNetwork& net, const EdgeFlowVector& g,
                            const Decomposition& dec) {
  const EdgeFlowVector back = reconstruct(tt, net, dec);
  for (const auto& e : net.edges) {
    const auto it = g.find(e.id);
    const StepFunction ge = it != g.end() ? extend_horizon(it->second, tt.horizon)
                                          : StepFunction::zero(tt.horizon);
    const StepFunction& re = back.at(e.id);
    if (re == ge) continue;
    const auto cuts = refine({&ge, &re}, {});
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
      if (ge.value_at(mid) != re.value_at(mid)) {
        throw CommandError{
            kExitMismatch,
            "reconstruction mismatch on edge " + e.id + " over " +
                interval_str(Interval::closed_open(cuts[i], cuts[i + 1])) + ": flow " +
                rational_to_string(ge.value_at(mid)) + " vs decomposition " +
                rational_to_string(re.value_at(mid))};
      }
    }
  }
}

int cmd_load(const std::string& net_path, const std::string& inflow_path, const Output& out) {
  const DynNetwork net = load_network(net_path);
  const WalkInflowMap h =
      parse_with(inflow_path, [&](const Json& j) { return json_to_walk_inflows(j, net); });
  LoadingResult lr;
  try {
    lr = network_loading(net, h);
  } catch (const std::exception& e) {
    throw CommandError{kExitLoading, std::string("loading failed: ") + e.what()};
  }
  Json doc = edge_flows_to_json(lr.flows);
  const Json tt = travel_times_to_json(lr.times);
  doc["horizon"] = tt.at("horizon");
  doc["delays"] = tt.at("delays");
  std::vector<std::string> summary{"horizon = " + rational_to_string(lr.times.horizon)};
  for (const auto& [e, f] : lr.flows) {
    summary.push_back("mass " + e + " = " + rational_to_string(integrate(f)));
  }
  out.emit(doc, summary);
  return 0;
}

int cmd_traveltimes(const std::string& net_path, const std::string& flow_path, const Output& out) {
  const DynNetwork net = load_network(net_path);
  const EdgeFlowVector g =
      parse_with(flow_path, [&](const Json& j) { return json_to_edge_flows(j, net); });
  TravelTimes tt;
  try {
    tt = travel_times(net, g);
  } catch (const std::exception& e) {
    throw CommandError{kExitLoading, std::string("travel-time computation failed: ") + e.what()};
  }
  std::vector<std::string> summary{"horizon = " + rational_to_string(tt.horizon)};
  for (const auto& [e, d] : tt.delay) {
    summary.push_back("delay " + e + " at 0 = " + rational_to_string(d.eval(Rational(0))) +
                      ", segments = " + std::to_string(d.values.size() - 1));
  }
  out.emit(travel_times_to_json(tt), summary);
  return 0;
}

int cmd_decompose(const std::string& net_path, const std::string& flow_path,
                  const std::optional<std::string>& budget, std::optional<int> max_walk_len,
                  const Output& out) {
  const DynNetwork net = load_network(net_path);
  const EdgeFlowVector g =
      parse_with(flow_path, [&](const Json& j) { return json_to_edge_flows(j, net); });
  const TravelTimes tt = travel_times(net, g);
  require_sd_flow(tt, net, g);
  DecomposeConfig cfg;
  if (budget) {
    try {
      cfg.budget = parse_rational(*budget);
    } catch (const std::exception& e) {
      throw CommandError{kExitParse, std::string("--budget: ") + e.what()};
    }
  }
  cfg.length_cap = max_walk_len;
  Decomposition dec;
  try {
    dec = decompose(tt, net, g, cfg);
  } catch (const std::invalid_argument& e) {
    throw CommandError{kExitParse, e.what()};
  } catch (const std::runtime_error& e) {
    throw CommandError{kExitBudget, e.what()};
  }
  Rational walk_mass(0), cycle_mass(0);
  for (const auto& [w, hw] : dec.walk_inflows) walk_mass += integrate(hw);
  for (const auto& [c, hc] : dec.cycle_inflows) cycle_mass += integrate(hc);
  std::vector<std::string> summary{
      "walks = " + std::to_string(dec.walk_inflows.size()),
      "walk mass = " + rational_to_string(walk_mass),
      "cycles = " + std::to_string(dec.cycle_inflows.size()),
      "cycle mass = " + rational_to_string(cycle_mass),
      "iterations = " + std::to_string(dec.iterations),
  };
  out.emit(decomposition_to_json(dec), summary);
  return 0;
}

int cmd_verify(const std::string& net_path, const std::string& flow_path,
               const std::optional<std::string>& dec_path, const Output& out) {
  const DynNetwork net = load_network(net_path);
  const EdgeFlowVector g =
      parse_with(flow_path, [&](const Json& j) { return json_to_edge_flows(j, net); });
  const TravelTimes tt = travel_times(net, g);
  const SdFlowCertificate cert = require_sd_flow(tt, net, g);
  Json doc;
  doc["flow"] = "valid";
  doc["source_outflow"] = step_to_json(cert.r_s);
  std::vector<std::string> summary{
      "flow: valid s,d-flow",
      "source mass = " + rational_to_string(integrate(cert.r_s)),
  };
  if (dec_path) {
    const Decomposition dec =
        parse_with(*dec_path, [&](const Json& j) { return json_to_decomposition(j, net); });
    require_reconstruction(tt, net, g, dec);
    doc["reconstruction"] = "exact";
    summary.push_back("reconstruction: exact");
  }
  out.emit(doc, summary);
  return 0;
}

int cmd_check_pure(const std::string& net_path, const std::string& flow_path,
                   const std::string& dec_path, const Output& out) {
  const DynNetwork net = load_network(net_path);
  const EdgeFlowVector g =
      parse_with(flow_path, [&](const Json& j) { return json_to_edge_flows(j, net); });
  const TravelTimes tt = travel_times(net, g);
  const Decomposition dec =
      parse_with(dec_path, [&](const Json& j) { return json_to_decomposition(j, net); });
  require_reconstruction(tt, net, g, dec);
  const PurityResult res = check_pure(tt, net, g, dec);
  std::vector<std::string> summary{std::string("verdict: ") +
                                   (res.pure ? "pure" : "witnesses")};
  for (const auto& w : res.witnesses) {
    summary.push_back("witness on " + interval_str(w.cell));
  }
  out.emit(purity_to_json(res.witnesses), summary);
  return 0;
}

int cmd_purify(const std::string& net_path, const std::string& flow_path,
               const std::string& dec_path, const Output& out) {
  const DynNetwork net = load_network(net_path);
  const EdgeFlowVector g =
      parse_with(flow_path, [&](const Json& j) { return json_to_edge_flows(j, net); });
  const TravelTimes tt = travel_times(net, g);
  const Decomposition dec =
      parse_with(dec_path, [&](const Json& j) { return json_to_decomposition(j, net); });
  require_reconstruction(tt, net, g, dec);
  const PurifyResult res = purify(tt, net, g, dec);
  Json doc = decomposition_to_json(res.decomposition);
  doc["purity"] = purity_to_json(res.witnesses);
  std::vector<std::string> summary{
      std::string("verdict: ") + (res.pure ? "pure" : "maximally pure (witnesses retained)"),
      "walks = " + std::to_string(res.decomposition.walk_inflows.size()),
      "cycles = " + std::to_string(res.decomposition.cycle_inflows.size()),
  };
  for (const auto& w : res.witnesses) {
    summary.push_back("witness on " + interval_str(w.cell));
  }
  out.emit(doc, summary);
  return 0;
}

int cmd_find_walk(const std::string& net_path, const std::string& flow_path, const Output& out) {
  const DynNetwork net = load_network(net_path);
  const EdgeFlowVector g =
      parse_with(flow_path, [&](const Json& j) { return json_to_edge_flows(j, net); });
  const TravelTimes tt = travel_times(net, g);
  require_sd_flow(tt, net, g);
  const auto r = find_flow_carrying_walk(tt, net, g);
  Json doc;
  std::vector<std::string> summary;
  if (std::holds_alternative<NoPositiveSourceOutflow>(r)) {
    doc["found"] = false;
    summary.push_back("no positive source outflow");
  } else {
    const auto& fc = std::get<FlowCarryingWalk>(r);
    doc["found"] = true;
    doc["walk"] = fc.walk.edges;
    doc["rate"] = step_to_json(fc.inflow);
    doc["tree_depth"] = fc.tree_depth;
    std::string edges;
    for (const auto& e : fc.walk.edges) edges += (edges.empty() ? "" : " ") + e;
    summary.push_back("walk: " + edges);
    summary.push_back("mass = " + rational_to_string(integrate(fc.inflow)));
    summary.push_back("tree depth = " + std::to_string(fc.tree_depth));
  }
  out.emit(doc, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dynamic network flows: loading, decomposition, purity"};
  app.require_subcommand(1);

  std::string net_path, aux_path, dec_path;
  std::optional<std::string> opt_dec_path_str;
  std::optional<std::string> budget;
  std::optional<int> max_walk_len;
  std::string order = "edgecount-lex";
  Output out;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out.out_path, "write the primary document to this file");
    cmd->add_option("--format", out.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* load = app.add_subcommand("load", "load walk inflows into edge flows");
  load->add_option("network", net_path)->required();
  load->add_option("inflows", aux_path)->required();
  add_common(load);

  CLI::App* tts = app.add_subcommand("traveltimes", "travel times induced by an edge flow");
  tts->add_option("network", net_path)->required();
  tts->add_option("flows", aux_path)->required();
  add_common(tts);

  CLI::App* dec = app.add_subcommand("decompose", "decompose an s,d-flow into walks and cycles");
  dec->add_option("network", net_path)->required();
  dec->add_option("flows", aux_path)->required();
  dec->add_option("--budget", budget, "walk enumeration budget, a rational \"p/q\"");
  dec->add_option("--max-walk-len", max_walk_len, "maximum walk edge count");
  dec->add_option("--order", order, "walk order")->check(CLI::IsMember({"edgecount-lex"}));
  add_common(dec);

  CLI::App* ver = app.add_subcommand("verify", "validate a flow (and a decomposition)");
  ver->add_option("network", net_path)->required();
  ver->add_option("flows", aux_path)->required();
  std::string ver_dec;
  ver->add_option("decomposition", ver_dec);
  add_common(ver);

  CLI::App* chk = app.add_subcommand("check-pure", "purity analysis of a decomposition");
  chk->add_option("network", net_path)->required();
  chk->add_option("flows", aux_path)->required();
  chk->add_option("decomposition", dec_path)->required();
  add_common(chk);

  CLI::App* pur = app.add_subcommand("purify", "rewrite cycle inflows into walks where possible");
  pur->add_option("network", net_path)->required();
  pur->add_option("flows", aux_path)->required();
  pur->add_option("decomposition", dec_path)->required();
  add_common(pur);

  CLI::App* fw = app.add_subcommand("find-walk", "find a flow-carrying s,d-walk");
  fw->add_option("network", net_path)->required();
  fw->add_option("flows", aux_path)->required();
  add_common(fw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (load->parsed()) return cmd_load(net_path, aux_path, out);
    if (tts->parsed()) return cmd_traveltimes(net_path, aux_path, out);
    if (dec->parsed()) return cmd_decompose(net_path, aux_path, budget, max_walk_len, out);
    if (ver->parsed()) {
      return cmd_verify(net_path, aux_path,
                        ver_dec.empty() ? std::nullopt : std::make_optional(ver_dec), out);
    }
    if (chk->parsed()) return cmd_check_pure(net_path, aux_path, dec_path, out);
    if (pur->parsed()) return cmd_purify(net_path, aux_path, dec_path, out);
    if (fw->parsed()) return cmd_find_walk(net_path, aux_path, out);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
