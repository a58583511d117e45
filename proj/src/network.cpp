#include "dynflow/network.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

namespace dynflow {

const EdgeDef& DynNetwork::edge(const EdgeId& id) const {
  for (const auto& e : edges) {
    if (e.id == id) return e;
  }
  throw std::invalid_argument("unknown edge id: " + id);
}

bool DynNetwork::has_node(const NodeId& id) const {
  return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

std::vector<const EdgeDef*> DynNetwork::out_edges(const NodeId& v) const {
  std::vector<const EdgeDef*> out;
  for (const auto& e : edges) {
    if (e.tail == v) out.push_back(&e);
  }
  std::sort(out.begin(), out.end(), [](const EdgeDef* a, const EdgeDef* b) { return a->id < b->id; });
  return out;
}

std::vector<const EdgeDef*> DynNetwork::in_edges(const NodeId& v) const {
  std::vector<const EdgeDef*> in;
  for (const auto& e : edges) {
    if (e.head == v) in.push_back(&e);
  }
  std::sort(in.begin(), in.end(), [](const EdgeDef* a, const EdgeDef* b) { return a->id < b->id; });
  return in;
}

void DynNetwork::validate() const {
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
  if (!has_node(source)) throw std::invalid_argument("source node missing: " + source);
  if (!has_node(destination)) throw std::invalid_argument("destination node missing: " + destination);
  if (source == destination) throw std::invalid_argument("source and destination must differ");
  std::set<EdgeId> seen;
  for (const auto& e : edges) {
    if (!seen.insert(e.id).second) throw std::invalid_argument("duplicate edge id: " + e.id);
    if (!has_node(e.tail) || !has_node(e.head)) {
      throw std::invalid_argument("edge " + e.id + " has an unknown endpoint");
    }
  }
  {
    std::set<NodeId> ids(nodes.begin(), nodes.end());
    if (ids.size() != nodes.size()) throw std::invalid_argument("duplicate node id");
  }
  // Every node must be connected to the source (underlying undirected graph).
  std::set<NodeId> reach{source};
  std::deque<NodeId> queue{source};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const auto& e : edges) {
      for (const NodeId& next : {e.head == v ? e.tail : (e.tail == v ? e.head : v)}) {
        if (next != v && reach.insert(next).second) queue.push_back(next);
      }
    }
  }
  for (const auto& v : nodes) {
    if (!reach.count(v)) throw std::invalid_argument("node not connected to the source: " + v);
  }
}

SimpleCycle SimpleCycle::canonical(std::vector<EdgeId> edges) {
  if (edges.empty()) throw std::invalid_argument("empty cycle");
  const auto min_it = std::min_element(edges.begin(), edges.end());
  std::rotate(edges.begin(), min_it, edges.end());
  SimpleCycle c;
  c.edges = std::move(edges);
  return c;
}

std::optional<WalkViolation> validate_walk(const DynNetwork& net, const Walk& w, bool as_sd_walk) {
  if (w.edges.empty()) return WalkViolation{0, "walk is empty"};
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    bool known = false;
    for (const auto& e : net.edges) known = known || e.id == w.edges[i];
    if (!known) return WalkViolation{i, "unknown edge id: " + w.edges[i]};
  }
  for (std::size_t i = 0; i + 1 < w.edges.size(); ++i) {
    const auto& a = net.edge(w.edges[i]);
    const auto& b = net.edge(w.edges[i + 1]);
    if (a.head != b.tail) {
      return WalkViolation{i + 1, "edges " + a.id + " and " + b.id + " are not incident"};
    }
  }
  if (as_sd_walk) {
    if (net.edge(w.edges.front()).tail != net.source) {
      return WalkViolation{0, "walk does not start at the source"};
    }
    if (net.edge(w.edges.back()).head != net.destination) {
      return WalkViolation{w.edges.size() - 1, "walk does not end at the destination"};
    }
  }
  return std::nullopt;
}

namespace {

// Per-node lower bound on the cost of reaching the destination (Dijkstra on
// the reversed graph, weights = per-edge lower bounds); used for pruning.
std::map<NodeId, Rational> dest_distance(const DynNetwork& net,
                                         const std::map<EdgeId, Rational>& min_travel) {
  std::map<NodeId, Rational> dist;
  dist[net.destination] = 0;
  // Bellman-Ford style relaxation: tiny graphs, simplicity over speed.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : net.edges) {
      const auto it = dist.find(e.head);
      if (it == dist.end()) continue;
      const Rational cand = it->second + min_travel.at(e.id);
      const auto jt = dist.find(e.tail);
      if (jt == dist.end() || cand < jt->second) {
        dist[e.tail] = cand;
        changed = true;
      }
    }
  }
  return dist;
}

// Per-node minimum number of edges to reach the destination.
std::map<NodeId, int> dest_hops(const DynNetwork& net) {
  std::map<NodeId, int> hops;
  hops[net.destination] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : net.edges) {
      const auto it = hops.find(e.head);
      if (it == hops.end()) continue;
      const int cand = it->second + 1;
      const auto jt = hops.find(e.tail);
      if (jt == hops.end() || cand < jt->second) {
        hops[e.tail] = cand;
        changed = true;
      }
    }
  }
  return hops;
}

}  // namespace

void for_each_sd_walk(const DynNetwork& net, const std::map<EdgeId, Rational>& min_travel,
                      const Rational& budget, std::optional<int> length_cap,
                      const std::function<bool(const Walk&)>& visit) {
  if (budget < 0) throw std::invalid_argument("budget must be nonnegative");
  Rational min_positive(-1);
  bool has_zero = false;
  for (const auto& e : net.edges) {
    const auto it = min_travel.find(e.id);
    if (it == min_travel.end()) throw std::invalid_argument("missing lower bound for edge " + e.id);
    if (it->second < 0) throw std::invalid_argument("negative lower bound for edge " + e.id);
    if (it->second == 0) {
      has_zero = true;
    } else if (min_positive < 0 || it->second < min_positive) {
      min_positive = it->second;
    }
  }
  if (has_zero && !length_cap) {
    throw std::invalid_argument("zero lower bounds require a length cap");
  }
  int max_len;
  if (length_cap) {
    max_len = *length_cap;
  } else {
    // All bounds positive: no walk longer than budget / min_bound fits.
    max_len = static_cast<int>(rational_floor(budget / min_positive));
  }
  const auto dist = dest_distance(net, min_travel);
  const auto hops = dest_hops(net);
  if (!dist.count(net.source)) return;  // destination unreachable

  // Iterative deepening: all walks of length L before any of length L+1;
  // sorted out-edge iteration makes ties lexicographic.
  Walk walk;
  bool stop = false;
  std::function<void(const NodeId&, const Rational&, int)> dfs = [&](const NodeId& v,
                                                                     const Rational& cost,
                                                                     int remaining) {
    if (stop) return;
    if (remaining == 0) {
      if (v == net.destination) stop = !visit(walk);
      return;
    }
    const auto h = hops.find(v);
    if (h == hops.end() || h->second > remaining) return;
    for (const EdgeDef* e : net.out_edges(v)) {
      const Rational c = cost + min_travel.at(e->id);
      const auto d = dist.find(e->head);
      if (d == dist.end() || c + d->second > budget) continue;
      walk.edges.push_back(e->id);
      dfs(e->head, c, remaining - 1);
      walk.edges.pop_back();
      if (stop) return;
    }
  };
  for (int len = 1; len <= max_len && !stop; ++len) {
    dfs(net.source, Rational(0), len);
  }
}

std::vector<Walk> enumerate_walks(const DynNetwork& net,
                                  const std::map<EdgeId, Rational>& min_travel,
                                  const Rational& budget, std::optional<int> length_cap) {
  std::vector<Walk> out;
  for_each_sd_walk(net, min_travel, budget, length_cap, [&](const Walk& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::vector<SimpleCycle> enumerate_simple_cycles(const DynNetwork& net) {
  std::vector<NodeId> order = net.nodes;
  std::sort(order.begin(), order.end());
  std::vector<SimpleCycle> out;
  // For each start node (ascending), find every cycle whose smallest node is
  // the start by restricting the DFS to nodes >= start.
  for (const auto& start : order) {
    std::set<NodeId> on_path;
    std::vector<EdgeId> path;
    std::function<void(const NodeId&)> dfs = [&](const NodeId& v) {
      for (const EdgeDef* e : net.out_edges(v)) {
        if (e->head == start) {
          path.push_back(e->id);
          out.push_back(SimpleCycle::canonical(path));
          path.pop_back();
        } else if (e->head > start && !on_path.count(e->head)) {
          on_path.insert(e->head);
          path.push_back(e->id);
          dfs(e->head);
          path.pop_back();
          on_path.erase(e->head);
        }
      }
    };
    on_path.insert(start);
    dfs(start);
  }
  std::sort(out.begin(), out.end(), [](const SimpleCycle& a, const SimpleCycle& b) {
    return std::make_pair(a.edges.size(), a.edges) < std::make_pair(b.edges.size(), b.edges);
  });
  return out;
}

std::vector<SimpleCycle> enumerate_simple_cycles_bruteforce(const DynNetwork& net) {
  std::set<SimpleCycle> found;
  const std::size_t n = net.nodes.size();
  const std::size_t m = net.edges.size();
  // Odometer over all edge index sequences of each length; filter closed
  // node-simple chains. Exponential by design: this is the oracle.
  for (std::size_t len = 1; len <= n && len <= m; ++len) {
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      bool ok = true;
      std::set<NodeId> visited;
      for (std::size_t i = 0; ok && i < len; ++i) {
        const auto& e = net.edges[idx[i]];
        if (i > 0 && net.edges[idx[i - 1]].head != e.tail) ok = false;
        if (ok && !visited.insert(e.tail).second) ok = false;
      }
      if (ok && net.edges[idx[len - 1]].head == net.edges[idx[0]].tail) {
        std::vector<EdgeId> ids;
        for (const auto i : idx) ids.push_back(net.edges[i].id);
        found.insert(SimpleCycle::canonical(std::move(ids)));
      }
      // Advance the odometer.
      std::size_t pos = 0;
      while (pos < len && ++idx[pos] == m) idx[pos++] = 0;
      if (pos == len) break;
    }
  }
  std::vector<SimpleCycle> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const SimpleCycle& a, const SimpleCycle& b) {
    return std::make_pair(a.edges.size(), a.edges) < std::make_pair(b.edges.size(), b.edges);
  });
  return out;
}

Walk eulerian_circuit(const DynNetwork& net,
                      const std::vector<std::pair<SimpleCycle, int>>& cycles,
                      const NodeId& start) {
  std::map<EdgeId, int> remaining;
  std::set<NodeId> cycle_nodes;
  for (const auto& [cycle, mult] : cycles) {
    if (mult <= 0) throw std::invalid_argument("cycle multiplicity must be positive");
    for (const auto& id : cycle.edges) {
      remaining[id] += mult;
      cycle_nodes.insert(net.edge(id).tail);
      cycle_nodes.insert(net.edge(id).head);
    }
  }
  if (!cycle_nodes.count(start)) throw std::invalid_argument("start lies on no given cycle");

  // Hierholzer with deterministic smallest-edge-id branching.
  std::vector<EdgeId> circuit;
  std::function<void(const NodeId&)> walk_out = [&](const NodeId& v) {
    for (const EdgeDef* e : net.out_edges(v)) {
      auto it = remaining.find(e->id);
      while (it != remaining.end() && it->second > 0) {
        --it->second;
        walk_out(e->head);
        circuit.push_back(e->id);
      }
    }
  };
  walk_out(start);
  std::reverse(circuit.begin(), circuit.end());
  for (const auto& [id, count] : remaining) {
    if (count > 0) {
      throw std::invalid_argument("cycle set is not connected through shared nodes (edge " + id +
                                  " unreachable)");
    }
  }
  Walk w;
  w.edges = std::move(circuit);
  return w;
}

}  // namespace dynflow
