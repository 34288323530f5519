#include "exnet/netgraph.hpp"

#include <algorithm>
#include <deque>

namespace exnet {

bool NetGraph::is_kid_of(NodeId child, NodeId node) const {
  auto it = parent.find(child);
  return it != parent.end() && it->second == node;
}

std::vector<NodeId> NetGraph::neighbors(NodeId v) const {
  std::vector<NodeId> out;
  auto k = kids.find(v);
  if (k != kids.end()) out.insert(out.end(), k->second.begin(), k->second.end());
  auto p = parent.find(v);
  if (p != parent.end()) out.push_back(p->second);
  auto w = wire_partner.find(v);
  if (w != wire_partner.end()) out.push_back(w->second);
  return out;
}

NetGraph graph_of(const TypedForest& f) {
  NetGraph g;
  std::map<std::string, std::pair<NodeId, NodeId>> wires;  // name -> (pos, neg)
  for (const auto& [id, n] : f.nodes) {
    g.verts.push_back(id);
    g.kids[id] = n.kids;
    for (NodeId k : n.kids) g.parent[k] = id;
    if (n.kind == NodeKind::Wire) {
      auto& slot = wires[n.wire.sym];
      (n.wire.neg ? slot.second : slot.first) = id + 1;  // shift to spot absences
    }
    if (n.kind == NodeKind::Expansion) {
      g.switched.insert(id);
    } else if (n.kind == NodeKind::OrNode) {
      if (f.node(n.kids[0]).kind != NodeKind::Star &&
          f.node(n.kids[1]).kind != NodeKind::Star)
        g.switched.insert(id);
    }
  }
  for (const auto& [name, pair] : wires) {
    require(pair.first != 0 && pair.second != 0,
            "graph_of: unpaired wire " + name);
    NodeId a = pair.first - 1, b = pair.second - 1;
    g.wire_partner[a] = b;
    g.wire_partner[b] = a;
  }
  return g;
}

std::uint64_t switching_count(const NetGraph& g, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (NodeId v : g.switched) {
    total *= g.kids.at(v).size();
    if (total > limit) return limit + 1;
  }
  return total;
}

std::vector<SwitchingAssignment> enumerate_switchings(const NetGraph& g,
                                                      std::uint64_t limit) {
  require(switching_count(g, limit) <= limit,
          "enumerate_switchings: more than " + std::to_string(limit) +
              " switchings");
  std::vector<NodeId> sw(g.switched.begin(), g.switched.end());
  std::vector<std::size_t> idx(sw.size(), 0);
  std::vector<SwitchingAssignment> out;
  while (true) {
    SwitchingAssignment sigma;
    for (std::size_t k = 0; k < sw.size(); ++k)
      sigma.choice[sw[k]] = g.kids.at(sw[k])[idx[k]];
    out.push_back(std::move(sigma));
    std::size_t k = 0;
    for (; k < sw.size(); ++k) {
      if (++idx[k] < g.kids.at(sw[k]).size()) break;
      idx[k] = 0;
    }
    if (k == sw.size()) break;
  }
  return out;
}

namespace {

// Union-find over the vertex set.
struct DSU {
  std::map<NodeId, NodeId> up;

  NodeId find(NodeId x) {
    auto it = up.find(x);
    if (it == up.end() || it->second == x) return x;
    NodeId r = find(it->second);
    up[x] = r;
    return r;
  }

  bool merge(NodeId a, NodeId b) {
    NodeId ra = find(a), rb = find(b);
    if (ra == rb) return false;
    up[ra] = rb;
    return true;
  }
};

bool sigma_keeps_edge(const SwitchingAssignment& sigma, NodeId par, NodeId kid) {
  auto it = sigma.choice.find(par);
  return it == sigma.choice.end() || it->second == kid;
}

}  // namespace

bool switching_acyclic(const NetGraph& g, const SwitchingAssignment& sigma) {
  DSU dsu;
  for (const auto& [v, ks] : g.kids)
    for (NodeId k : ks)
      if (sigma_keeps_edge(sigma, v, k) && !dsu.merge(v, k)) return false;
  for (const auto& [a, b] : g.wire_partner)
    if (a < b && !dsu.merge(a, b)) return false;
  return true;
}

bool ac_correct_bruteforce(const TypedForest& f) {
  NetGraph g = graph_of(f);
  const std::uint64_t cap = 1u << 16;
  if (switching_count(g, cap) > cap)
    throw ContractViolation(
        "ac_correct_bruteforce: refusing to enumerate more than 65536 "
        "switchings");
  for (const SwitchingAssignment& sigma : enumerate_switchings(g, cap))
    if (!switching_acyclic(g, sigma)) return false;
  return true;
}

namespace {

bool edge_exists(const NetGraph& g, NodeId u, NodeId v) {
  if (g.is_kid_of(u, v) || g.is_kid_of(v, u)) return true;
  auto it = g.wire_partner.find(u);
  return it != g.wire_partner.end() && it->second == v;
}

// A transition u -> v -> w is allowed when it does not double back and does
// not use two child edges of a switched v.
bool transition_ok(const NetGraph& g, NodeId u, NodeId v, NodeId w) {
  if (w == u) return false;
  if (g.switched.count(v) && g.is_kid_of(u, v) && g.is_kid_of(w, v)) return false;
  return true;
}

std::optional<std::vector<NodeId>> sigma_fallback(const NetGraph& g, NodeId from,
                                                  NodeId to, const PathQuery& q) {
  const std::uint64_t cap = 1u << 16;
  if (switching_count(g, cap) > cap)
    throw ContractViolation(
        "switching_path: uncertified walk on a host with more than 65536 "
        "switchings");
  for (const SwitchingAssignment& sigma : enumerate_switchings(g, cap)) {
    auto keeps = [&](NodeId u, NodeId v) {
      if (g.is_kid_of(v, u)) return sigma_keeps_edge(sigma, u, v);
      if (g.is_kid_of(u, v)) return sigma_keeps_edge(sigma, v, u);
      return true;  // wire edge
    };
    // BFS from `from` in the switching graph, never entering `to` or any
    // forbidden vertex; then look for a final edge into `to`.
    std::map<NodeId, NodeId> prev;
    std::deque<NodeId> queue;
    auto try_start = [&](NodeId w) {
      if (w == to || prev.count(w)) return;
      if (q.forbidden.count(w)) return;
      prev[w] = from;
      queue.push_back(w);
    };
    if (q.first_via) {
      if (edge_exists(g, from, *q.first_via) && keeps(from, *q.first_via))
        try_start(*q.first_via);
    } else {
      for (NodeId w : g.neighbors(from))
        if (keeps(from, w)) try_start(w);
    }
    if (edge_exists(g, from, to) && keeps(from, to) &&
        (!q.first_via || *q.first_via == to) && (!q.last_via || *q.last_via == from))
      return std::vector<NodeId>{from, to};
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (NodeId w : g.neighbors(v)) {
        if (!keeps(v, w)) continue;
        if (w == to) {
          if (q.last_via && *q.last_via != v) continue;
          std::vector<NodeId> path{to, v};
          NodeId cur = v;
          while (cur != from) {
            cur = prev.at(cur);
            path.push_back(cur);
          }
          std::reverse(path.begin(), path.end());
          return path;
        }
        if (w == from || prev.count(w) || q.forbidden.count(w)) continue;
        prev[w] = v;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool check_switching_path(const NetGraph& g, const std::vector<NodeId>& path,
                          NodeId from, NodeId to, const PathQuery& q) {
  if (path.size() < 2 || path.front() != from || path.back() != to) return false;
  std::set<NodeId> seen;
  for (NodeId v : path)
    if (!seen.insert(v).second) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!edge_exists(g, path[i], path[i + 1])) return false;
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (!transition_ok(g, path[i - 1], path[i], path[i + 1])) return false;
  if (q.first_via && path[1] != *q.first_via) return false;
  if (q.last_via && path[path.size() - 2] != *q.last_via) return false;
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (q.forbidden.count(path[i])) return false;
  return true;
}

std::optional<std::vector<NodeId>> switching_path(const NetGraph& g, NodeId from,
                                                  NodeId to, const PathQuery& q) {
  require(from != to, "switching_path: endpoints coincide");

  // Breadth-first search over darts (directed edge instances). A dart
  // (u, v) records arrival at v via the edge {u, v}.
  using Dart = std::pair<NodeId, NodeId>;
  std::map<Dart, Dart> prev;
  std::deque<Dart> queue;
  std::optional<Dart> goal;

  auto accept = [&](NodeId u) {
    return !q.last_via || *q.last_via == u;
  };
  auto start = [&](NodeId w) {
    if (q.first_via && *q.first_via != w) return;
    Dart d{from, w};
    if (prev.count(d)) return;
    if (w == to) {
      if (accept(from)) {
        prev[d] = {from, from};
        goal = d;
      }
      return;
    }
    if (q.forbidden.count(w)) return;
    prev[d] = {from, from};
    queue.push_back(d);
  };
  for (NodeId w : g.neighbors(from)) start(w);

  while (!goal && !queue.empty()) {
    Dart d = queue.front();
    queue.pop_front();
    auto [u, v] = d;
    for (NodeId w : g.neighbors(v)) {
      if (!transition_ok(g, u, v, w)) continue;
      Dart nd{v, w};
      if (prev.count(nd)) continue;
      if (w == to) {
        if (!accept(v)) continue;
        prev[nd] = d;
        goal = nd;
        break;
      }
      if (w == from || q.forbidden.count(w)) continue;
      prev[nd] = d;
      queue.push_back(nd);
    }
  }

  if (!goal) return std::nullopt;

  std::vector<NodeId> walk;
  Dart cur = *goal;
  walk.push_back(cur.second);
  while (!(cur.first == from && cur.second == from)) {
    walk.push_back(cur.first);
    cur = prev.at(cur);
  }
  std::reverse(walk.begin(), walk.end());

  // Splice out revisits, keeping the earlier prefix and later suffix.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<NodeId, std::size_t> first_at;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      auto [it, fresh] = first_at.emplace(walk[i], i);
      if (!fresh) {
        walk.erase(walk.begin() + it->second, walk.begin() + i);
        changed = true;
        break;
      }
    }
  }
  if (check_switching_path(g, walk, from, to, q)) return walk;
  return sigma_fallback(g, from, to, q);
}

bool switching_path_exists(const NetGraph& g, NodeId from, NodeId to,
                           const PathQuery& q) {
  return switching_path(g, from, to, q).has_value();
}

}  // namespace exnet
