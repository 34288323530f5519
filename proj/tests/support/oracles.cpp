#include "oracles.hpp"

#include <map>
#include <vector>

#include "exnet/subnet.hpp"

namespace exnet::testor {

namespace {

using Adj = std::map<NodeId, std::vector<NodeId>>;

bool search(const Adj& adj, NodeId to, const PathQuery& q, std::vector<NodeId>& path,
            std::set<NodeId>& seen) {
  NodeId cur = path.back();
  if (cur == to) return true;
  auto it = adj.find(cur);
  if (it == adj.end()) return false;
  for (NodeId w : it->second) {
    if (seen.count(w)) continue;
    if (path.size() == 1 && q.first_via && w != *q.first_via) continue;
    if (w != to && q.forbidden.count(w)) continue;
    if (w == to && q.last_via && cur != *q.last_via) continue;
    path.push_back(w);
    seen.insert(w);
    if (search(adj, to, q, path, seen)) return true;
    path.pop_back();
    seen.erase(w);
  }
  return false;
}

}  // namespace

bool path_oracle(const NetGraph& g, NodeId from, NodeId to, const PathQuery& q) {
  if (from == to) return false;
  for (const SwitchingAssignment& sigma : enumerate_switchings(g, 1u << 16)) {
    Adj adj;
    for (NodeId v : g.verts) {
      auto it = g.kids.find(v);
      if (it == g.kids.end()) continue;
      for (NodeId k : it->second) {
        if (g.switched.count(v) && sigma.choice.at(v) != k) continue;
        adj[v].push_back(k);
        adj[k].push_back(v);
      }
    }
    for (const auto& [a, b] : g.wire_partner) {
      if (a < b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
    std::vector<NodeId> path{from};
    std::set<NodeId> seen{from};
    if (search(adj, to, q, path, seen)) return true;
  }
  return false;
}

bool subnet_oracle(const TypedForest& f, const std::set<NodeId>& g) {
  NetGraph ng = graph_of(f);
  std::map<NodeId, NodeId> par = parents_of(f);
  std::vector<NodeId> roots;
  for (NodeId v : g) {
    auto it = par.find(v);
    if (it == par.end() || !g.count(it->second)) roots.push_back(v);
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto pi = par.find(roots[i]);
    if (pi == par.end()) continue;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      auto pj = par.find(roots[j]);
      if (pj == par.end()) continue;
      PathQuery q;
      q.first_via = pi->second;
      q.last_via = pj->second;
      q.forbidden = g;
      if (path_oracle(ng, roots[i], roots[j], q)) return false;
    }
  }
  return true;
}

std::optional<std::set<NodeId>> kingdom_oracle(const TypedForest& f, NodeId x) {
  std::vector<NodeId> others;
  for (const auto& [id, n] : f.nodes) {
    (void)n;
    if (id != x) others.push_back(id);
  }
  require(others.size() <= 20, "kingdom_oracle: host too large to enumerate");
  std::map<NodeId, NodeId> par = parents_of(f);
  auto px = par.find(x);

  std::vector<std::set<NodeId>> found;
  for (std::uint64_t mask = 0; mask < (1ull << others.size()); ++mask) {
    std::set<NodeId> s{x};
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask & (1ull << i)) s.insert(others[i]);
    if (px != par.end() && s.count(px->second)) continue;
    if (!is_substructure(f, s)) continue;
    if (!subnet_oracle(f, s)) continue;
    found.push_back(std::move(s));
  }
  if (found.empty()) return std::nullopt;

  std::size_t best = 0;
  for (std::size_t i = 1; i < found.size(); ++i)
    if (found[i].size() < found[best].size()) best = i;
  for (const auto& s : found) {
    bool contained = true;
    for (NodeId v : found[best])
      if (!s.count(v)) contained = false;
    if (!contained) return std::nullopt;
  }
  return found[best];
}

}  // namespace exnet::testor
