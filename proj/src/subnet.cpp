#include "exnet/subnet.hpp"

#include <algorithm>
#include <queue>

#include "exnet/netgraph.hpp"

namespace exnet {
namespace {

std::map<NodeId, NodeId> wire_partners(const TypedForest& f) {
  std::map<std::string, std::vector<NodeId>> by_name;
  for (const auto& [id, n] : f.nodes)
    if (n.kind == NodeKind::Wire) by_name[n.wire.sym].push_back(id);
  std::map<NodeId, NodeId> out;
  for (const auto& [name, ids] : by_name) {
    (void)name;
    require(ids.size() == 2, "str_closure: wire without a partner");
    out[ids[0]] = ids[1];
    out[ids[1]] = ids[0];
  }
  return out;
}

}  // namespace

std::set<NodeId> str_closure(const TypedForest& f, const std::set<NodeId>& seed) {
  std::map<NodeId, NodeId> partner = wire_partners(f);
  std::map<NodeId, NodeId> par = parents_of(f);
  std::set<NodeId> out;
  std::vector<NodeId> todo(seed.begin(), seed.end());
  auto push = [&](NodeId id) {
    if (out.insert(id).second) todo.push_back(id);
  };
  out.insert(todo.begin(), todo.end());
  while (!todo.empty()) {
    NodeId id = todo.back();
    todo.pop_back();
    const NetNode& n = f.node(id);
    for (NodeId k : n.kids) push(k);
    if (n.kind == NodeKind::Wire) push(partner.at(id));
    if (n.kind == NodeKind::Star) push(par.at(id));
  }
  return out;
}

bool is_substructure(const TypedForest& f, const std::set<NodeId>& g, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (g.empty()) return fail("substructure: empty set");
  std::map<NodeId, NodeId> partner = wire_partners(f);
  std::map<NodeId, NodeId> par = parents_of(f);
  for (NodeId id : g) {
    if (!f.has(id)) return fail("substructure: unknown node id");
    const NetNode& n = f.node(id);
    for (NodeId k : n.kids)
      if (!g.count(k)) return fail("substructure: missing a child of " + std::to_string(id));
    if (n.kind == NodeKind::Wire && !g.count(partner.at(id)))
      return fail("substructure: missing the partner of wire " + std::to_string(id));
    if (n.kind == NodeKind::Star && !g.count(par.at(id)))
      return fail("substructure: detached star " + std::to_string(id));
  }
  return true;
}

std::vector<NodeId> substructure_roots(const TypedForest& f, const std::set<NodeId>& g) {
  std::map<NodeId, NodeId> par = parents_of(f);
  std::vector<NodeId> out;
  for (NodeId id : g) {
    auto it = par.find(id);
    if (it == par.end() || !g.count(it->second)) out.push_back(id);
  }
  return out;
}

std::optional<std::vector<NodeId>> subnet_violation(const TypedForest& f,
                                                   const std::set<NodeId>& g) {
  NetGraph graph = graph_of(f);
  std::map<NodeId, NodeId> par = parents_of(f);
  std::vector<NodeId> roots = substructure_roots(f, g);
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
      auto p = switching_path(graph, roots[i], roots[j], q);
      if (p) return p;
    }
  }
  return std::nullopt;
}

bool is_subnet(const TypedForest& f, const std::set<NodeId>& g) {
  if (!is_substructure(f, g)) return false;
  return !subnet_violation(f, g).has_value();
}

namespace {

// The contiguous empire computed inside an allowed region (which must be
// closed in the str_closure sense). Growth rules, applied to candidates in
// ascending id order until nothing changes:
//   a tensor or cut joins when one child is in and x is not a child;
//   a star disjunction joins when its real child is in and is not x;
//   a switched node joins when all children are in and none is x;
//   a switched node with some child in and none equal to x joins, along
//   with a connecting path, when a switching path from x reaches it from
//   its parent side without passing through its children.
std::set<NodeId> ce_within(const TypedForest& f, const NetGraph& graph, NodeId x,
                           const std::set<NodeId>& allowed) {
  std::map<NodeId, NodeId> par = parents_of(f);
  std::set<NodeId> ce = str_closure(f, {x});
  for (NodeId id : ce)
    require(allowed.count(id), "contiguous_empire: region does not even hold the seed");

  std::set<NodeId> outside;
  for (NodeId v : graph.verts)
    if (!allowed.count(v)) outside.insert(v);

  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId id : allowed) {
      if (ce.count(id)) continue;
      const NetNode& n = f.node(id);
      bool kid_is_x = std::find(n.kids.begin(), n.kids.end(), x) != n.kids.end();
      if (kid_is_x) continue;

      bool join = false;
      std::set<NodeId> extra;
      if (n.kind == NodeKind::Tensor || n.kind == NodeKind::CutNode) {
        join = ce.count(n.kids[0]) || ce.count(n.kids[1]);
      } else if (n.kind == NodeKind::OrNode &&
                 (f.node(n.kids[0]).kind == NodeKind::Star ||
                  f.node(n.kids[1]).kind == NodeKind::Star)) {
        NodeId real = f.node(n.kids[0]).kind == NodeKind::Star ? n.kids[1] : n.kids[0];
        join = ce.count(real) != 0;
      } else if (graph.switched.count(id)) {
        std::size_t in = 0;
        for (NodeId k : n.kids) in += ce.count(k);
        if (in == n.kids.size()) {
          join = true;
        } else if (in > 0) {
          auto pit = par.find(id);
          if (pit != par.end()) {
            PathQuery q;
            q.last_via = pit->second;
            q.forbidden = outside;
            q.forbidden.insert(n.kids.begin(), n.kids.end());
            auto p = switching_path(graph, x, id, q);
            if (p) {
              join = true;
              extra.insert(p->begin(), p->end());
            }
          }
        }
      }
      if (join) {
        extra.insert(id);
        extra.insert(ce.begin(), ce.end());
        ce = str_closure(f, extra);
        for (NodeId v : ce)
          require(allowed.count(v), "contiguous_empire: growth left the region");
        changed = true;
      }
    }
  }
  return ce;
}

std::set<NodeId> all_nodes(const TypedForest& f) {
  std::set<NodeId> out;
  for (const auto& [id, n] : f.nodes) {
    (void)n;
    out.insert(id);
  }
  return out;
}

}  // namespace

std::set<NodeId> contiguous_empire(const TypedForest& f, NodeId x) {
  NetGraph graph = graph_of(f);
  return ce_within(f, graph, x, all_nodes(f));
}

bool contiguous_within(const TypedForest& f, NodeId x, const std::set<NodeId>& region) {
  NetGraph graph = graph_of(f);
  std::set<NodeId> outside;
  for (NodeId v : graph.verts)
    if (!region.count(v)) outside.insert(v);
  for (NodeId v : region) {
    if (v == x) continue;
    PathQuery q;
    q.forbidden = outside;
    if (!switching_path_exists(graph, x, v, q)) return false;
  }
  return true;
}

std::set<NodeId> kingdom(const TypedForest& f, NodeId x) {
  const NetNode& xn = f.node(x);
  if (xn.kind == NodeKind::CutNode) {
    std::set<NodeId> out = kingdom(f, xn.kids[0]);
    std::set<NodeId> right = kingdom(f, xn.kids[1]);
    out.insert(right.begin(), right.end());
    out.insert(x);
    return out;
  }

  NetGraph graph = graph_of(f);
  std::map<NodeId, NodeId> par = parents_of(f);
  auto xp = par.find(x);

  // Shrink to a fixed point of empire-within; the kingdom is itself a
  // fixed point of that map, so the limit still contains it.
  std::set<NodeId> bound = all_nodes(f);
  for (;;) {
    std::set<NodeId> next = ce_within(f, graph, x, bound);
    if (next == bound) break;
    bound = std::move(next);
  }

  // Best-first violation repair: every subnet with x as a root and holding
  // the current set must absorb the parent of one endpoint of a witness
  // arc, so branching on the two parents is exhaustive. Sets only grow
  // along a branch, so the first violation-free set popped is smallest.
  auto cmp = [](const std::pair<std::size_t, std::set<NodeId>>& a,
                const std::pair<std::size_t, std::set<NodeId>>& b) {
    return a.first > b.first;
  };
  std::priority_queue<std::pair<std::size_t, std::set<NodeId>>,
                      std::vector<std::pair<std::size_t, std::set<NodeId>>>, decltype(cmp)>
      frontier(cmp);
  std::set<std::set<NodeId>> seen;

  auto offer = [&](std::set<NodeId> s) {
    if (xp != par.end() && s.count(xp->second)) return;  // x no longer a root
    for (NodeId v : s)
      if (!bound.count(v)) return;
    if (!seen.insert(s).second) return;
    frontier.push({s.size(), std::move(s)});
  };

  offer(str_closure(f, {x}));
  while (!frontier.empty()) {
    std::set<NodeId> cur = frontier.top().second;
    frontier.pop();
    auto arc = subnet_violation(f, cur);
    if (!arc) return cur;
    for (NodeId endpoint : {arc->front(), arc->back()}) {
      std::set<NodeId> grown = cur;
      grown.insert(par.at(endpoint));
      offer(str_closure(f, grown));
    }
  }
  throw ContractViolation("kingdom: no subnet has node " + std::to_string(x) +
                          " as a root (host not correct?)");
}

bool kingdom_leq(const TypedForest& f, NodeId x, NodeId y) {
  return kingdom(f, y).count(x) != 0;
}

EmpireNote empire_note(const TypedForest& f, NodeId x) {
  std::vector<NodeId> rest;
  for (const auto& [id, n] : f.nodes) {
    (void)n;
    if (id != x) rest.push_back(id);
  }
  require(rest.size() <= 16, "empire_note: refusing hosts with more than 16 nodes besides x");
  std::map<NodeId, NodeId> par = parents_of(f);
  auto xp = par.find(x);

  EmpireNote note;
  for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
    std::set<NodeId> s{x};
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask & (1u << i)) s.insert(rest[i]);
    if (xp != par.end() && s.count(xp->second)) continue;
    if (!is_substructure(f, s)) continue;
    if (!is_subnet(f, s)) continue;
    note.nodes.insert(s.begin(), s.end());
  }
  if (!note.nodes.empty()) note.subnet = is_subnet(f, note.nodes);
  return note;
}

}  // namespace exnet
