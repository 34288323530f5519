#include "exnet/seq.hpp"

#include <algorithm>

#include "exnet/formula.hpp"
#include "exnet/netgraph.hpp"

namespace exnet {
namespace {

std::map<NodeId, int> components(const NetGraph& g, const std::set<NodeId>& removed) {
  std::map<NodeId, int> comp;
  int c = 0;
  for (NodeId seed : g.verts) {
    if (removed.count(seed) || comp.count(seed)) continue;
    std::vector<NodeId> queue{seed};
    comp[seed] = c;
    while (!queue.empty()) {
      NodeId u = queue.back();
      queue.pop_back();
      for (NodeId w : g.neighbors(u)) {
        if (removed.count(w) || comp.count(w)) continue;
        comp[w] = c;
        queue.push_back(w);
      }
    }
    ++c;
  }
  return comp;
}

void replace_root(TypedForest& f, NodeId r, const std::vector<NodeId>& by) {
  auto it = std::find(f.roots.begin(), f.roots.end(), r);
  require(it != f.roots.end(), "sequentialize: lost a root");
  it = f.roots.erase(it);
  f.roots.insert(it, by.begin(), by.end());
}

// The part of f lying in component `want`, roots to be filled by the caller.
TypedForest restrict_comp(const TypedForest& f, const std::map<NodeId, int>& comp, int want) {
  TypedForest out;
  out.next_id = f.next_id;
  for (const auto& [id, n] : f.nodes) {
    auto it = comp.find(id);
    if (it != comp.end() && it->second == want) out.nodes.emplace(id, n);
  }
  for (const auto& [id, t] : f.types)
    if (out.nodes.count(id)) out.types.emplace(id, t);
  return out;
}

AnnDeriv mk_step(ARule r, std::vector<AnnDeriv> prems, TypedForest c) {
  auto n = std::make_shared<AnnDerivNode>();
  n->rule = r;
  n->premises = std::move(prems);
  n->conclusion = std::move(c);
  return n;
}

struct SplitCandidate {
  NodeId root;
  std::set<NodeId> removed;  // the root, plus its tensor for an expansion
  NodeId t, s;
  std::map<NodeId, int> comp;
};

std::optional<SplitCandidate> find_split(const TypedForest& f, const NetGraph& g) {
  std::vector<NodeId> cands;
  for (NodeId r : f.roots) {
    const NetNode& n = f.node(r);
    if (n.kind == NodeKind::CutNode) cands.push_back(r);
    else if (n.kind == NodeKind::Expansion && n.kids.size() == 1 &&
             f.node(n.kids[0]).kind == NodeKind::Tensor)
      cands.push_back(r);
  }
  std::sort(cands.begin(), cands.end());
  for (NodeId r : cands) {
    const NetNode& n = f.node(r);
    SplitCandidate c;
    c.root = r;
    if (n.kind == NodeKind::CutNode) {
      c.removed = {r};
      c.t = n.kids[0];
      c.s = n.kids[1];
    } else {
      NodeId tau = n.kids[0];
      c.removed = {r, tau};
      c.t = f.node(tau).kids[0];
      c.s = f.node(tau).kids[1];
    }
    c.comp = components(g, c.removed);
    if (c.comp.at(c.t) != c.comp.at(c.s)) return c;
  }
  return std::nullopt;
}

bool seq_fail(std::string* why, const std::string& msg) {
  if (why && why->empty()) *why = "not sequentializable: " + msg;
  return false;
}

std::optional<AnnDeriv> seq_rec(const TypedForest& f, std::string* why) {
  if (f.nodes.empty()) {
    seq_fail(why, "empty forest");
    return std::nullopt;
  }

  // Top axiom.
  if (f.nodes.size() == 1 && f.roots.size() == 1 &&
      f.node(f.roots[0]).kind == NodeKind::One)
    return mk_step(ARule::AxTop, {}, f);

  // Atomic axiom.
  if (f.nodes.size() == 4 && f.roots.size() == 2) {
    const NetNode& a = f.node(f.roots[0]);
    const NetNode& b = f.node(f.roots[1]);
    if (a.kind == NodeKind::Expansion && a.kids.size() == 1 &&
        b.kind == NodeKind::Expansion && b.kids.size() == 1) {
      const NetNode& wa = f.node(a.kids[0]);
      const NetNode& wb = f.node(b.kids[0]);
      if (wa.kind == NodeKind::Wire && wb.kind == NodeKind::Wire &&
          wa.wire.sym == wb.wire.sym && wa.wire.neg != wb.wire.neg)
        return mk_step(ARule::Ax, {}, f);
    }
  }

  NetGraph g = graph_of(f);

  // Mix on a disconnected graph.
  std::map<NodeId, int> comp = components(g, {});
  int c0 = comp.at(f.roots.at(0));
  bool split_graph = false;
  for (const auto& [v, c] : comp)
    if (c != c0) split_graph = true;
  if (split_graph) {
    TypedForest f1 = restrict_comp(f, comp, c0);
    TypedForest f2;
    f2.next_id = f.next_id;
    for (const auto& [id, n] : f.nodes)
      if (!f1.nodes.count(id)) f2.nodes.emplace(id, n);
    for (const auto& [id, t] : f.types)
      if (f2.nodes.count(id)) f2.types.emplace(id, t);
    for (NodeId r : f.roots) (comp.at(r) == c0 ? f1 : f2).roots.push_back(r);
    auto d1 = seq_rec(f1, why);
    if (!d1) return std::nullopt;
    auto d2 = seq_rec(f2, why);
    if (!d2) return std::nullopt;
    return mk_step(ARule::Mix, {*d1, *d2}, f);
  }

  // Disjunction gates, in root order.
  for (NodeId r : f.roots) {
    const NetNode& n = f.node(r);
    if (n.kind != NodeKind::OrNode) continue;
    const Formula& ty = f.types.at(r).a;
    NodeId k0 = n.kids[0];
    NodeId k1 = n.kids[1];
    bool star0 = f.node(k0).kind == NodeKind::Star;
    bool star1 = f.node(k1).kind == NodeKind::Star;
    TypedForest p = f;
    p.nodes.erase(r);
    p.types.erase(r);
    ARule rule;
    if (!star0 && !star1) {
      replace_root(p, r, {k0, k1});
      p.types[k0] = classical_type(ty->left);
      p.types[k1] = classical_type(ty->right);
      rule = ARule::Or;
    } else if (star1) {
      p.nodes.erase(k1);
      replace_root(p, r, {k0});
      p.types[k0] = classical_type(ty->left);
      rule = ARule::Or0;
    } else {
      p.nodes.erase(k0);
      replace_root(p, r, {k1});
      p.types[k1] = classical_type(ty->right);
      rule = ARule::Or1;
    }
    auto sub = seq_rec(p, why);
    if (!sub) return std::nullopt;
    return mk_step(rule, {*sub}, f);
  }

  // Contraction gates: split off the first summand of a wide expansion.
  for (NodeId r : f.roots) {
    const NetNode& n = f.node(r);
    if (n.kind != NodeKind::Expansion || n.kids.size() < 2) continue;
    NetType ty = f.types.at(r);
    ARule rule;
    if (ty.a->kind == FKind::And) rule = ARule::CAnd;
    else if (ty.a->kind == FKind::AtomF) rule = ty.a->atom.neg ? ARule::CNeg : ARule::CPos;
    else {
      seq_fail(why, "expansion typed by neither an atom nor a conjunction");
      return std::nullopt;
    }
    TypedForest p = f;
    p.nodes.erase(r);
    p.types.erase(r);
    NodeId e1 = p.add(NodeKind::Expansion, {n.kids[0]});
    NodeId e2 = p.add(NodeKind::Expansion, {n.kids.begin() + 1, n.kids.end()});
    replace_root(p, r, {e1, e2});
    p.types[e1] = ty;
    p.types[e2] = ty;
    auto sub = seq_rec(p, why);
    if (!sub) return std::nullopt;
    return mk_step(rule, {*sub}, f);
  }

  // A splitting conjunction or cut.
  auto cand = find_split(f, g);
  if (!cand) {
    seq_fail(why, "no disjunction, contraction, axiom or splitting conjunction applies");
    return std::nullopt;
  }
  const NetNode& rn = f.node(cand->root);
  int ct = cand->comp.at(cand->t);
  int cs = cand->comp.at(cand->s);
  TypedForest f1 = restrict_comp(f, cand->comp, ct);
  TypedForest f2 = restrict_comp(f, cand->comp, cs);
  for (NodeId r : f.roots) {
    if (r == cand->root) {
      f1.roots.push_back(cand->t);
      f2.roots.push_back(cand->s);
      continue;
    }
    (cand->comp.at(r) == ct ? f1 : f2).roots.push_back(r);
  }
  ARule rule;
  if (rn.kind == NodeKind::CutNode) {
    rule = ARule::Cut;  // the kid type entries carry over through restriction
  } else {
    rule = ARule::And;
    const Formula& ty = f.types.at(cand->root).a;
    f1.types[cand->t] = classical_type(ty->left);
    f2.types[cand->s] = classical_type(ty->right);
  }
  auto d1 = seq_rec(f1, why);
  if (!d1) return std::nullopt;
  auto d2 = seq_rec(f2, why);
  if (!d2) return std::nullopt;
  return mk_step(rule, {*d1, *d2}, f);
}

}  // namespace

std::optional<AnnDeriv> try_sequentialize(const TypedForest& f, std::string* why) {
  std::string terr;
  if (!type_check(f, &terr)) {
    if (why) *why = "not sequentializable: ill-typed input: " + terr;
    return std::nullopt;
  }
  std::string local;
  auto d = seq_rec(f, why ? why : &local);
  return d;
}

AnnDeriv sequentialize(const TypedForest& f) {
  std::string why;
  auto d = try_sequentialize(f, &why);
  require(d.has_value(), why.empty() ? "not sequentializable" : why);
  return *d;
}

std::optional<NodeId> find_splitting_tensor(const TypedForest& f) {
  if (f.nodes.empty()) return std::nullopt;
  NetGraph g = graph_of(f);
  std::map<NodeId, int> comp = components(g, {});
  for (const auto& [v, c] : comp)
    if (c != 0) return std::nullopt;
  auto cand = find_split(f, g);
  if (!cand) return std::nullopt;
  return cand->root;
}

bool ac_correct_poly(const TypedForest& f) {
  TypedForest wrapped = f;
  for (NodeId r : f.roots) {
    const NetNode& n = f.node(r);
    if (n.kind != NodeKind::Wire && n.kind != NodeKind::Tensor) continue;
    NetType ty = wrapped.types.at(r);
    NodeId e = wrapped.add(NodeKind::Expansion, {r});
    wrapped.types.erase(r);
    wrapped.types[e] =
        classical_type(ty.kind == TypeKind::TensorT ? mk_and(ty.a, ty.b) : ty.a);
    replace_root(wrapped, r, {e});
  }
  return try_sequentialize(wrapped).has_value();
}

}  // namespace exnet
