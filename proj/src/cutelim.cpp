#include "exnet/cutelim.hpp"

#include <algorithm>
#include <functional>

#include "exnet/formula.hpp"
#include "exnet/seq.hpp"
#include "exnet/subnet.hpp"

namespace exnet {

const char* redex_name(RedexKind k) {
  switch (k) {
    case RedexKind::AndOr: return "and-or";
    case RedexKind::Atomic: return "atomic";
    case RedexKind::Contraction: return "contraction";
    case RedexKind::Weakening: return "weakening";
  }
  return "?";
}

ClosureMap identity_trace(std::size_t n) {
  ClosureMap m(n);
  for (std::size_t i = 0; i < n; ++i) m[i].from = static_cast<int>(i);
  return m;
}

ClosureMap compose_traces(const ClosureMap& later, const ClosureMap& earlier) {
  ClosureMap m(later.size());
  for (std::size_t i = 0; i < later.size(); ++i) {
    const RootTrace& mid = earlier.at(later[i].from);
    m[i].from = mid.from;
    m[i].closed = later[i].closed || mid.closed;
  }
  return m;
}

std::size_t non_cut_root_count(const TypedForest& f) {
  std::size_t n = 0;
  for (NodeId r : f.roots)
    if (f.node(r).kind != NodeKind::CutNode) ++n;
  return n;
}

namespace {

bool contains(const std::vector<NodeId>& v, NodeId id) {
  return std::find(v.begin(), v.end(), id) != v.end();
}

std::vector<NodeId> non_cut_roots(const TypedForest& f) {
  std::vector<NodeId> out;
  for (NodeId r : f.roots)
    if (f.node(r).kind != NodeKind::CutNode) out.push_back(r);
  return out;
}

void replace_in_roots(TypedForest& f, NodeId r, const std::vector<NodeId>& by) {
  auto it = std::find(f.roots.begin(), f.roots.end(), r);
  require(it != f.roots.end(), "cutelim: lost a root");
  it = f.roots.erase(it);
  f.roots.insert(it, by.begin(), by.end());
}

void replace_in_kids(NetNode& n, NodeId old, const std::vector<NodeId>& by) {
  auto it = std::find(n.kids.begin(), n.kids.end(), old);
  require(it != n.kids.end(), "cutelim: lost a child");
  it = n.kids.erase(it);
  n.kids.insert(it, by.begin(), by.end());
}

NodeId wire_partner_of(const TypedForest& f, NodeId w) {
  const NetNode& wn = f.node(w);
  for (const auto& [id, n] : f.nodes)
    if (id != w && n.kind == NodeKind::Wire && n.wire.sym == wn.wire.sym) return id;
  throw ContractViolation("cutelim: wire without a partner");
}

// Fresh wire names, avoiding every name used so far.
struct FreshNames {
  std::set<std::string> used;
  int n = 0;

  explicit FreshNames(const TypedForest& f) {
    for (const auto& [id, node] : f.nodes) {
      (void)id;
      if (node.kind == NodeKind::Wire) used.insert(node.wire.sym);
    }
  }
  void absorb(const TypedForest& f) {
    for (const auto& [id, node] : f.nodes) {
      (void)id;
      if (node.kind == NodeKind::Wire) used.insert(node.wire.sym);
    }
  }
  std::string fresh(const std::string& base) {
    for (;;) {
      std::string c = base + "_" + std::to_string(n++);
      if (used.insert(c).second) return c;
    }
  }
};

// Provenance assembly: every surviving non-cut root either kept its id or
// is registered in origin_of with the input root it stands for.
ClosureMap trace_roots(const std::vector<NodeId>& orig, const TypedForest& out,
                       const std::map<NodeId, std::pair<NodeId, bool>>& origin_of) {
  std::map<NodeId, int> idx;
  for (std::size_t i = 0; i < orig.size(); ++i) idx[orig[i]] = static_cast<int>(i);
  ClosureMap m;
  for (NodeId r : non_cut_roots(out)) {
    RootTrace t;
    auto o = origin_of.find(r);
    if (o != origin_of.end()) {
      t.from = idx.at(o->second.first);
      t.closed = o->second.second;
    } else {
      t.from = idx.at(r);
    }
    m.push_back(t);
  }
  return m;
}

void erase_node(TypedForest& f, NodeId id) {
  f.nodes.erase(id);
  f.types.erase(id);
}

std::set<NodeId> subtree_set(const TypedForest& f, NodeId root) {
  std::vector<NodeId> v = subtree_of(f, root);
  return std::set<NodeId>(v.begin(), v.end());
}

Reduction reduce_andor(TypedForest f, NodeId c, NodeId pos, NodeId neg) {
  std::vector<NodeId> orig = non_cut_roots(f);
  const NetNode& en = f.node(pos);
  NodeId tau = en.kids.at(0);
  NodeId s1 = f.node(tau).kids[0];
  NodeId s2 = f.node(tau).kids[1];
  NodeId t1 = f.node(neg).kids[0];
  NodeId t2 = f.node(neg).kids[1];
  Formula conj = f.types.at(pos).a;
  Formula disj = f.types.at(neg).a;

  erase_node(f, c);
  erase_node(f, pos);
  erase_node(f, tau);
  erase_node(f, neg);
  f.types[s1] = classical_type(conj->left);
  f.types[s2] = classical_type(conj->right);
  f.types[t1] = classical_type(disj->left);
  f.types[t2] = classical_type(disj->right);
  NodeId c1 = f.add(NodeKind::CutNode, {s1, t1});
  NodeId c2 = f.add(NodeKind::CutNode, {s2, t2});
  replace_in_roots(f, c, {c1, c2});

  Reduction out;
  out.net = std::move(f);
  out.roots = trace_roots(orig, out.net, {});
  out.cuts = {c2, c1};
  out.kind = RedexKind::AndOr;
  return out;
}

Reduction reduce_atomic(TypedForest f, NodeId c, NodeId pos, NodeId neg) {
  std::vector<NodeId> orig = non_cut_roots(f);
  NodeId w = f.node(pos).kids.at(0);
  NodeId partner = wire_partner_of(f, w);
  std::map<NodeId, NodeId> par = parents_of(f);
  std::map<NodeId, std::pair<NodeId, bool>> origin;

  erase_node(f, c);
  erase_node(f, pos);
  erase_node(f, w);

  auto pit = par.find(partner);
  if (pit == par.end()) {
    // The dual wire is a witness root; the negative term closes it.
    require(contains(f.roots, partner), "atomic cut: detached dual wire");
    replace_in_roots(f, partner, {neg});
    origin[neg] = {partner, true};
    erase_node(f, partner);
  } else {
    NodeId host = pit->second;
    require(f.node(host).kind == NodeKind::Expansion,
            "atomic cut: dual wire not in a summand position");
    require(host != neg, "atomic cut: the dual wire sits on the negative side itself");
    replace_in_kids(f.node(host), partner, f.node(neg).kids);
    erase_node(f, partner);
    erase_node(f, neg);
  }
  replace_in_roots(f, c, {});

  Reduction out;
  out.net = std::move(f);
  out.roots = trace_roots(orig, out.net, origin);
  out.cuts = {};
  out.kind = RedexKind::Atomic;
  return out;
}

Reduction reduce_weakening(TypedForest f, NodeId c, NodeId pos, NodeId neg) {
  std::vector<NodeId> orig = non_cut_roots(f);
  NodeId tau = f.node(pos).kids.at(0);
  const NetNode& on = f.node(neg);
  bool star_right = f.node(on.kids[1]).kind == NodeKind::Star;
  NodeId star = star_right ? on.kids[1] : on.kids[0];
  NodeId t = star_right ? on.kids[0] : on.kids[1];
  NodeId keep = star_right ? f.node(tau).kids[0] : f.node(tau).kids[1];
  NodeId drop = star_right ? f.node(tau).kids[1] : f.node(tau).kids[0];
  Formula conj = f.types.at(pos).a;
  Formula disj = f.types.at(neg).a;
  Formula keep_ty = star_right ? conj->left : conj->right;
  Formula t_ty = star_right ? disj->left : disj->right;

  erase_node(f, c);
  erase_node(f, pos);
  erase_node(f, tau);
  erase_node(f, neg);
  erase_node(f, star);
  f.types[keep] = classical_type(keep_ty);
  f.types[t] = classical_type(t_ty);
  NodeId c2 = f.add(NodeKind::CutNode, {keep, t});
  replace_in_roots(f, c, {c2});

  // The dropped component hangs free; erase its empire.
  f.roots.push_back(drop);
  std::set<NodeId> region = contiguous_empire(f, drop);
  for (NodeId v : {c2, keep, t})
    require(!region.count(v),
            "weakening: the dropped component's empire touches the residual cut");

  std::map<NodeId, NodeId> par = parents_of(f);
  for (NodeId r : substructure_roots(f, region)) {
    auto pit = par.find(r);
    if (pit == par.end()) {
      require(contains(f.roots, r), "weakening: region root is neither a root nor attached");
      replace_in_roots(f, r, {});
      continue;
    }
    NetNode& pn = f.node(pit->second);
    if (pn.kind == NodeKind::Expansion) {
      replace_in_kids(pn, r, {});
      require(!pn.kids.empty(), "weakening: erasure emptied an expansion");
    } else if (pn.kind == NodeKind::OrNode) {
      NodeId sib = pn.kids[0] == r ? pn.kids[1] : pn.kids[0];
      require(!region.count(sib) && f.node(sib).kind != NodeKind::Star,
              "weakening: erasure left a disjunction without a branch");
      NodeId st = f.add(NodeKind::Star);
      *std::find(pn.kids.begin(), pn.kids.end(), r) = st;
    } else {
      throw ContractViolation("weakening: erasure would unhook a tensor or cut branch");
    }
  }
  for (NodeId v : region) erase_node(f, v);

  Reduction out;
  out.net = std::move(f);
  out.roots = trace_roots(orig, out.net, {});
  out.cuts = {c2};
  out.kind = RedexKind::Weakening;
  return out;
}

Reduction reduce_contraction(TypedForest f, NodeId c, NodeId pos, NodeId neg) {
  std::vector<NodeId> orig = non_cut_roots(f);
  std::map<NodeId, std::pair<NodeId, bool>> origin;
  const std::vector<NodeId> summands = f.node(pos).kids;

  // The summand cut against the whole negative tree: a kingdom-maximal
  // one, ties to the lowest id.
  std::map<NodeId, std::set<NodeId>> king;
  for (NodeId s : summands) king[s] = kingdom(f, s);
  NodeId sel = 0;
  bool have = false;
  for (NodeId s : summands) {
    bool below = false;
    for (NodeId s2 : summands)
      if (s2 != s && king[s2].count(s) && !king[s].count(s2)) below = true;
    if (!below && !have) {
      sel = s;
      have = true;
    }
  }
  require(have, "contraction: no kingdom-maximal summand");

  std::set<NodeId> region = kingdom(f, neg);
  std::set<NodeId> redex = subtree_set(f, pos);
  redex.insert(c);
  for (NodeId v : redex)
    require(!region.count(v), "contraction: the kingdom of the negative side overlaps the redex");

  std::map<NodeId, NodeId> par = parents_of(f);
  std::vector<NodeId> kroots = substructure_roots(f, region);
  NetType cut_ty = f.types.at(neg);
  NetType pos_ty = f.types.at(pos);

  // Two fresh copies of the kingdom, wires renamed per copy.
  FreshNames names(f);
  std::map<NodeId, NodeId> copy[2];
  std::map<std::string, std::string> rename[2];
  for (int side = 0; side < 2; ++side) {
    for (NodeId v : region) copy[side][v] = f.next_id++;
    for (NodeId v : region) {
      const NetNode& old = f.node(v);
      NetNode n;
      n.id = copy[side][v];
      n.kind = old.kind;
      for (NodeId k : old.kids) n.kids.push_back(copy[side].at(k));
      if (old.kind == NodeKind::Wire) {
        auto it = rename[side].find(old.wire.sym);
        if (it == rename[side].end())
          it = rename[side].emplace(old.wire.sym, names.fresh(old.wire.sym)).first;
        n.wire = Atom(it->second, old.wire.neg);
      }
      f.nodes.emplace(n.id, n);
    }
    std::vector<std::pair<NodeId, NetType>> dup;
    for (const auto& [v, t] : f.types) {
      auto it = copy[side].find(v);
      if (it == copy[side].end()) continue;
      if (par.find(v) == par.end() && contains(f.roots, v) &&
          f.node(v).kind != NodeKind::CutNode)
        continue;  // witness roots are re-rooted below
      dup.emplace_back(it->second, t);
    }
    for (auto& [v, t] : dup) f.types[v] = t;
  }

  // Reattach every kingdom root besides the negative tree itself.
  for (NodeId r : kroots) {
    if (r == neg) continue;
    NodeId rl = copy[0].at(r);
    NodeId rr = copy[1].at(r);
    auto pit = par.find(r);
    if (pit == par.end()) {
      const NetNode& rn = f.node(r);
      if (rn.kind == NodeKind::Wire) {
        NodeId e = f.add(NodeKind::Expansion, {rl, rr});
        f.types[e] = classical_type(f.types.at(r).a);
        replace_in_roots(f, r, {e});
        origin[e] = {r, true};
      } else if (rn.kind == NodeKind::CutNode) {
        replace_in_roots(f, r, {rl, rr});
      } else {
        throw ContractViolation("contraction: the kingdom absorbs a sequent root");
      }
      continue;
    }
    NetNode& pn = f.node(pit->second);
    require(!region.count(pit->second), "contraction: kingdom root attached inside the kingdom");
    require(pn.kind == NodeKind::Expansion,
            "contraction: kingdom root under a connective that cannot take two copies");
    replace_in_kids(pn, r, {rl, rr});
  }

  // Split the positive expansion and re-cut against the two copies.
  std::vector<NodeId> rest;
  for (NodeId s : summands)
    if (s != sel) rest.push_back(s);
  erase_node(f, c);
  erase_node(f, pos);
  NodeId e1 = f.add(NodeKind::Expansion, {sel});
  NodeId e2 = f.add(NodeKind::Expansion, rest);
  f.types[e1] = pos_ty;
  f.types[e2] = pos_ty;
  f.types[copy[0].at(neg)] = cut_ty;
  f.types[copy[1].at(neg)] = cut_ty;
  NodeId c1 = f.add(NodeKind::CutNode, {e1, copy[0].at(neg)});
  NodeId c2 = f.add(NodeKind::CutNode, {e2, copy[1].at(neg)});
  replace_in_roots(f, c, {c1, c2});

  for (NodeId v : region) erase_node(f, v);

  Reduction out;
  out.net = std::move(f);
  out.roots = trace_roots(orig, out.net, origin);
  out.cuts = {c2, c1};
  out.kind = RedexKind::Contraction;
  return out;
}

}  // namespace

NodeId positive_side(const TypedForest& f, NodeId cut) {
  const NetNode& cn = f.node(cut);
  require(cn.kind == NodeKind::CutNode, "positive_side: not a cut");
  std::optional<NodeId> pos;
  for (NodeId k : cn.kids) {
    const Formula& ty = f.types.at(k).a;
    bool positive = ty->kind == FKind::And || (ty->kind == FKind::AtomF && ty->atom.neg);
    if (positive) {
      require(!pos, "positive_side: both cut sides look positive");
      pos = k;
    }
  }
  require(pos.has_value(), "positive_side: no positive cut side");
  return *pos;
}

int positive_width(const TypedForest& f, NodeId cut) {
  NodeId p = positive_side(f, cut);
  require(f.node(p).kind == NodeKind::Expansion, "positive cut side is not an expansion");
  return static_cast<int>(f.node(p).kids.size());
}

RedexKind classify_cut(const TypedForest& f, NodeId cut) {
  NodeId p = positive_side(f, cut);
  require(f.node(p).kind == NodeKind::Expansion, "positive cut side is not an expansion");
  const NetNode& pn = f.node(p);
  if (pn.kids.size() > 1) return RedexKind::Contraction;
  NodeKind sk = f.node(pn.kids.at(0)).kind;
  if (sk == NodeKind::Wire) return RedexKind::Atomic;
  require(sk == NodeKind::Tensor, "positive cut side has a malformed summand");
  const NetNode& cn = f.node(cut);
  NodeId neg = cn.kids[0] == p ? cn.kids[1] : cn.kids[0];
  require(f.node(neg).kind == NodeKind::OrNode, "negative cut side is not a disjunction");
  const NetNode& on = f.node(neg);
  bool st = f.node(on.kids[0]).kind == NodeKind::Star ||
            f.node(on.kids[1]).kind == NodeKind::Star;
  return st ? RedexKind::Weakening : RedexKind::AndOr;
}

Reduction reduce_cut(const TypedForest& f, NodeId cut) {
  require(contains(f.roots, cut), "reduce_cut: not a root");
  NodeId pos = positive_side(f, cut);
  const NetNode& cn = f.node(cut);
  NodeId neg = cn.kids[0] == pos ? cn.kids[1] : cn.kids[0];
  switch (classify_cut(f, cut)) {
    case RedexKind::Contraction: return reduce_contraction(f, cut, pos, neg);
    case RedexKind::Atomic: return reduce_atomic(f, cut, pos, neg);
    case RedexKind::Weakening: return reduce_weakening(f, cut, pos, neg);
    case RedexKind::AndOr: return reduce_andor(f, cut, pos, neg);
  }
  throw ContractViolation("reduce_cut: unknown redex");
}

namespace {

std::pair<int, int> cut_measure(const TypedForest& f, NodeId cut) {
  const NetNode& cn = f.node(cut);
  int r = rank(f.types.at(cn.kids[0]).a);
  return {r, positive_width(f, cut)};
}

struct ElimState {
  TypedForest net;
  ClosureMap roots;
  std::vector<ReductionStep> trace;
};

void elim_rec(ElimState& st, NodeId cut, std::optional<std::pair<int, int>> above) {
  std::pair<int, int> m = cut_measure(st.net, cut);
  if (above)
    require(m < *above, "cut elimination: the (rank, width) measure failed to decrease");
  Reduction step = reduce_cut(st.net, cut);
  st.trace.push_back({step.kind, cut});
  st.roots = compose_traces(step.roots, st.roots);
  st.net = std::move(step.net);
  for (NodeId next : step.cuts)
    if (contains(st.net.roots, next)) elim_rec(st, next, m);
}

std::vector<NodeId> cut_roots_of(const TypedForest& f) {
  std::vector<NodeId> out;
  for (NodeId r : f.roots)
    if (f.node(r).kind == NodeKind::CutNode) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

bool topmost(const TypedForest& f, NodeId cut) {
  for (NodeId v : kingdom(f, cut))
    if (v != cut && f.node(v).kind == NodeKind::CutNode) return false;
  return true;
}

void check_entry(const TypedForest& f) {
  std::string err;
  require(type_check(f, &err), "cut elimination: ill-typed input: " + err);
  require(ac_correct_poly(f), "cut elimination: input is not correct");
}

}  // namespace

Elimination eliminate_cut(const TypedForest& f, NodeId cut) {
  check_entry(f);
  require(f.has(cut) && f.node(cut).kind == NodeKind::CutNode, "eliminate_cut: not a cut");
  require(topmost(f, cut), "eliminate_cut: the cut's kingdom contains another cut");
  ElimState st{f, identity_trace(non_cut_root_count(f)), {}};
  elim_rec(st, cut, std::nullopt);
  return {std::move(st.net), std::move(st.roots), std::move(st.trace)};
}

Elimination eliminate_all(const TypedForest& f) {
  check_entry(f);
  ElimState st{f, identity_trace(non_cut_root_count(f)), {}};
  for (;;) {
    std::vector<NodeId> cuts = cut_roots_of(st.net);
    if (cuts.empty()) break;
    std::optional<NodeId> pick;
    for (NodeId c : cuts)
      if (topmost(st.net, c)) {
        pick = c;
        break;
      }
    require(pick.has_value(), "eliminate_all: no topmost cut");
    elim_rec(st, *pick, std::nullopt);
    require(cut_roots_of(st.net).size() < cuts.size(),
            "eliminate_all: a step failed to reduce the number of cuts");
  }
  std::string err;
  require(type_check(st.net, &err), "eliminate_all: result ill-typed: " + err);
  require(is_subsequent(classical_sequent(st.net), classical_sequent(f)),
          "eliminate_all: result is not a subsequent of the input's closure");
  return {std::move(st.net), std::move(st.roots), std::move(st.trace)};
}

namespace {

// Slot type of a node: its recorded type, or the one induced by its
// parent's type and position.
NetType slot_type(const TypedForest& f, const std::map<NodeId, NodeId>& par, NodeId v) {
  auto it = f.types.find(v);
  if (it != f.types.end()) return it->second;
  auto pit = par.find(v);
  require(pit != par.end(), "slot_type: untyped root");
  const NetNode& pn = f.node(pit->second);
  NetType pt = slot_type(f, par, pit->second);
  int slot = pn.kids[0] == v ? 0 : 1;
  switch (pn.kind) {
    case NodeKind::Expansion:
      require(pt.kind == TypeKind::ClassicalT, "slot_type: malformed expansion type");
      if (pt.a->kind == FKind::AtomF) return witness_type(pt.a);
      require(pt.a->kind == FKind::And, "slot_type: expansion typed by a non-conjunction");
      return tensor_type(pt.a->left, pt.a->right);
    case NodeKind::OrNode:
      require(pt.kind == TypeKind::ClassicalT && pt.a->kind == FKind::Or,
              "slot_type: malformed disjunction type");
      return classical_type(slot == 0 ? pt.a->left : pt.a->right);
    case NodeKind::Tensor:
      require(pt.kind == TypeKind::TensorT, "slot_type: malformed tensor type");
      return classical_type(slot == 0 ? pt.a : pt.b);
    default:
      throw ContractViolation("slot_type: unexpected parent kind");
  }
}

}  // namespace

Replacement replace_subnet(const TypedForest& host, const std::set<NodeId>& region,
                           const TypedForest& graft,
                           const std::map<NodeId, NodeId>& root_map) {
  std::string err;
  require(is_substructure(host, region, &err), "replace_subnet: bad region: " + err);
  require(type_check(graft, &err), "replace_subnet: ill-typed graft: " + err);

  std::vector<NodeId> rroots = substructure_roots(host, region);
  std::set<NodeId> rset(rroots.begin(), rroots.end());
  std::map<NodeId, NodeId> host_par = parents_of(host);

  std::vector<NodeId> gseq;
  std::vector<NodeId> gcuts;
  for (NodeId r : graft.roots)
    (graft.node(r).kind == NodeKind::CutNode ? gcuts : gseq).push_back(r);
  require(root_map.size() == gseq.size(), "replace_subnet: map must cover the graft roots");
  std::set<NodeId> images;
  for (const auto& [g, r] : root_map) {
    require(contains(gseq, g), "replace_subnet: map key is not a graft root");
    require(rset.count(r), "replace_subnet: map image is not a region root");
    require(images.insert(r).second, "replace_subnet: map is not injective");
  }

  TypedForest out = host;
  for (NodeId v : region) erase_node(out, v);

  // Import the graft with fresh ids and fresh wire names.
  FreshNames names(host);
  names.absorb(graft);
  std::map<NodeId, NodeId> embed;
  std::map<std::string, std::string> rename;
  for (const auto& [id, n] : graft.nodes) {
    (void)n;
    embed[id] = out.next_id++;
  }
  for (const auto& [id, n] : graft.nodes) {
    NetNode nn;
    nn.id = embed[id];
    nn.kind = n.kind;
    for (NodeId k : n.kids) nn.kids.push_back(embed.at(k));
    if (n.kind == NodeKind::Wire) {
      auto it = rename.find(n.wire.sym);
      if (it == rename.end()) it = rename.emplace(n.wire.sym, names.fresh(n.wire.sym)).first;
      nn.wire = Atom(it->second, n.wire.neg);
    }
    out.nodes.emplace(nn.id, nn);
  }
  for (const auto& [id, t] : graft.types) out.types[embed.at(id)] = t;

  // Attach the mapped roots.
  std::map<NodeId, std::pair<NodeId, bool>> origin;
  for (const auto& [g, r] : root_map) {
    NodeId ng = embed.at(g);
    NetType want = slot_type(host, host_par, r);
    const NetType& give = graft.types.at(g);
    bool closing = want.kind == TypeKind::WitnessT && give.kind == TypeKind::ClassicalT &&
                   formula_equal(want.a, give.a);
    require(closing || type_equal(want, give), "replace_subnet: root types do not match");

    auto pit = host_par.find(r);
    if (pit == host_par.end()) {
      replace_in_roots(out, r, {ng});
      origin[ng] = {r, closing};
      continue;
    }
    NetNode& pn = out.node(pit->second);
    if (closing && pn.kind == NodeKind::Expansion) {
      // Closing a wire in summand position splices the expansion in.
      require(graft.node(g).kind == NodeKind::Expansion,
              "replace_subnet: closing term is not an expansion");
      replace_in_kids(pn, r, out.node(ng).kids);
      erase_node(out, ng);
    } else {
      replace_in_kids(pn, r, {ng});
      if (pn.kind != NodeKind::CutNode) out.types.erase(ng);
    }
  }

  // Weakness: unmapped region roots, spread upward while every child of a
  // node is weak.
  std::set<NodeId> weak;
  for (NodeId r : rroots)
    if (!images.count(r)) weak.insert(r);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [id, n] : out.nodes) {
      if (weak.count(id) || n.kids.empty()) continue;
      bool all = true;
      for (NodeId k : n.kids) all = all && weak.count(k);
      if (all) {
        weak.insert(id);
        grew = true;
      }
    }
  }

  std::function<void(NodeId)> drop_subtree = [&](NodeId v) {
    if (!out.nodes.count(v)) return;
    std::vector<NodeId> kids = out.node(v).kids;
    erase_node(out, v);
    for (NodeId k : kids) drop_subtree(k);
  };

  std::map<NodeId, NodeId> out_par = parents_of(out);
  for (NodeId v : weak) {
    auto pit = out_par.find(v);
    if (pit == out_par.end()) {
      if (contains(out.roots, v)) {
        replace_in_roots(out, v, {});
        drop_subtree(v);
      }
      continue;
    }
    if (weak.count(pit->second)) continue;
    NetNode& pn = out.node(pit->second);
    if (pn.kind == NodeKind::Expansion) {
      replace_in_kids(pn, v, {});
      drop_subtree(v);
      require(!pn.kids.empty(), "replace_subnet: weakening emptied an expansion");
    } else if (pn.kind == NodeKind::OrNode) {
      NodeId sib = pn.kids[0] == v ? pn.kids[1] : pn.kids[0];
      require(!weak.count(sib) && out.nodes.count(sib) &&
                  out.node(sib).kind != NodeKind::Star,
              "replace_subnet: a disjunction lost both branches");
      NodeId st = out.add(NodeKind::Star);
      *std::find(pn.kids.begin(), pn.kids.end(), v) = st;
      drop_subtree(v);
    } else {
      throw ContractViolation("replace_subnet: a tensor or cut branch became weak");
    }
  }

  for (NodeId gc : gcuts) out.roots.push_back(embed.at(gc));

  require(type_check(out, &err), "replace_subnet: result ill-typed: " + err);
  Replacement rep;
  rep.roots = trace_roots(non_cut_roots(host), out, origin);
  rep.net = std::move(out);
  return rep;
}

}  // namespace exnet
