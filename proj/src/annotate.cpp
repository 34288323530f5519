#include "exnet/annotate.hpp"

#include <algorithm>
#include <set>

#include "exnet/formula.hpp"

namespace exnet {

const char* arule_name(ARule r) {
  switch (r) {
    case ARule::Ax: return "Ax";
    case ARule::AxTop: return "AxT";
    case ARule::Or: return "Or";
    case ARule::Or0: return "Or0";
    case ARule::Or1: return "Or1";
    case ARule::And: return "And";
    case ARule::CAnd: return "C/\\";
    case ARule::CPos: return "Cp";
    case ARule::CNeg: return "C~p";
    case ARule::Mix: return "Mix";
    case ARule::Cut: return "Cut";
  }
  return "?";
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = "annotated: " + msg;
  return false;
}

bool node_equal(const NetNode& a, const NetNode& b) {
  if (a.kind != b.kind || a.kids != b.kids) return false;
  if (a.kind == NodeKind::Wire) return a.wire == b.wire;
  return true;
}

std::vector<NodeId> seq_roots(const TypedForest& f) {
  std::vector<NodeId> out;
  for (NodeId r : f.roots)
    if (f.node(r).kind != NodeKind::CutNode) out.push_back(r);
  return out;
}

std::vector<NodeId> cut_roots(const TypedForest& f) {
  std::vector<NodeId> out;
  for (NodeId r : f.roots)
    if (f.node(r).kind == NodeKind::CutNode) out.push_back(r);
  return out;
}

bool contains(const std::vector<NodeId>& v, NodeId id) {
  return std::find(v.begin(), v.end(), id) != v.end();
}

int index_of(const std::vector<NodeId>& v, NodeId id) {
  auto it = std::find(v.begin(), v.end(), id);
  require(it != v.end(), "strip_annotations: root bookkeeping out of step");
  return static_cast<int>(it - v.begin());
}

// The conclusion's node map must be the disjoint union of the premise
// maps, minus `dropped`, with shared nodes unchanged. Genuinely new ids
// are collected into `added`.
bool nodes_extend(const std::vector<const TypedForest*>& prems, const TypedForest& c,
                  const std::set<NodeId>& dropped, std::set<NodeId>& added,
                  std::string* why) {
  std::map<NodeId, const NetNode*> merged;
  for (const TypedForest* p : prems)
    for (const auto& [id, n] : p->nodes)
      if (!merged.emplace(id, &n).second) return fail(why, "premises share node ids");
  for (const auto& [id, n] : merged) {
    if (dropped.count(id)) {
      if (c.has(id)) return fail(why, "node survives a step that should drop it");
      continue;
    }
    if (!c.has(id)) return fail(why, "premise node lost by a step");
    if (!node_equal(c.node(id), *n)) return fail(why, "premise node altered by a step");
  }
  for (const auto& [id, n] : c.nodes) {
    (void)n;
    if (!merged.count(id)) added.insert(id);
  }
  return true;
}

// Same discipline for the type maps, with explicitly listed removed and
// added keys; shared entries must agree.
bool types_extend(const std::vector<const TypedForest*>& prems, const TypedForest& c,
                  const std::set<NodeId>& removed, const std::set<NodeId>& added,
                  std::string* why) {
  std::map<NodeId, const NetType*> merged;
  for (const TypedForest* p : prems)
    for (const auto& [id, t] : p->types) merged.emplace(id, &t);
  for (const auto& [id, t] : merged) {
    if (removed.count(id)) {
      if (c.types.count(id)) return fail(why, "type entry survives its removal");
      continue;
    }
    auto it = c.types.find(id);
    if (it == c.types.end()) return fail(why, "type entry lost by a step");
    if (!type_equal(it->second, *t)) return fail(why, "type entry altered by a step");
  }
  for (const auto& [id, t] : c.types) {
    (void)t;
    if (!merged.count(id) && !added.count(id)) return fail(why, "unexpected new type entry");
  }
  for (NodeId id : added)
    if (!c.types.count(id)) return fail(why, "missing type entry for a new root");
  return true;
}

bool roots_rearranged(const std::vector<const TypedForest*>& prems, const TypedForest& c,
                      const std::set<NodeId>& removed, const std::set<NodeId>& added,
                      std::string* why) {
  std::set<NodeId> want;
  for (const TypedForest* p : prems)
    for (NodeId r : p->roots)
      if (!removed.count(r)) want.insert(r);
  want.insert(added.begin(), added.end());
  std::set<NodeId> got(c.roots.begin(), c.roots.end());
  if (got.size() != c.roots.size()) return fail(why, "duplicate root");
  if (got != want) return fail(why, "conclusion roots do not match the rule");
  return true;
}

bool check_node(const AnnDerivNode& n, bool allow_cut, std::string* why);

bool check_step(const AnnDerivNode& n, bool allow_cut, std::string* why) {
  const TypedForest& c = n.conclusion;
  std::vector<const TypedForest*> prems;
  for (const auto& p : n.premises) prems.push_back(&p->conclusion);

  auto arity = [&](std::size_t k) {
    return n.premises.size() == k ||
           fail(why, std::string(arule_name(n.rule)) + ": wrong premise count");
  };

  switch (n.rule) {
    case ARule::Ax: {
      if (!arity(0)) return false;
      if (c.roots.size() != 2 || c.nodes.size() != 4) return fail(why, "Ax: wrong shape");
      for (NodeId r : c.roots) {
        const NetNode& e = c.node(r);
        if (e.kind != NodeKind::Expansion || e.kids.size() != 1 ||
            c.node(e.kids[0]).kind != NodeKind::Wire)
          return fail(why, "Ax: roots must be one-wire expansions");
      }
      const NetType& t0 = c.types.at(c.roots[0]);
      const NetType& t1 = c.types.at(c.roots[1]);
      if (t0.kind != TypeKind::ClassicalT || t0.a->kind != FKind::AtomF ||
          t1.kind != TypeKind::ClassicalT || !formula_equal(dual(t0.a), t1.a))
        return fail(why, "Ax: roots must have dual atomic types");
      return true;
    }
    case ARule::AxTop: {
      if (!arity(0)) return false;
      if (c.roots.size() != 1 || c.nodes.size() != 1 ||
          c.node(c.roots[0]).kind != NodeKind::One ||
          c.types.at(c.roots[0]).a->kind != FKind::Top)
        return fail(why, "AxT: conclusion must be a single 1 : T");
      return true;
    }
    case ARule::Or:
    case ARule::Or0:
    case ARule::Or1: {
      if (!arity(1)) return false;
      const TypedForest& p = *prems[0];
      std::set<NodeId> added;
      std::set<NodeId> gone;
      for (NodeId r : p.roots)
        if (!contains(c.roots, r)) gone.insert(r);
      std::set<NodeId> dropped;  // the or rules drop no nodes
      if (!nodes_extend(prems, c, dropped, added, why)) return false;

      NodeId o = 0;
      bool found = false;
      for (NodeId id : added)
        if (c.node(id).kind == NodeKind::OrNode) {
          if (found) return fail(why, "or: more than one new disjunction");
          o = id;
          found = true;
        }
      if (!found || !contains(c.roots, o)) return fail(why, "or: no new disjunction root");
      const NetNode& on = c.node(o);
      auto tp = c.types.find(o);
      if (tp == c.types.end() || tp->second.kind != TypeKind::ClassicalT ||
          tp->second.a->kind != FKind::Or)
        return fail(why, "or: principal type is not a disjunction");
      Formula fa = tp->second.a->left;
      Formula fb = tp->second.a->right;

      auto real_kid = [&](NodeId k, const Formula& side) {
        if (!contains(p.roots, k)) return fail(why, "or: active is not a premise root");
        auto it = p.types.find(k);
        if (it == p.types.end() || it->second.kind != TypeKind::ClassicalT ||
            !formula_equal(it->second.a, side))
          return fail(why, "or: active type does not match the disjunct");
        return true;
      };

      if (n.rule == ARule::Or) {
        if (added.size() != 1 || gone.size() != 2) return fail(why, "or: wrong root change");
        if (!real_kid(on.kids[0], fa) || !real_kid(on.kids[1], fb)) return false;
        if (!gone.count(on.kids[0]) || !gone.count(on.kids[1]))
          return fail(why, "or: actives still roots");
      } else {
        if (added.size() != 2 || gone.size() != 1) return fail(why, "or: wrong root change");
        NodeId star = *std::find_if(added.begin(), added.end(), [&](NodeId id) { return id != o; });
        if (c.node(star).kind != NodeKind::Star) return fail(why, "or: second new node not *");
        NodeId real = n.rule == ARule::Or0 ? on.kids[0] : on.kids[1];
        NodeId weak = n.rule == ARule::Or0 ? on.kids[1] : on.kids[0];
        if (weak != star) return fail(why, "or: * on the wrong side");
        if (!real_kid(real, n.rule == ARule::Or0 ? fa : fb)) return false;
        if (!gone.count(real)) return fail(why, "or: active still a root");
      }
      if (!types_extend(prems, c, gone, {o}, why)) return false;
      return roots_rearranged(prems, c, gone, {o}, why);
    }
    case ARule::And: {
      if (!arity(2)) return false;
      const TypedForest& p = *prems[0];
      const TypedForest& q = *prems[1];
      std::set<NodeId> added;
      if (!nodes_extend(prems, c, {}, added, why)) return false;
      if (added.size() != 2) return fail(why, "and: expected a fresh expansion over a tensor");
      NodeId e = 0;
      NodeId tau = 0;
      for (NodeId id : added) {
        if (c.node(id).kind == NodeKind::Expansion) e = id;
        else if (c.node(id).kind == NodeKind::Tensor) tau = id;
        else return fail(why, "and: unexpected new node kind");
      }
      const NetNode& en = c.node(e);
      if (en.kids.size() != 1 || en.kids[0] != tau)
        return fail(why, "and: principal must be {t >< s}");
      NodeId t = c.node(tau).kids[0];
      NodeId s = c.node(tau).kids[1];
      if (!contains(p.roots, t) || !contains(q.roots, s))
        return fail(why, "and: actives must come one from each premise");
      auto tp = c.types.find(e);
      if (tp == c.types.end() || tp->second.a->kind != FKind::And)
        return fail(why, "and: principal type is not a conjunction");
      if (!formula_equal(tp->second.a->left, p.types.at(t).a) ||
          !formula_equal(tp->second.a->right, q.types.at(s).a))
        return fail(why, "and: conjunct types do not match the actives");
      if (!types_extend(prems, c, {t, s}, {e}, why)) return false;
      return roots_rearranged(prems, c, {t, s}, {e}, why);
    }
    case ARule::CAnd:
    case ARule::CPos:
    case ARule::CNeg: {
      if (!arity(1)) return false;
      const TypedForest& p = *prems[0];
      std::vector<NodeId> gone;
      for (NodeId r : p.roots)
        if (!contains(c.roots, r)) gone.push_back(r);
      if (gone.size() != 2) return fail(why, "contraction: expected two merged roots");
      std::set<NodeId> dropped(gone.begin(), gone.end());
      std::set<NodeId> added;
      if (!nodes_extend(prems, c, dropped, added, why)) return false;
      if (added.size() != 1) return fail(why, "contraction: expected one merged expansion");
      NodeId e = *added.begin();
      const NetNode& en = c.node(e);
      if (en.kind != NodeKind::Expansion) return fail(why, "contraction: principal not an expansion");
      std::vector<NodeId> want;
      for (NodeId g : gone) {
        const NetNode& gn = p.node(g);
        if (gn.kind != NodeKind::Expansion)
          return fail(why, "contraction: merged roots must be expansions");
        want.insert(want.end(), gn.kids.begin(), gn.kids.end());
      }
      std::vector<NodeId> got = en.kids;
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) return fail(why, "contraction: summands not preserved");
      const NetType& ta = p.types.at(gone[0]);
      const NetType& tb = p.types.at(gone[1]);
      auto tp = c.types.find(e);
      if (tp == c.types.end() || !type_equal(ta, tb) || !type_equal(ta, tp->second))
        return fail(why, "contraction: type mismatch between copies");
      const Formula& f = ta.a;
      bool ok = false;
      if (n.rule == ARule::CAnd) ok = ta.kind == TypeKind::ClassicalT && f->kind == FKind::And;
      if (n.rule == ARule::CPos)
        ok = ta.kind == TypeKind::ClassicalT && f->kind == FKind::AtomF && !f->atom.neg;
      if (n.rule == ARule::CNeg)
        ok = ta.kind == TypeKind::ClassicalT && f->kind == FKind::AtomF && f->atom.neg;
      if (!ok) return fail(why, "contraction: type does not fit the rule variant");
      if (!types_extend(prems, c, dropped, {e}, why)) return false;
      return roots_rearranged(prems, c, dropped, {e}, why);
    }
    case ARule::Mix: {
      if (!arity(2)) return false;
      std::set<NodeId> added;
      if (!nodes_extend(prems, c, {}, added, why)) return false;
      if (!added.empty()) return fail(why, "mix: no new nodes allowed");
      if (!types_extend(prems, c, {}, {}, why)) return false;
      return roots_rearranged(prems, c, {}, {}, why);
    }
    case ARule::Cut: {
      if (!allow_cut) return fail(why, "cut not allowed in this system");
      if (!arity(2)) return false;
      const TypedForest& p = *prems[0];
      const TypedForest& q = *prems[1];
      std::set<NodeId> added;
      if (!nodes_extend(prems, c, {}, added, why)) return false;
      if (added.size() != 1) return fail(why, "cut: expected one new cut root");
      NodeId k = *added.begin();
      const NetNode& kn = c.node(k);
      if (kn.kind != NodeKind::CutNode) return fail(why, "cut: new node is not a cut");
      NodeId t = kn.kids[0];
      NodeId s = kn.kids[1];
      bool straight = contains(p.roots, t) && contains(q.roots, s);
      bool crossed = contains(p.roots, s) && contains(q.roots, t);
      if (!straight && !crossed) return fail(why, "cut: sides must come one from each premise");
      // Cut children keep their type entries; type_check validates duality.
      if (!types_extend(prems, c, {}, {}, why)) return false;
      return roots_rearranged(prems, c, {t, s}, {k}, why);
    }
  }
  return fail(why, "unknown rule");
}

bool check_node(const AnnDerivNode& n, bool allow_cut, std::string* why) {
  for (const auto& p : n.premises)
    if (!check_node(*p, allow_cut, why)) return false;
  std::string terr;
  if (!type_check(n.conclusion, &terr))
    return fail(why, std::string(arule_name(n.rule)) + ": conclusion ill-typed: " + terr);
  return check_step(n, allow_cut, why);
}

AnnDeriv mk_node(ARule r, std::vector<AnnDeriv> prems, TypedForest c) {
  auto n = std::make_shared<AnnDerivNode>();
  n->rule = r;
  n->premises = std::move(prems);
  n->conclusion = std::move(c);
  return n;
}

// Shared id and wire-name supply for one annotation pass.
struct AnnCtx {
  NodeId next_id = 0;
  int next_wire = 0;

  std::string fresh_wire() { return "w" + std::to_string(next_wire++); }

  NodeId put(TypedForest& f, NodeKind kind, std::vector<NodeId> kids = {}, Atom wire = {}) {
    NodeId id = next_id++;
    NetNode n;
    n.id = id;
    n.kind = kind;
    n.kids = std::move(kids);
    n.wire = std::move(wire);
    f.nodes.emplace(id, std::move(n));
    f.next_id = next_id;
    return id;
  }
};

struct Ann {
  AnnDeriv d;
  std::vector<NodeId> pos;  // root id at each classical conclusion position
};

void merge_into(TypedForest& f, const TypedForest& other) {
  for (const auto& [id, n] : other.nodes) f.nodes.emplace(id, n);
  for (const auto& [id, t] : other.types) f.types.emplace(id, t);
  f.next_id = std::max(f.next_id, other.next_id);
}

std::vector<NodeId> minus_positions(const std::vector<NodeId>& v, int a, int b = -1) {
  std::vector<NodeId> out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (i != a && i != b) out.push_back(v[i]);
  return out;
}

Ann annotate_rec(const Deriv& d, AnnCtx& ctx) {
  std::vector<Ann> subs;
  for (const auto& p : d->premises) subs.push_back(annotate_rec(p, ctx));

  TypedForest f;
  std::vector<NodeId> canon;
  std::vector<NodeId> cuts;
  ARule rule = ARule::Ax;

  switch (d->rule) {
    case Rule::Ax: {
      rule = ARule::Ax;
      std::string nm = ctx.fresh_wire();
      const Atom& a = d->ax_atom;
      NodeId w0 = ctx.put(f, NodeKind::Wire, {}, Atom(nm, a.neg));
      NodeId e0 = ctx.put(f, NodeKind::Expansion, {w0});
      NodeId w1 = ctx.put(f, NodeKind::Wire, {}, Atom(nm, !a.neg));
      NodeId e1 = ctx.put(f, NodeKind::Expansion, {w1});
      f.types[e0] = classical_type(mk_atom(a));
      f.types[e1] = classical_type(mk_atom(a.dual()));
      canon = {e0, e1};
      break;
    }
    case Rule::AxTop: {
      rule = ARule::AxTop;
      NodeId one = ctx.put(f, NodeKind::One);
      f.types[one] = classical_type(mk_top());
      canon = {one};
      break;
    }
    case Rule::Or: {
      rule = ARule::Or;
      f = subs[0].d->conclusion;
      cuts = cut_roots(f);
      NodeId t = subs[0].pos[d->pos_a];
      NodeId s = subs[0].pos[d->pos_b];
      Formula ft = f.types.at(t).a;
      Formula fs = f.types.at(s).a;
      NodeId o = ctx.put(f, NodeKind::OrNode, {t, s});
      f.types.erase(t);
      f.types.erase(s);
      f.types[o] = classical_type(mk_or(ft, fs));
      canon = minus_positions(subs[0].pos, d->pos_a, d->pos_b);
      canon.push_back(o);
      break;
    }
    case Rule::Or0:
    case Rule::Or1: {
      bool left = d->rule == Rule::Or0;
      rule = left ? ARule::Or0 : ARule::Or1;
      f = subs[0].d->conclusion;
      cuts = cut_roots(f);
      int pos = left ? d->pos_a : d->pos_b;
      NodeId t = subs[0].pos[pos];
      Formula have = f.types.at(t).a;
      NodeId star = ctx.put(f, NodeKind::Star);
      NodeId o = ctx.put(f, NodeKind::OrNode, left ? std::vector<NodeId>{t, star}
                                                   : std::vector<NodeId>{star, t});
      f.types.erase(t);
      f.types[o] = classical_type(left ? mk_or(have, d->side_formula)
                                       : mk_or(d->side_formula, have));
      canon = minus_positions(subs[0].pos, pos);
      canon.push_back(o);
      break;
    }
    case Rule::And: {
      rule = ARule::And;
      f = subs[0].d->conclusion;
      merge_into(f, subs[1].d->conclusion);
      cuts = cut_roots(subs[0].d->conclusion);
      for (NodeId c : cut_roots(subs[1].d->conclusion)) cuts.push_back(c);
      NodeId t = subs[0].pos[d->pos_a];
      NodeId s = subs[1].pos[d->pos_b];
      Formula ft = f.types.at(t).a;
      Formula fs = f.types.at(s).a;
      NodeId tau = ctx.put(f, NodeKind::Tensor, {t, s});
      NodeId e = ctx.put(f, NodeKind::Expansion, {tau});
      f.types.erase(t);
      f.types.erase(s);
      f.types[e] = classical_type(mk_and(ft, fs));
      canon = minus_positions(subs[0].pos, d->pos_a);
      for (NodeId r : minus_positions(subs[1].pos, d->pos_b)) canon.push_back(r);
      canon.push_back(e);
      break;
    }
    case Rule::Mix: {
      rule = ARule::Mix;
      f = subs[0].d->conclusion;
      merge_into(f, subs[1].d->conclusion);
      cuts = cut_roots(subs[0].d->conclusion);
      for (NodeId c : cut_roots(subs[1].d->conclusion)) cuts.push_back(c);
      canon = subs[0].pos;
      for (NodeId r : subs[1].pos) canon.push_back(r);
      break;
    }
    case Rule::C: {
      f = subs[0].d->conclusion;
      cuts = cut_roots(f);
      NodeId t1 = subs[0].pos[d->pos_a];
      NodeId t2 = subs[0].pos[d->pos_b];
      NetType ty = f.types.at(t1);
      switch (ty.a->kind) {
        case FKind::And: rule = ARule::CAnd; break;
        case FKind::AtomF: rule = ty.a->atom.neg ? ARule::CNeg : ARule::CPos; break;
        default:
          throw ContractViolation("annotate: contraction on a formula outside the system");
      }
      std::vector<NodeId> kids = f.node(t1).kids;
      for (NodeId k : f.node(t2).kids) kids.push_back(k);
      NodeId e = ctx.put(f, NodeKind::Expansion, std::move(kids));
      f.nodes.erase(t1);
      f.nodes.erase(t2);
      f.types.erase(t1);
      f.types.erase(t2);
      f.types[e] = ty;
      canon = minus_positions(subs[0].pos, d->pos_a, d->pos_b);
      canon.push_back(e);
      break;
    }
    case Rule::Cut: {
      rule = ARule::Cut;
      f = subs[0].d->conclusion;
      merge_into(f, subs[1].d->conclusion);
      cuts = cut_roots(subs[0].d->conclusion);
      for (NodeId c : cut_roots(subs[1].d->conclusion)) cuts.push_back(c);
      NodeId t = subs[0].pos[d->pos_a];
      NodeId s = subs[1].pos[d->pos_b];
      NodeId k = ctx.put(f, NodeKind::CutNode, {t, s});
      canon = minus_positions(subs[0].pos, d->pos_a);
      for (NodeId r : minus_positions(subs[1].pos, d->pos_b)) canon.push_back(r);
      cuts.push_back(k);
      break;
    }
    case Rule::W:
      throw ContractViolation("annotate: weakening has no annotated form");
    default:
      throw ContractViolation("annotate: unsupported rule");
  }

  std::vector<NodeId> pos = canon;
  if (!d->out_perm.empty())
    for (std::size_t k = 0; k < pos.size(); ++k) pos[k] = canon[d->out_perm[k]];

  f.roots = pos;
  f.roots.insert(f.roots.end(), cuts.begin(), cuts.end());

  std::vector<AnnDeriv> prems;
  for (auto& s : subs) prems.push_back(s.d);
  return Ann{mk_node(rule, std::move(prems), std::move(f)), std::move(pos)};
}

}  // namespace

bool check_annotated(const AnnDeriv& d, bool allow_cut, std::string* why) {
  require(d != nullptr, "check_annotated: null derivation");
  return check_node(*d, allow_cut, why);
}

std::size_t annotated_size(const AnnDeriv& d) {
  std::size_t n = 1;
  for (const auto& p : d->premises) n += annotated_size(p);
  return n;
}

AnnDeriv annotate(const Deriv& d, System system) {
  std::string err;
  require(check_derivation(d, system, &err), "annotate: input derivation invalid: " + err);
  AnnCtx ctx;
  return annotate_rec(d, ctx).d;
}

TypedForest desequentialize(const Deriv& d, System system) {
  return annotate(d, system)->conclusion;
}

namespace {

struct Stripped {
  Deriv d;
  bool cut = false;
};

// Invariant: the stripped conclusion corresponds positionally to
// seq_roots of the annotated conclusion.
Stripped strip_rec(const AnnDeriv& a) {
  const TypedForest& c = a->conclusion;
  std::vector<NodeId> want = seq_roots(c);

  auto added_root = [&](NodeKind kind) {
    for (NodeId r : c.roots) {
      if (c.node(r).kind != kind) continue;
      bool fresh = true;
      for (const auto& p : a->premises)
        if (p->conclusion.has(r)) fresh = false;
      if (fresh) return r;
    }
    throw ContractViolation("strip_annotations: malformed step");
  };

  auto reorder = [&](Deriv d, const std::vector<NodeId>& canon) {
    std::vector<int> order;
    for (NodeId id : want) order.push_back(index_of(canon, id));
    return permute_conclusion(std::move(d), order);
  };

  switch (a->rule) {
    case ARule::Ax: {
      const NetType& t0 = c.types.at(want.at(0));
      require(t0.a->kind == FKind::AtomF, "strip_annotations: Ax without an atom");
      return {mk_ax(t0.a->atom), false};
    }
    case ARule::AxTop:
      return {mk_axtop(), false};
    case ARule::Or: {
      Stripped sub = strip_rec(a->premises[0]);
      std::vector<NodeId> prem = seq_roots(a->premises[0]->conclusion);
      NodeId o = added_root(NodeKind::OrNode);
      const NetNode& on = c.node(o);
      int i = index_of(prem, on.kids[0]);
      int j = index_of(prem, on.kids[1]);
      std::vector<NodeId> canon = minus_positions(prem, i, j);
      canon.push_back(o);
      return {reorder(mk_or(sub.d, i, j), canon), sub.cut};
    }
    case ARule::Or0:
    case ARule::Or1: {
      Stripped sub = strip_rec(a->premises[0]);
      std::vector<NodeId> prem = seq_roots(a->premises[0]->conclusion);
      NodeId o = added_root(NodeKind::OrNode);
      const NetNode& on = c.node(o);
      const Formula& ty = c.types.at(o).a;
      bool left = a->rule == ARule::Or0;
      int i = index_of(prem, left ? on.kids[0] : on.kids[1]);
      std::vector<NodeId> canon = minus_positions(prem, i);
      canon.push_back(o);
      Deriv d = left ? mk_or0(sub.d, i, ty->right) : mk_or1(sub.d, i, ty->left);
      return {reorder(std::move(d), canon), sub.cut};
    }
    case ARule::And: {
      Stripped l = strip_rec(a->premises[0]);
      Stripped r = strip_rec(a->premises[1]);
      std::vector<NodeId> pl = seq_roots(a->premises[0]->conclusion);
      std::vector<NodeId> pr = seq_roots(a->premises[1]->conclusion);
      NodeId e = added_root(NodeKind::Expansion);
      const NetNode& tau = c.node(c.node(e).kids.at(0));
      int i = index_of(pl, tau.kids[0]);
      int j = index_of(pr, tau.kids[1]);
      std::vector<NodeId> canon = minus_positions(pl, i);
      for (NodeId x : minus_positions(pr, j)) canon.push_back(x);
      canon.push_back(e);
      return {reorder(mk_and(l.d, i, r.d, j), canon), l.cut || r.cut};
    }
    case ARule::CAnd:
    case ARule::CPos:
    case ARule::CNeg: {
      Stripped sub = strip_rec(a->premises[0]);
      std::vector<NodeId> prem = seq_roots(a->premises[0]->conclusion);
      NodeId e = added_root(NodeKind::Expansion);
      std::vector<int> gone;
      for (int k = 0; k < static_cast<int>(prem.size()); ++k)
        if (!c.has(prem[k])) gone.push_back(k);
      require(gone.size() == 2, "strip_annotations: malformed contraction");
      std::vector<NodeId> canon = minus_positions(prem, gone[0], gone[1]);
      canon.push_back(e);
      return {reorder(mk_c(sub.d, gone[0], gone[1]), canon), sub.cut};
    }
    case ARule::Mix: {
      Stripped l = strip_rec(a->premises[0]);
      Stripped r = strip_rec(a->premises[1]);
      std::vector<NodeId> canon = seq_roots(a->premises[0]->conclusion);
      for (NodeId x : seq_roots(a->premises[1]->conclusion)) canon.push_back(x);
      return {reorder(mk_mix(l.d, r.d), canon), l.cut || r.cut};
    }
    case ARule::Cut: {
      Stripped l = strip_rec(a->premises[0]);
      Stripped r = strip_rec(a->premises[1]);
      const TypedForest& cl = a->premises[0]->conclusion;
      std::vector<NodeId> pl = seq_roots(cl);
      std::vector<NodeId> pr = seq_roots(a->premises[1]->conclusion);
      NodeId k = added_root(NodeKind::CutNode);
      NodeId t = c.node(k).kids[0];
      NodeId s = c.node(k).kids[1];
      if (!contains(pl, t)) std::swap(t, s);
      int i = index_of(pl, t);
      int j = index_of(pr, s);
      std::vector<NodeId> canon = minus_positions(pl, i);
      for (NodeId x : minus_positions(pr, j)) canon.push_back(x);
      return {reorder(mk_cut(l.d, i, r.d, j), canon), true};
    }
  }
  throw ContractViolation("strip_annotations: unknown rule");
}

}  // namespace

std::pair<Deriv, System> strip_annotations(const AnnDeriv& d) {
  require(d != nullptr, "strip_annotations: null derivation");
  Stripped s = strip_rec(d);
  return {s.d, s.cut ? System::LKstarCut : System::LKstar};
}

}  // namespace exnet
