#include "generators.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "exnet/annotate.hpp"
#include "exnet/formula.hpp"
#include "exnet/netgraph.hpp"

namespace exnet::testgen {

namespace {

Atom random_atom(Rng& rng, int atoms) {
  return Atom(std::string(1, static_cast<char>('a' + rng.below(atoms))), rng.chance(0.5));
}

int width(const Deriv& d) { return static_cast<int>(d->conclusion.roots.size()); }

}  // namespace

Formula random_formula(Rng& rng, int max_rank, int atom_count, bool units) {
  if (max_rank <= 1 || rng.chance(0.3)) {
    if (units && rng.chance(0.15)) return rng.chance(0.5) ? mk_top() : mk_bot();
    return mk_atom(random_atom(rng, atom_count));
  }
  Formula l = random_formula(rng, max_rank - 1, atom_count, units);
  Formula r = random_formula(rng, max_rank - 1, atom_count, units);
  return rng.chance(0.5) ? mk_and(l, r) : mk_or(l, r);
}

Formula random_cut_formula(Rng& rng, int max_rank) {
  return random_formula(rng, max_rank, 3, false);
}

Deriv random_lkstar(Rng& rng, int budget) {
  if (budget <= 1) {
    if (rng.chance(0.1)) return mk_axtop();
    return mk_ax(random_atom(rng, 3));
  }
  switch (rng.below(6)) {
    case 0: {
      Deriv d = random_lkstar(rng, budget - 1);
      Formula side = random_formula(rng, 2, 3, true);
      int pos = rng.below(width(d));
      return rng.chance(0.5) ? mk_or0(d, pos, side) : mk_or1(d, pos, side);
    }
    case 1: {
      Deriv d = random_lkstar(rng, budget - 1);
      if (width(d) < 2) return mk_or0(d, 0, random_formula(rng, 2, 3, true));
      int i = rng.below(width(d));
      int j = rng.below(width(d) - 1);
      if (j >= i) ++j;
      return mk_or(d, i, j);
    }
    case 2: {
      Deriv l = random_lkstar(rng, budget / 2);
      Deriv r = random_lkstar(rng, budget / 2);
      return mk_and(l, rng.below(width(l)), r, rng.below(width(r)));
    }
    case 3:
      return mk_mix(random_lkstar(rng, budget / 2), random_lkstar(rng, budget / 2));
    case 4: {
      Deriv d = random_lkstar(rng, budget - 1);
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < width(d); ++i)
        for (int j = i + 1; j < width(d); ++j) {
          const Formula& a = d->conclusion.roots[i];
          if (a->kind != FKind::AtomF && a->kind != FKind::And) continue;
          if (formula_equal(a, d->conclusion.roots[j])) pairs.emplace_back(i, j);
        }
      if (pairs.empty()) return mk_or1(d, 0, random_formula(rng, 2, 3, true));
      auto [i, j] = pairs[rng.below(static_cast<int>(pairs.size()))];
      return mk_c(d, i, j);
    }
    default: {
      // Duplicate a contractible root on purpose, then contract it.
      Formula a = rng.chance(0.5) ? mk_atom(random_atom(rng, 3))
                                  : mk_and(mk_atom(random_atom(rng, 3)),
                                           mk_atom(random_atom(rng, 3)));
      auto [l, pl] = derive_with(rng, a, budget / 2);
      auto [r, pr] = derive_with(rng, a, budget / 2);
      Deriv m = mk_mix(l, r);
      return mk_c(m, pl, width(l) + pr);
    }
  }
}

Deriv random_lk(Rng& rng, int budget) {
  if (budget <= 1) {
    if (rng.chance(0.1)) return mk_axtop();
    return mk_ax(random_atom(rng, 3));
  }
  switch (rng.below(5)) {
    case 0: {
      Deriv d = random_lk(rng, budget - 1);
      return mk_w(d, random_formula(rng, 2, 3, true));
    }
    case 1: {
      Deriv d = random_lk(rng, budget - 1);
      int n = width(d);
      Deriv w = mk_w(d, d->conclusion.roots[0]);
      return mk_c(w, 0, n);
    }
    case 2: {
      Deriv d = random_lk(rng, budget - 1);
      if (width(d) < 2) d = mk_w(d, random_formula(rng, 2, 3, true));
      int i = rng.below(width(d));
      int j = rng.below(width(d) - 1);
      if (j >= i) ++j;
      return mk_or(d, i, j);
    }
    case 3: {
      Deriv l = random_lk(rng, budget / 2);
      Deriv r = random_lk(rng, budget / 2);
      return mk_and(l, rng.below(width(l)), r, rng.below(width(r)));
    }
    default: {
      // Weaken one disjunct in, then disjoin: the LK spelling of Or0.
      Deriv d = random_lk(rng, budget - 1);
      int n = width(d);
      Deriv w = mk_w(d, random_formula(rng, 2, 3, true));
      return mk_or(w, rng.below(n), n);
    }
  }
}

std::pair<Deriv, int> derive_with(Rng& rng, const Formula& a, int budget) {
  std::pair<Deriv, int> out;
  switch (a->kind) {
    case FKind::Top:
      out = {mk_axtop(), 0};
      break;
    case FKind::AtomF:
      out = {mk_ax(a->atom), 0};
      break;
    case FKind::Or: {
      int mode = budget <= 1 ? rng.below(2) : rng.below(3);
      if (mode == 0) {
        auto [d, p] = derive_with(rng, a->left, budget - 1);
        Deriv r = mk_or0(d, p, a->right);
        out = {r, width(r) - 1};
      } else if (mode == 1) {
        auto [d, p] = derive_with(rng, a->right, budget - 1);
        Deriv r = mk_or1(d, p, a->left);
        out = {r, width(r) - 1};
      } else {
        auto [l, pl] = derive_with(rng, a->left, budget / 2);
        auto [r, pr] = derive_with(rng, a->right, budget / 2);
        Deriv m = mk_mix(l, r);
        Deriv o = mk_or(m, pl, width(l) + pr);
        out = {o, width(o) - 1};
      }
      break;
    }
    case FKind::And: {
      auto [l, pl] = derive_with(rng, a->left, budget / 2);
      auto [r, pr] = derive_with(rng, a->right, budget / 2);
      Deriv c = mk_and(l, pl, r, pr);
      out = {c, width(c) - 1};
      break;
    }
    default:
      throw ContractViolation("derive_with: cannot target a unit besides T");
  }
  if ((a->kind == FKind::AtomF || a->kind == FKind::And) && budget > 1 &&
      rng.chance(0.35)) {
    auto [d2, p2] = derive_with(rng, a, budget / 2);
    int n1 = width(out.first);
    Deriv m = mk_mix(out.first, d2);
    Deriv c = mk_c(m, out.second, n1 + p2);
    out = {c, width(c) - 1};
  }
  return out;
}

TypedForest random_cut_net(Rng& rng, const Formula& a, int budget) {
  auto [l, pl] = derive_with(rng, a, budget);
  auto [r, pr] = derive_with(rng, dual(a), budget);
  Deriv c = mk_cut(l, pl, r, pr);
  return desequentialize(c, System::LKstarCut);
}

namespace {

// Types of every node reachable from the typed roots, including interior
// positions, keyed by id. Stars are skipped.
void infer_below(const TypedForest& f, NodeId v, const NetType& t,
                 std::map<NodeId, NetType>& out) {
  out.emplace(v, t);
  const NetNode& n = f.node(v);
  switch (n.kind) {
    case NodeKind::Expansion:
      for (NodeId k : n.kids) {
        if (f.node(k).kind == NodeKind::Wire)
          infer_below(f, k, witness_type(t.a), out);
        else
          infer_below(f, k, tensor_type(t.a->left, t.a->right), out);
      }
      break;
    case NodeKind::OrNode:
      if (f.node(n.kids[0]).kind != NodeKind::Star)
        infer_below(f, n.kids[0], classical_type(t.a->left), out);
      if (f.node(n.kids[1]).kind != NodeKind::Star)
        infer_below(f, n.kids[1], classical_type(t.a->right), out);
      break;
    case NodeKind::Tensor:
      infer_below(f, n.kids[0], classical_type(t.a), out);
      infer_below(f, n.kids[1], classical_type(t.b), out);
      break;
    default:
      break;
  }
}

std::map<NodeId, NetType> all_types(const TypedForest& f) {
  std::map<NodeId, NetType> out;
  for (NodeId r : f.roots) {
    if (f.node(r).kind == NodeKind::CutNode) {
      for (NodeId k : f.node(r).kids) infer_below(f, k, f.types.at(k), out);
    } else {
      infer_below(f, r, f.types.at(r), out);
    }
  }
  return out;
}

}  // namespace

bool mutate_forest(Rng& rng, TypedForest& f) {
  std::map<NodeId, NetType> ty = all_types(f);
  using Key = std::pair<std::string, bool>;
  std::map<Key, std::vector<NodeId>> wires;
  std::map<Key, std::vector<NodeId>> exps;
  for (const auto& [id, n] : f.nodes) {
    auto it = ty.find(id);
    if (it == ty.end()) continue;
    if (n.kind == NodeKind::Wire) {
      const Atom& a = it->second.a->atom;
      wires[{a.sym, a.neg}].push_back(id);
    } else if (n.kind == NodeKind::Expansion && it->second.kind == TypeKind::ClassicalT &&
               it->second.a->kind == FKind::AtomF) {
      const Atom& a = it->second.a->atom;
      exps[{a.sym, a.neg}].push_back(id);
    }
  }

  struct Edit {
    bool move;  // else: re-pair
    NodeId a;
    NodeId b;
  };
  std::vector<Edit> edits;
  for (const auto& [key, ids] : wires) {
    (void)key;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        edits.push_back({false, ids[i], ids[j]});
  }
  for (const auto& [key, ids] : exps) {
    (void)key;
    for (NodeId from : ids)
      for (NodeId to : ids)
        if (from != to && f.node(from).kids.size() >= 2)
          edits.push_back({true, from, to});
  }
  if (edits.empty()) return false;

  Edit e = edits[rng.below(static_cast<int>(edits.size()))];
  if (e.move) {
    NetNode& donor = f.node(e.a);
    int slot = rng.below(static_cast<int>(donor.kids.size()));
    NodeId moved = donor.kids[slot];
    donor.kids.erase(donor.kids.begin() + slot);
    f.node(e.b).kids.push_back(moved);
  } else {
    std::swap(f.node(e.a).wire.sym, f.node(e.b).wire.sym);
  }
  return true;
}

bool small_enough(const TypedForest& f) {
  NetGraph g = graph_of(f);
  if (g.switched.size() > 16) return false;
  return switching_count(g, 1u << 16) <= (1u << 16);
}

}  // namespace exnet::testgen
