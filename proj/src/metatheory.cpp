#include "exnet/metatheory.hpp"

#include <algorithm>
#include <optional>

namespace exnet {

namespace {

// Canonical position of a stored conclusion index.
int canon_of(const Deriv& d, int pos) {
  require(pos >= 0 && pos < static_cast<int>(d->conclusion.size()),
          "position out of range");
  return d->out_perm.empty() ? pos : d->out_perm[pos];
}

// The index in [0..m) that becomes index c once the sorted positions in
// removed are deleted.
int restore_index(int c, std::vector<int> removed) {
  std::sort(removed.begin(), removed.end());
  int res = c;
  for (int r : removed)
    if (r <= res) ++res;
  return res;
}

int shift_index(int x, const std::vector<int>& removed) {
  int res = x;
  for (int r : removed)
    if (r < x) --res;
  return res;
}

// Active premise positions of a node, per premise.
std::vector<std::vector<int>> actives_of(const DerivNode& n) {
  switch (n.rule) {
    case Rule::Or: return {{n.pos_a, n.pos_b}};
    case Rule::Or0: return {{n.pos_a}};
    case Rule::Or1: return {{n.pos_b}};
    case Rule::C: return {{n.pos_a, n.pos_b}};
    case Rule::And: return {{n.pos_a}, {n.pos_b}};
    case Rule::Cut: return {{n.pos_a}, {n.pos_b}};
    case Rule::Mix: return {{}, {}};
    case Rule::W: return {{}};
    default: return {};
  }
}

bool has_principal(Rule r) {
  return r == Rule::Or || r == Rule::Or0 || r == Rule::Or1 || r == Rule::And ||
         r == Rule::C || r == Rule::W;
}

// Source of a canonical conclusion position: premise index and stored
// premise position, or nullopt for the principal root.
std::optional<std::pair<int, int>> premise_source(const DerivNode& n, int canon_pos) {
  auto act = actives_of(n);
  int acc = 0;
  for (std::size_t i = 0; i < n.premises.size(); ++i) {
    int sz = static_cast<int>(n.premises[i]->conclusion.size()) -
             static_cast<int>(act[i].size());
    if (canon_pos < acc + sz)
      return std::make_pair(static_cast<int>(i), restore_index(canon_pos - acc, act[i]));
    acc += sz;
  }
  require(has_principal(n.rule), "canonical position beyond all premises");
  return std::nullopt;
}

// Canonical conclusion position of a non-active stored premise root, for a
// node freshly built by a constructor.
int conclusion_pos_of(const DerivNode& n, int prem_idx, int q) {
  auto act = actives_of(n);
  int acc = 0;
  for (int i = 0; i < prem_idx; ++i)
    acc += static_cast<int>(n.premises[i]->conclusion.size()) -
           static_cast<int>(act[i].size());
  return acc + shift_index(q, act[prem_idx]);
}

// Shared recursion result: a rebuilt derivation, a map from the stored
// conclusion positions of the original node to positions in the rebuilt
// conclusion (-1 for the consumed root), and the positions of any roots
// the transformation appended.
struct CoreResult {
  Deriv raw;
  std::vector<int> where;
  int a_pos = -1;
  int b_pos = -1;
};

CoreResult invert_core(const Deriv& d, int pos) {
  const DerivNode& n = *d;
  int size = static_cast<int>(n.conclusion.size());
  Formula target = n.conclusion.roots[pos];
  require(target->kind == FKind::Or, "invert_or: root is not a disjunction");
  int canon_pos = canon_of(d, pos);

  auto is_principal = [&](int cc) {
    return has_principal(n.rule) && cc == size - 1;
  };

  if (is_principal(canon_pos) &&
      (n.rule == Rule::Or || n.rule == Rule::Or0 || n.rule == Rule::Or1)) {
    CoreResult res;
    res.raw = n.premises[0];
    std::vector<int> act = actives_of(n)[0];
    res.where.assign(size, -1);
    for (int c = 0; c < size; ++c) {
      if (c == pos) continue;
      res.where[c] = restore_index(canon_of(d, c), act);
    }
    if (n.rule == Rule::Or) {
      res.a_pos = n.pos_a;
      res.b_pos = n.pos_b;
    } else if (n.rule == Rule::Or0) {
      res.a_pos = n.pos_a;
    } else {
      res.b_pos = n.pos_b;
    }
    return res;
  }

  require(n.rule != Rule::Ax && n.rule != Rule::AxTop,
          "invert_or: axiom has no disjunction root");
  require(n.rule != Rule::W && n.rule != Rule::Cut,
          "invert_or: expected an LKstar derivation");
  auto src = premise_source(n, canon_pos);
  require(src.has_value(),
          "invert_or: disjunction cannot be principal for this rule here");
  auto [pi, q] = *src;

  CoreResult sub = invert_core(n.premises[pi], q);

  Deriv rebuilt;
  switch (n.rule) {
    case Rule::Or:
      rebuilt = mk_or(sub.raw, sub.where[n.pos_a], sub.where[n.pos_b]);
      break;
    case Rule::Or0:
      rebuilt = mk_or0(sub.raw, sub.where[n.pos_a], n.side_formula);
      break;
    case Rule::Or1:
      rebuilt = mk_or1(sub.raw, sub.where[n.pos_b], n.side_formula);
      break;
    case Rule::C:
      rebuilt = mk_c(sub.raw, sub.where[n.pos_a], sub.where[n.pos_b]);
      break;
    case Rule::And:
      rebuilt = pi == 0 ? mk_and(sub.raw, sub.where[n.pos_a], n.premises[1], n.pos_b)
                        : mk_and(n.premises[0], n.pos_a, sub.raw, sub.where[n.pos_b]);
      break;
    case Rule::Mix:
      rebuilt = pi == 0 ? mk_mix(sub.raw, n.premises[1]) : mk_mix(n.premises[0], sub.raw);
      break;
    default:
      throw ContractViolation("invert_or: unexpected rule");
  }

  CoreResult res;
  res.raw = rebuilt;
  res.where.assign(size, -1);
  for (int c = 0; c < size; ++c) {
    if (c == pos) continue;
    int cc = canon_of(d, c);
    if (is_principal(cc)) {
      res.where[c] = static_cast<int>(rebuilt->conclusion.size()) - 1;
      continue;
    }
    auto s = premise_source(n, cc);
    require(s.has_value(), "invert_or: unmapped context root");
    auto [pj, qq] = *s;
    int raw_q = pj == pi ? sub.where[qq] : qq;
    res.where[c] = conclusion_pos_of(*rebuilt, pj, raw_q);
  }
  if (sub.a_pos >= 0) res.a_pos = conclusion_pos_of(*rebuilt, pi, sub.a_pos);
  if (sub.b_pos >= 0) res.b_pos = conclusion_pos_of(*rebuilt, pi, sub.b_pos);
  return res;
}

CoreResult eliminate_top_core(const Deriv& d, int pos) {
  const DerivNode& n = *d;
  int size = static_cast<int>(n.conclusion.size());
  require(n.conclusion.roots[pos]->kind == FKind::Top,
          "eliminate_top: root is not T");
  require(n.rule != Rule::AxTop,
          "eliminate_top: the sequent consists of T alone");
  require(n.rule != Rule::W && n.rule != Rule::Cut,
          "eliminate_top: expected an LKstar derivation");
  int canon_pos = canon_of(d, pos);
  auto src = premise_source(n, canon_pos);
  require(src.has_value(), "eliminate_top: T cannot be a principal root here");
  auto [pi, q] = *src;
  const Deriv& prem = n.premises[pi];

  CoreResult res;
  res.where.assign(size, -1);

  if (prem->rule == Rule::AxTop) {
    require(n.rule == Rule::Mix,
            "eliminate_top: lone T premise under a non-Mix rule");
    int other = 1 - pi;
    res.raw = n.premises[other];
    for (int c = 0; c < size; ++c) {
      if (c == pos) continue;
      auto s = premise_source(n, canon_of(d, c));
      require(s && s->first == other, "eliminate_top: unexpected root source");
      res.where[c] = s->second;
    }
    return res;
  }

  CoreResult sub = eliminate_top_core(prem, q);
  Deriv rebuilt;
  switch (n.rule) {
    case Rule::Or:
      rebuilt = mk_or(sub.raw, sub.where[n.pos_a], sub.where[n.pos_b]);
      break;
    case Rule::Or0:
      rebuilt = mk_or0(sub.raw, sub.where[n.pos_a], n.side_formula);
      break;
    case Rule::Or1:
      rebuilt = mk_or1(sub.raw, sub.where[n.pos_b], n.side_formula);
      break;
    case Rule::C:
      rebuilt = mk_c(sub.raw, sub.where[n.pos_a], sub.where[n.pos_b]);
      break;
    case Rule::And:
      rebuilt = pi == 0 ? mk_and(sub.raw, sub.where[n.pos_a], n.premises[1], n.pos_b)
                        : mk_and(n.premises[0], n.pos_a, sub.raw, sub.where[n.pos_b]);
      break;
    case Rule::Mix:
      rebuilt = pi == 0 ? mk_mix(sub.raw, n.premises[1]) : mk_mix(n.premises[0], sub.raw);
      break;
    default:
      throw ContractViolation("eliminate_top: unexpected rule");
  }
  res.raw = rebuilt;
  bool principal_ok = has_principal(n.rule);
  for (int c = 0; c < size; ++c) {
    if (c == pos) continue;
    int cc = canon_of(d, c);
    if (principal_ok && cc == size - 1) {
      res.where[c] = static_cast<int>(rebuilt->conclusion.size()) - 1;
      continue;
    }
    auto s = premise_source(n, cc);
    require(s.has_value(), "eliminate_top: unmapped context root");
    auto [pj, qq] = *s;
    int raw_q = pj == pi ? sub.where[qq] : qq;
    res.where[c] = conclusion_pos_of(*rebuilt, pj, raw_q);
  }
  return res;
}

}  // namespace

OrInversion invert_or(const Deriv& d, int pos) {
  require(static_cast<bool>(d), "invert_or: null derivation");
  CoreResult core = invert_core(d, pos);
  std::vector<int> order;
  for (int c = 0; c < static_cast<int>(d->conclusion.size()); ++c)
    if (c != pos) order.push_back(core.where[c]);
  OrInversion out;
  out.has_left = core.a_pos >= 0;
  out.has_right = core.b_pos >= 0;
  if (out.has_left) order.push_back(core.a_pos);
  if (out.has_right) order.push_back(core.b_pos);
  out.d = permute_conclusion(core.raw, order);
  return out;
}

Deriv eliminate_top(const Deriv& d, int pos) {
  require(static_cast<bool>(d), "eliminate_top: null derivation");
  require(d->conclusion.size() > 1, "eliminate_top: context must be nonempty");
  CoreResult core = eliminate_top_core(d, pos);
  std::vector<int> order;
  for (int c = 0; c < static_cast<int>(d->conclusion.size()); ++c)
    if (c != pos) order.push_back(core.where[c]);
  return permute_conclusion(core.raw, order);
}

Deriv contract_admissible(const Deriv& d, int pos_a, int pos_b) {
  require(static_cast<bool>(d), "contract_admissible: null derivation");
  require(pos_a != pos_b, "contract_admissible: positions coincide");
  Formula a = d->conclusion.roots[pos_a];
  require(formula_equal(a, d->conclusion.roots[pos_b]),
          "contract_admissible: roots differ");

  switch (a->kind) {
    case FKind::AtomF:
    case FKind::And:
      return mk_c(d, pos_a, pos_b);
    case FKind::Bot:
      throw ContractViolation("contract_admissible: no derivation has an F root");
    case FKind::Top: {
      Deriv e = eliminate_top(d, pos_a);
      int pb = pos_b - (pos_b > pos_a ? 1 : 0);
      std::vector<int> order;
      for (int c = 0; c < static_cast<int>(e->conclusion.size()); ++c)
        if (c != pb) order.push_back(c);
      order.push_back(pb);
      return permute_conclusion(e, order);
    }
    case FKind::Or: {
      int n = static_cast<int>(d->conclusion.size());
      OrInversion inv1 = invert_or(d, pos_a);
      int pb = pos_b - (pos_b > pos_a ? 1 : 0);
      OrInversion inv2 = invert_or(inv1.d, pb);
      int k1 = (inv1.has_left ? 1 : 0) + (inv1.has_right ? 1 : 0);
      int base = n - 2;
      // Appended roots of inv2.d: copy 1 sides first, then copy 2 sides.
      std::vector<int> bs, cs;
      if (inv1.has_left) bs.push_back(base);
      if (inv1.has_right) cs.push_back(base + (inv1.has_left ? 1 : 0));
      if (inv2.has_left) bs.push_back(base + k1);
      if (inv2.has_right) cs.push_back(base + k1 + (inv2.has_left ? 1 : 0));

      Deriv cur = inv2.d;
      if (bs.size() == 2) {
        cur = contract_admissible(cur, bs[0], bs[1]);
        for (int& c : cs) c = c - (bs[0] < c ? 1 : 0) - (bs[1] < c ? 1 : 0);
        bs = {static_cast<int>(cur->conclusion.size()) - 1};
      }
      if (cs.size() == 2) {
        cur = contract_admissible(cur, cs[0], cs[1]);
        for (int& b : bs) b = b - (cs[0] < b ? 1 : 0) - (cs[1] < b ? 1 : 0);
        cs = {static_cast<int>(cur->conclusion.size()) - 1};
      }
      if (!bs.empty() && !cs.empty()) return mk_or(cur, bs[0], cs[0]);
      if (!bs.empty()) return mk_or0(cur, bs[0], a->right);
      return mk_or1(cur, cs[0], a->left);
    }
  }
  throw ContractViolation("contract_admissible: bad formula kind");
}

namespace {

struct Translated {
  Deriv e;
  std::vector<std::optional<int>> map;
};

Translated translate(const Deriv& d) {
  const DerivNode& n = *d;
  int size = static_cast<int>(n.conclusion.size());
  auto with_map = [&](Deriv e, auto&& position_of) {
    Translated t;
    t.e = std::move(e);
    t.map.resize(size);
    for (int c = 0; c < size; ++c) t.map[c] = position_of(canon_of(d, c));
    return t;
  };

  switch (n.rule) {
    case Rule::Ax:
      return with_map(mk_ax(n.ax_atom),
                      [](int cc) { return std::optional<int>(cc); });
    case Rule::AxTop:
      return with_map(mk_axtop(), [](int cc) { return std::optional<int>(cc); });
    case Rule::W: {
      Translated sub = translate(n.premises[0]);
      return with_map(sub.e, [&](int cc) -> std::optional<int> {
        if (cc == size - 1) return std::nullopt;
        return sub.map[cc];
      });
    }
    case Rule::Or: {
      Translated sub = translate(n.premises[0]);
      auto a = sub.map[n.pos_a];
      auto b = sub.map[n.pos_b];
      auto context = [&](int cc) {
        return restore_index(cc, {n.pos_a, n.pos_b});
      };
      if (a && b) {
        Deriv e = mk_or(sub.e, *a, *b);
        return with_map(e, [&](int cc) -> std::optional<int> {
          if (cc == size - 1) return static_cast<int>(e->conclusion.size()) - 1;
          auto x = sub.map[context(cc)];
          if (!x) return std::nullopt;
          return shift_index(*x, {*a, *b});
        });
      }
      if (a) {
        Formula bf = n.premises[0]->conclusion.roots[n.pos_b];
        Deriv e = mk_or0(sub.e, *a, bf);
        return with_map(e, [&](int cc) -> std::optional<int> {
          if (cc == size - 1) return static_cast<int>(e->conclusion.size()) - 1;
          auto x = sub.map[context(cc)];
          if (!x) return std::nullopt;
          return shift_index(*x, {*a});
        });
      }
      if (b) {
        Formula af = n.premises[0]->conclusion.roots[n.pos_a];
        Deriv e = mk_or1(sub.e, *b, af);
        return with_map(e, [&](int cc) -> std::optional<int> {
          if (cc == size - 1) return static_cast<int>(e->conclusion.size()) - 1;
          auto x = sub.map[context(cc)];
          if (!x) return std::nullopt;
          return shift_index(*x, {*b});
        });
      }
      return with_map(sub.e, [&](int cc) -> std::optional<int> {
        if (cc == size - 1) return std::nullopt;
        return sub.map[context(cc)];
      });
    }
    case Rule::And: {
      Translated s0 = translate(n.premises[0]);
      Translated s1 = translate(n.premises[1]);
      auto a = s0.map[n.pos_a];
      auto b = s1.map[n.pos_b];
      int left_ctx = static_cast<int>(n.premises[0]->conclusion.size()) - 1;
      auto source = [&](int cc) -> std::pair<int, int> {
        if (cc < left_ctx) return {0, restore_index(cc, {n.pos_a})};
        return {1, restore_index(cc - left_ctx, {n.pos_b})};
      };
      if (a && b) {
        Deriv e = mk_and(s0.e, *a, s1.e, *b);
        int off = static_cast<int>(s0.e->conclusion.size()) - 1;
        return with_map(e, [&](int cc) -> std::optional<int> {
          if (cc == size - 1) return static_cast<int>(e->conclusion.size()) - 1;
          auto [pi, q] = source(cc);
          if (pi == 0) {
            auto x = s0.map[q];
            if (!x) return std::nullopt;
            return shift_index(*x, {*a});
          }
          auto x = s1.map[q];
          if (!x) return std::nullopt;
          return off + shift_index(*x, {*b});
        });
      }
      if (!a && !b) {
        Deriv e = mk_mix(s0.e, s1.e);
        int off = static_cast<int>(s0.e->conclusion.size());
        return with_map(e, [&](int cc) -> std::optional<int> {
          if (cc == size - 1) return std::nullopt;
          auto [pi, q] = source(cc);
          if (pi == 0) return s0.map[q];
          auto x = s1.map[q];
          if (!x) return std::nullopt;
          return off + *x;
        });
      }
      // Exactly one active is weak; keep the derivation in which it is weak
      // and drop the other branch entirely.
      const Translated& keep = a ? s1 : s0;
      int keep_idx = a ? 1 : 0;
      return with_map(keep.e, [&](int cc) -> std::optional<int> {
        if (cc == size - 1) return std::nullopt;
        auto [pi, q] = source(cc);
        if (pi != keep_idx) return std::nullopt;
        return keep.map[q];
      });
    }
    case Rule::C: {
      Translated sub = translate(n.premises[0]);
      auto a = sub.map[n.pos_a];
      auto b = sub.map[n.pos_b];
      auto context = [&](int cc) {
        return restore_index(cc, {n.pos_a, n.pos_b});
      };
      if (a && b) {
        Deriv e = contract_admissible(sub.e, *a, *b);
        return with_map(e, [&](int cc) -> std::optional<int> {
          if (cc == size - 1) return static_cast<int>(e->conclusion.size()) - 1;
          auto x = sub.map[context(cc)];
          if (!x) return std::nullopt;
          return shift_index(*x, {*a, *b});
        });
      }
      return with_map(sub.e, [&](int cc) -> std::optional<int> {
        if (cc == size - 1) return a ? a : b;
        return sub.map[context(cc)];
      });
    }
    default:
      throw ContractViolation("lk_to_lkstar: rule outside LK");
  }
}

}  // namespace

Deriv lk_to_lkstar(const Deriv& d) {
  std::string why;
  require(check_derivation(d, System::LK, &why), "lk_to_lkstar: input is not LK: " + why);
  return translate(d).e;
}

}  // namespace exnet
