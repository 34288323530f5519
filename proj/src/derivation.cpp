#include "exnet/derivation.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace exnet {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Ax: return "Ax";
    case Rule::AxTop: return "AxTop";
    case Rule::Or0: return "Or0";
    case Rule::Or: return "Or";
    case Rule::Or1: return "Or1";
    case Rule::And: return "And";
    case Rule::Mix: return "Mix";
    case Rule::C: return "C";
    case Rule::W: return "W";
    case Rule::Cut: return "Cut";
  }
  return "?";
}

const char* system_name(System s) {
  switch (s) {
    case System::LK: return "lk";
    case System::LKstar: return "lkstar";
    case System::LKstarCut: return "lkstar_cut";
  }
  return "?";
}

std::optional<System> system_from_name(const std::string& name) {
  if (name == "lk") return System::LK;
  if (name == "lkstar") return System::LKstar;
  if (name == "lkstar_cut") return System::LKstarCut;
  return std::nullopt;
}

namespace {

Formula root_at(const Deriv& d, int pos, const char* who) {
  require(static_cast<bool>(d), std::string(who) + ": null premise");
  require(pos >= 0 && pos < static_cast<int>(d->conclusion.size()),
          std::string(who) + ": active position out of range");
  return d->conclusion.roots[pos];
}

Deriv finish(std::shared_ptr<DerivNode> n) { return n; }

}  // namespace

Deriv mk_ax(const Atom& a) {
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::Ax;
  n->ax_atom = a;
  n->conclusion.roots = {mk_atom(a), mk_atom(a.dual())};
  return finish(n);
}

Deriv mk_axtop() {
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::AxTop;
  n->conclusion.roots = {mk_top()};
  return finish(n);
}

Deriv mk_or0(Deriv prem, int pos_a, Formula b) {
  Formula a = root_at(prem, pos_a, "mk_or0");
  require(static_cast<bool>(b), "mk_or0: missing weak disjunct");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::Or0;
  n->pos_a = pos_a;
  n->side_formula = b;
  n->conclusion = remove_roots(prem->conclusion, {pos_a});
  n->conclusion.roots.push_back(mk_or(a, b));
  n->premises = {std::move(prem)};
  return finish(n);
}

Deriv mk_or1(Deriv prem, int pos_b, Formula a) {
  Formula b = root_at(prem, pos_b, "mk_or1");
  require(static_cast<bool>(a), "mk_or1: missing weak disjunct");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::Or1;
  n->pos_b = pos_b;
  n->side_formula = a;
  n->conclusion = remove_roots(prem->conclusion, {pos_b});
  n->conclusion.roots.push_back(mk_or(a, b));
  n->premises = {std::move(prem)};
  return finish(n);
}

Deriv mk_or(Deriv prem, int pos_a, int pos_b) {
  Formula a = root_at(prem, pos_a, "mk_or");
  Formula b = root_at(prem, pos_b, "mk_or");
  require(pos_a != pos_b, "mk_or: active positions coincide");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::Or;
  n->pos_a = pos_a;
  n->pos_b = pos_b;
  n->conclusion = remove_roots(prem->conclusion, {pos_a, pos_b});
  n->conclusion.roots.push_back(mk_or(a, b));
  n->premises = {std::move(prem)};
  return finish(n);
}

Deriv mk_and(Deriv left, int pos_a, Deriv right, int pos_b) {
  Formula a = root_at(left, pos_a, "mk_and");
  Formula b = root_at(right, pos_b, "mk_and");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::And;
  n->pos_a = pos_a;
  n->pos_b = pos_b;
  n->conclusion = remove_roots(left->conclusion, {pos_a});
  Sequent r = remove_roots(right->conclusion, {pos_b});
  n->conclusion.roots.insert(n->conclusion.roots.end(), r.roots.begin(), r.roots.end());
  n->conclusion.roots.push_back(mk_and(a, b));
  n->premises = {std::move(left), std::move(right)};
  return finish(n);
}

Deriv mk_mix(Deriv left, Deriv right) {
  require(left && right, "mk_mix: null premise");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::Mix;
  n->conclusion = left->conclusion;
  n->conclusion.roots.insert(n->conclusion.roots.end(),
                             right->conclusion.roots.begin(),
                             right->conclusion.roots.end());
  n->premises = {std::move(left), std::move(right)};
  return finish(n);
}

Deriv mk_c(Deriv prem, int pos_a, int pos_b) {
  Formula a = root_at(prem, pos_a, "mk_c");
  Formula b = root_at(prem, pos_b, "mk_c");
  require(pos_a != pos_b, "mk_c: active positions coincide");
  require(formula_equal(a, b), "mk_c: contracted roots differ");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::C;
  n->pos_a = pos_a;
  n->pos_b = pos_b;
  n->conclusion = remove_roots(prem->conclusion, {pos_a, pos_b});
  n->conclusion.roots.push_back(a);
  n->premises = {std::move(prem)};
  return finish(n);
}

Deriv mk_w(Deriv prem, Formula b) {
  require(prem && b, "mk_w: null argument");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::W;
  n->side_formula = b;
  n->conclusion = prem->conclusion;
  n->conclusion.roots.push_back(b);
  n->premises = {std::move(prem)};
  return finish(n);
}

Deriv mk_cut(Deriv left, int pos_a, Deriv right, int pos_b) {
  Formula a = root_at(left, pos_a, "mk_cut");
  Formula na = root_at(right, pos_b, "mk_cut");
  require(formula_equal(dual(a), na), "mk_cut: cut roots are not dual");
  auto n = std::make_shared<DerivNode>();
  n->rule = Rule::Cut;
  n->pos_a = pos_a;
  n->pos_b = pos_b;
  n->conclusion = remove_roots(left->conclusion, {pos_a});
  Sequent r = remove_roots(right->conclusion, {pos_b});
  n->conclusion.roots.insert(n->conclusion.roots.end(), r.roots.begin(), r.roots.end());
  n->premises = {std::move(left), std::move(right)};
  return finish(n);
}

Deriv permute_conclusion(Deriv d, const std::vector<int>& order) {
  require(static_cast<bool>(d), "permute_conclusion: null derivation");
  std::size_t n = d->conclusion.size();
  require(order.size() == n, "permute_conclusion: order has wrong length");
  std::vector<bool> seen(n, false);
  for (int k : order) {
    require(k >= 0 && k < static_cast<int>(n) && !seen[k],
            "permute_conclusion: not a permutation");
    seen[k] = true;
  }
  auto copy = std::make_shared<DerivNode>(*d);
  std::vector<int> base = d->out_perm;
  if (base.empty()) {
    base.resize(n);
    std::iota(base.begin(), base.end(), 0);
  }
  Sequent permuted;
  std::vector<int> composed(n);
  for (std::size_t k = 0; k < n; ++k) {
    permuted.roots.push_back(d->conclusion.roots[order[k]]);
    composed[k] = base[order[k]];
  }
  copy->conclusion = permuted;
  bool identity = true;
  for (std::size_t k = 0; k < n; ++k)
    if (composed[k] != static_cast<int>(k)) identity = false;
  copy->out_perm = identity ? std::vector<int>{} : composed;
  return copy;
}

namespace {

// Recomputes the canonical conclusion of a node from its premises' stored
// conclusions, without the node's output permutation.
bool canonical_conclusion(const DerivNode& n, Sequent* out, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = std::string(rule_name(n.rule)) + ": " + msg;
    return false;
  };
  auto premise_root = [&](int prem, int pos, Formula* f) {
    const Sequent& s = n.premises[prem]->conclusion;
    if (pos < 0 || pos >= static_cast<int>(s.size())) return false;
    *f = s.roots[pos];
    return true;
  };
  switch (n.rule) {
    case Rule::Ax:
      if (!n.premises.empty()) return fail("expects no premises");
      out->roots = {mk_atom(n.ax_atom), mk_atom(n.ax_atom.dual())};
      return true;
    case Rule::AxTop:
      if (!n.premises.empty()) return fail("expects no premises");
      out->roots = {mk_top()};
      return true;
    case Rule::Or0: {
      if (n.premises.size() != 1) return fail("expects one premise");
      Formula a;
      if (!premise_root(0, n.pos_a, &a)) return fail("active position out of range");
      if (!n.side_formula) return fail("missing weak disjunct");
      *out = remove_roots(n.premises[0]->conclusion, {n.pos_a});
      out->roots.push_back(mk_or(a, n.side_formula));
      return true;
    }
    case Rule::Or1: {
      if (n.premises.size() != 1) return fail("expects one premise");
      Formula b;
      if (!premise_root(0, n.pos_b, &b)) return fail("active position out of range");
      if (!n.side_formula) return fail("missing weak disjunct");
      *out = remove_roots(n.premises[0]->conclusion, {n.pos_b});
      out->roots.push_back(mk_or(n.side_formula, b));
      return true;
    }
    case Rule::Or: {
      if (n.premises.size() != 1) return fail("expects one premise");
      Formula a, b;
      if (n.pos_a == n.pos_b) return fail("active positions coincide");
      if (!premise_root(0, n.pos_a, &a) || !premise_root(0, n.pos_b, &b))
        return fail("active position out of range");
      *out = remove_roots(n.premises[0]->conclusion, {n.pos_a, n.pos_b});
      out->roots.push_back(mk_or(a, b));
      return true;
    }
    case Rule::And: {
      if (n.premises.size() != 2) return fail("expects two premises");
      Formula a, b;
      if (!premise_root(0, n.pos_a, &a) || !premise_root(1, n.pos_b, &b))
        return fail("active position out of range");
      *out = remove_roots(n.premises[0]->conclusion, {n.pos_a});
      Sequent r = remove_roots(n.premises[1]->conclusion, {n.pos_b});
      out->roots.insert(out->roots.end(), r.roots.begin(), r.roots.end());
      out->roots.push_back(mk_and(a, b));
      return true;
    }
    case Rule::Mix: {
      if (n.premises.size() != 2) return fail("expects two premises");
      *out = n.premises[0]->conclusion;
      const Sequent& r = n.premises[1]->conclusion;
      out->roots.insert(out->roots.end(), r.roots.begin(), r.roots.end());
      return true;
    }
    case Rule::C: {
      if (n.premises.size() != 1) return fail("expects one premise");
      Formula a, b;
      if (n.pos_a == n.pos_b) return fail("active positions coincide");
      if (!premise_root(0, n.pos_a, &a) || !premise_root(0, n.pos_b, &b))
        return fail("active position out of range");
      if (!formula_equal(a, b)) return fail("contracted roots differ");
      *out = remove_roots(n.premises[0]->conclusion, {n.pos_a, n.pos_b});
      out->roots.push_back(a);
      return true;
    }
    case Rule::W: {
      if (n.premises.size() != 1) return fail("expects one premise");
      if (!n.side_formula) return fail("missing weakened formula");
      *out = n.premises[0]->conclusion;
      out->roots.push_back(n.side_formula);
      return true;
    }
    case Rule::Cut: {
      if (n.premises.size() != 2) return fail("expects two premises");
      Formula a, b;
      if (!premise_root(0, n.pos_a, &a) || !premise_root(1, n.pos_b, &b))
        return fail("active position out of range");
      if (!formula_equal(dual(a), b)) return fail("cut roots are not dual");
      *out = remove_roots(n.premises[0]->conclusion, {n.pos_a});
      Sequent r = remove_roots(n.premises[1]->conclusion, {n.pos_b});
      out->roots.insert(out->roots.end(), r.roots.begin(), r.roots.end());
      return true;
    }
  }
  return fail("unknown rule");
}

bool rule_allowed(Rule r, System sys) {
  switch (sys) {
    case System::LK:
      return r == Rule::Ax || r == Rule::AxTop || r == Rule::Or ||
             r == Rule::And || r == Rule::C || r == Rule::W;
    case System::LKstar:
      return r != Rule::W && r != Rule::Cut;
    case System::LKstarCut:
      return r != Rule::W;
  }
  return false;
}

bool check_node(const Deriv& d, System sys, std::string* why) {
  for (const Deriv& p : d->premises)
    if (!check_node(p, sys, why)) return false;
  auto fail = [&](const std::string& msg) {
    if (why) *why = std::string(rule_name(d->rule)) + ": " + msg;
    return false;
  };
  if (!rule_allowed(d->rule, sys))
    return fail(std::string("rule not available in ") + system_name(sys));
  Sequent canon;
  if (!canonical_conclusion(*d, &canon, why)) return false;
  std::size_t n = canon.size();
  if (d->conclusion.size() != n) return fail("conclusion has wrong length");
  if (d->out_perm.empty()) {
    if (!sequent_equal(d->conclusion, canon)) return fail("conclusion not canonical");
  } else {
    if (d->out_perm.size() != n) return fail("bad permutation length");
    std::vector<bool> seen(n, false);
    for (int k : d->out_perm) {
      if (k < 0 || k >= static_cast<int>(n) || seen[k])
        return fail("stored reordering is not a permutation");
      seen[k] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (!formula_equal(d->conclusion.roots[k], canon.roots[d->out_perm[k]]))
        return fail("conclusion does not match permuted layout");
  }
  // System-specific side conditions.
  if (d->rule == Rule::C && (sys == System::LKstar || sys == System::LKstarCut)) {
    Formula a = d->premises[0]->conclusion.roots[d->pos_a];
    if (!(a->kind == FKind::AtomF || a->kind == FKind::And))
      return fail("contraction restricted to atoms and conjunctions");
  }
  if (d->rule == Rule::Cut) {
    Formula a = d->premises[0]->conclusion.roots[d->pos_a];
    if (is_unit(a)) return fail("cut formula must not be a unit");
  }
  return true;
}

}  // namespace

bool check_derivation(const Deriv& d, System system, std::string* why) {
  if (!d) {
    if (why) *why = "null derivation";
    return false;
  }
  return check_node(d, system, why);
}

std::size_t derivation_size(const Deriv& d) {
  require(static_cast<bool>(d), "derivation_size: null derivation");
  std::size_t n = 1;
  for (const Deriv& p : d->premises) n += derivation_size(p);
  return n;
}

namespace {

using json = nlohmann::ordered_json;

json node_to_json(const Deriv& d) {
  json j;
  j["rule"] = rule_name(d->rule);
  switch (d->rule) {
    case Rule::Ax:
      j["atom"] = (d->ax_atom.neg ? "~" : "") + d->ax_atom.sym;
      break;
    case Rule::Or0:
      j["on"] = d->pos_a;
      j["weak"] = print_formula(d->side_formula);
      break;
    case Rule::Or1:
      j["on"] = d->pos_b;
      j["weak"] = print_formula(d->side_formula);
      break;
    case Rule::Or:
      j["left"] = d->pos_a;
      j["right"] = d->pos_b;
      break;
    case Rule::And:
    case Rule::Cut:
      j["left"] = d->pos_a;
      j["right"] = d->pos_b;
      break;
    case Rule::C:
      j["first"] = d->pos_a;
      j["second"] = d->pos_b;
      break;
    case Rule::W:
      j["formula"] = print_formula(d->side_formula);
      break;
    default:
      break;
  }
  if (!d->out_perm.empty()) j["perm"] = d->out_perm;
  j["premises"] = json::array();
  for (const Deriv& p : d->premises) j["premises"].push_back(node_to_json(p));
  j["conclusion"] = print_sequent(d->conclusion);
  return j;
}

Atom parse_atom_token(const std::string& s) {
  Formula f = parse_formula(s);
  if (f->kind != FKind::AtomF) throw ParseError("expected an atom, got: " + s);
  return f->atom;
}

Deriv node_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rule") || !j.contains("premises"))
    throw ParseError("derivation node must be an object with rule and premises");
  std::string rule = j.at("rule").get<std::string>();
  std::vector<Deriv> prems;
  for (const json& p : j.at("premises")) prems.push_back(node_from_json(p));
  auto arity = [&](std::size_t n) {
    if (prems.size() != n)
      throw ParseError("rule " + rule + " expects " + std::to_string(n) + " premises");
  };
  auto ipos = [&](const char* key) {
    if (!j.contains(key)) throw ParseError("rule " + rule + " missing field " + key);
    return j.at(key).get<int>();
  };
  Deriv d;
  try {
    if (rule == "Ax") {
      arity(0);
      d = mk_ax(parse_atom_token(j.at("atom").get<std::string>()));
    } else if (rule == "AxTop") {
      arity(0);
      d = mk_axtop();
    } else if (rule == "Or0") {
      arity(1);
      d = mk_or0(prems[0], ipos("on"), parse_formula(j.at("weak").get<std::string>()));
    } else if (rule == "Or1") {
      arity(1);
      d = mk_or1(prems[0], ipos("on"), parse_formula(j.at("weak").get<std::string>()));
    } else if (rule == "Or") {
      arity(1);
      d = mk_or(prems[0], ipos("left"), ipos("right"));
    } else if (rule == "And") {
      arity(2);
      d = mk_and(prems[0], ipos("left"), prems[1], ipos("right"));
    } else if (rule == "Mix") {
      arity(2);
      d = mk_mix(prems[0], prems[1]);
    } else if (rule == "C") {
      arity(1);
      d = mk_c(prems[0], ipos("first"), ipos("second"));
    } else if (rule == "W") {
      arity(1);
      d = mk_w(prems[0], parse_formula(j.at("formula").get<std::string>()));
    } else if (rule == "Cut") {
      arity(2);
      d = mk_cut(prems[0], ipos("left"), prems[1], ipos("right"));
    } else {
      throw ParseError("unknown rule: " + rule);
    }
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("ill-formed rule application: ") + e.what());
  }
  if (j.contains("perm")) {
    std::vector<int> order = j.at("perm").get<std::vector<int>>();
    try {
      d = permute_conclusion(d, order);
    } catch (const ContractViolation& e) {
      throw ParseError(std::string("bad perm field: ") + e.what());
    }
  }
  if (j.contains("conclusion")) {
    Sequent stated = parse_sequent(j.at("conclusion").get<std::string>());
    if (!sequent_equal(stated, d->conclusion))
      throw ParseError("stated conclusion does not match rule application: " +
                       j.at("conclusion").get<std::string>() + " vs " +
                       print_sequent(d->conclusion));
  }
  return d;
}

}  // namespace

std::string derivation_to_json(const Deriv& d, System system) {
  require(static_cast<bool>(d), "derivation_to_json: null derivation");
  json j;
  j["format"] = "exnet/1";
  j["kind"] = "derivation";
  j["system"] = system_name(system);
  j["derivation"] = node_to_json(d);
  return j.dump(2) + "\n";
}

std::pair<Deriv, System> derivation_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != "derivation")
    throw ParseError("expected a derivation document");
  auto sys = system_from_name(j.value("system", ""));
  if (!sys) throw ParseError("unknown system: " + j.value("system", ""));
  if (!j.contains("derivation")) throw ParseError("missing derivation body");
  return {node_from_json(j.at("derivation")), *sys};
}

}  // namespace exnet
