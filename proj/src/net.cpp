#include "exnet/net.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace exnet {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::One: return "one";
    case NodeKind::Wire: return "wire";
    case NodeKind::Star: return "star";
    case NodeKind::Expansion: return "expansion";
    case NodeKind::OrNode: return "or";
    case NodeKind::Tensor: return "tensor";
    case NodeKind::CutNode: return "cut";
  }
  return "?";
}

NetType classical_type(Formula f) {
  require(static_cast<bool>(f), "classical_type: null formula");
  NetType t;
  t.kind = TypeKind::ClassicalT;
  t.a = std::move(f);
  return t;
}

NetType witness_type(Formula atom) {
  require(atom && atom->kind == FKind::AtomF, "witness_type: needs an atom");
  NetType t;
  t.kind = TypeKind::WitnessT;
  t.a = std::move(atom);
  return t;
}

NetType tensor_type(Formula a, Formula b) {
  require(a && b, "tensor_type: null side");
  NetType t;
  t.kind = TypeKind::TensorT;
  t.a = std::move(a);
  t.b = std::move(b);
  return t;
}

bool type_equal(const NetType& x, const NetType& y) {
  if (x.kind != y.kind) return false;
  if (!formula_equal(x.a, y.a)) return false;
  if (x.kind == TypeKind::TensorT) return formula_equal(x.b, y.b);
  return true;
}

std::string print_type(const NetType& t) {
  switch (t.kind) {
    case TypeKind::ClassicalT: return print_formula(t.a);
    case TypeKind::WitnessT: return "[" + print_formula(t.a) + "]";
    case TypeKind::TensorT:
      return "(" + print_formula(t.a) + " >< " + print_formula(t.b) + ")";
  }
  return "?";
}

NodeId TypedForest::add(NodeKind kind, std::vector<NodeId> kids, Atom wire) {
  NodeId id = next_id++;
  NetNode n;
  n.id = id;
  n.kind = kind;
  n.kids = std::move(kids);
  n.wire = std::move(wire);
  nodes.emplace(id, std::move(n));
  return id;
}

const NetNode& TypedForest::node(NodeId id) const {
  auto it = nodes.find(id);
  require(it != nodes.end(), "unknown node id " + std::to_string(id));
  return it->second;
}

NetNode& TypedForest::node(NodeId id) {
  auto it = nodes.find(id);
  require(it != nodes.end(), "unknown node id " + std::to_string(id));
  return it->second;
}

std::map<NodeId, NodeId> parents_of(const TypedForest& f) {
  std::map<NodeId, NodeId> p;
  for (const auto& [id, n] : f.nodes)
    for (NodeId k : n.kids) p[k] = id;
  return p;
}

std::vector<NodeId> subtree_of(const TypedForest& f, NodeId root) {
  std::vector<NodeId> out, stack{root};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    out.push_back(id);
    const NetNode& n = f.node(id);
    for (auto it = n.kids.rbegin(); it != n.kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

namespace {

bool explain(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool parent_kind_ok(NodeKind child, NodeKind parent) {
  switch (child) {
    case NodeKind::Wire: return parent == NodeKind::Expansion;
    case NodeKind::Tensor: return parent == NodeKind::Expansion;
    case NodeKind::Star: return parent == NodeKind::OrNode;
    case NodeKind::One:
    case NodeKind::Expansion:
    case NodeKind::OrNode:
      return parent == NodeKind::OrNode || parent == NodeKind::Tensor ||
             parent == NodeKind::CutNode;
    case NodeKind::CutNode: return false;
  }
  return false;
}

}  // namespace

bool validate_forest(const TypedForest& f, std::string* why) {
  std::set<NodeId> root_set;
  for (NodeId r : f.roots) {
    if (!f.has(r)) return explain(why, "root id " + std::to_string(r) + " missing");
    if (!root_set.insert(r).second)
      return explain(why, "duplicate root id " + std::to_string(r));
  }

  std::map<NodeId, NodeId> parent;
  for (const auto& [id, n] : f.nodes) {
    if (n.id != id) return explain(why, "node id field disagrees with key");
    std::size_t want = 0;
    switch (n.kind) {
      case NodeKind::One:
      case NodeKind::Wire:
      case NodeKind::Star: want = 0; break;
      case NodeKind::OrNode:
      case NodeKind::Tensor:
      case NodeKind::CutNode: want = 2; break;
      case NodeKind::Expansion: want = n.kids.empty() ? 1 : n.kids.size(); break;
    }
    if (n.kids.size() != want)
      return explain(why, std::string(kind_name(n.kind)) + " node " +
                              std::to_string(id) + " has wrong arity");
    for (NodeId k : n.kids) {
      if (!f.has(k))
        return explain(why, "node " + std::to_string(id) + " references missing kid");
      if (root_set.count(k))
        return explain(why, "root " + std::to_string(k) + " appears as a child");
      auto [it, fresh] = parent.emplace(k, id);
      (void)it;
      if (!fresh)
        return explain(why, "node " + std::to_string(k) + " has two parents");
      if (!parent_kind_ok(f.node(k).kind, n.kind))
        return explain(why, std::string(kind_name(f.node(k).kind)) + " node " +
                                std::to_string(k) + " cannot sit under " +
                                kind_name(n.kind));
    }
    if (n.kind == NodeKind::Expansion) {
      NodeKind kk = f.node(n.kids[0]).kind;
      if (kk != NodeKind::Wire && kk != NodeKind::Tensor)
        return explain(why, "expansion summands must be wires or tensors");
      for (NodeId k : n.kids)
        if (f.node(k).kind != kk)
          return explain(why, "expansion " + std::to_string(id) + " mixes summand kinds");
    }
    if (n.kind == NodeKind::OrNode) {
      if (f.node(n.kids[0]).kind == NodeKind::Star &&
          f.node(n.kids[1]).kind == NodeKind::Star)
        return explain(why, "disjunction " + std::to_string(id) + " has two stars");
    }
  }

  std::set<NodeId> reached;
  for (NodeId r : f.roots)
    for (NodeId id : subtree_of(f, r))
      if (!reached.insert(id).second)
        return explain(why, "node " + std::to_string(id) + " reached twice");
  if (reached.size() != f.nodes.size())
    return explain(why, "forest contains unreachable nodes");

  std::map<std::string, std::set<bool>> signs;
  for (const auto& [id, n] : f.nodes) {
    (void)id;
    if (n.kind != NodeKind::Wire) continue;
    if (!signs[n.wire.sym].insert(n.wire.neg).second)
      return explain(why, std::string("wire ") + (n.wire.neg ? "~" : "") +
                              n.wire.sym + " occurs twice");
  }
  for (const auto& [sym, ss] : signs)
    if (ss.size() != 2)
      return explain(why, "wire " + sym + " lacks its dual occurrence");
  return true;
}

namespace {

// Typing per the annotation discipline: expansions cover atoms and
// conjunctions, or-forms cover disjunctions, 1 covers T, and wire witness
// types carry the wire's polarity.
struct TypeChecker {
  const TypedForest& f;
  std::string* why;
  std::map<std::string, std::string> base;  // wire name -> atom symbol

  bool fail(const std::string& msg) { return explain(why, msg); }

  bool wire_ok(const NetNode& w, const Atom& at) {
    if (w.wire.neg != at.neg)
      return fail(std::string("wire ") + (w.wire.neg ? "~" : "") + w.wire.sym +
                  " has the wrong polarity for " + print_formula(mk_atom(at)));
    auto [it, fresh] = base.emplace(w.wire.sym, at.sym);
    if (!fresh && it->second != at.sym)
      return fail("wire " + w.wire.sym + " used at two different atoms");
    return true;
  }

  bool check_tree(NodeId id, const Formula& a) {
    const NetNode& n = f.node(id);
    switch (n.kind) {
      case NodeKind::One:
        if (a->kind != FKind::Top) return fail("1 must have type T");
        return true;
      case NodeKind::Expansion:
        if (a->kind == FKind::AtomF) {
          for (NodeId k : n.kids) {
            const NetNode& w = f.node(k);
            if (w.kind != NodeKind::Wire)
              return fail("atom expansion with non-wire summand");
            if (!wire_ok(w, a->atom)) return false;
          }
          return true;
        }
        if (a->kind == FKind::And) {
          for (NodeId k : n.kids) {
            const NetNode& t = f.node(k);
            if (t.kind != NodeKind::Tensor)
              return fail("conjunction expansion with non-tensor summand");
            if (!check_tree(t.kids[0], a->left)) return false;
            if (!check_tree(t.kids[1], a->right)) return false;
          }
          return true;
        }
        return fail("expansion typed " + print_formula(a) +
                    "; expansions cover atoms and conjunctions only");
      case NodeKind::OrNode: {
        if (a->kind != FKind::Or)
          return fail("disjunction node typed " + print_formula(a));
        const NetNode& l = f.node(n.kids[0]);
        const NetNode& r = f.node(n.kids[1]);
        if (l.kind != NodeKind::Star && !check_tree(n.kids[0], a->left)) return false;
        if (r.kind != NodeKind::Star && !check_tree(n.kids[1], a->right)) return false;
        return true;
      }
      case NodeKind::Wire:
        return fail("bare wire inside a classical tree");
      case NodeKind::Tensor:
        return fail("tensor cannot have a classical type");
      case NodeKind::Star:
        return fail("stray star");
      case NodeKind::CutNode:
        return fail("cut below a root");
    }
    return fail("bad node kind");
  }
};

bool is_positive_cut_type(const Formula& a) {
  return (a->kind == FKind::AtomF && a->atom.neg) || a->kind == FKind::And;
}

}  // namespace

bool type_check(const TypedForest& f, std::string* why) {
  if (!validate_forest(f, why)) return false;

  std::set<NodeId> expect_typed;
  for (NodeId r : f.roots) {
    const NetNode& n = f.node(r);
    if (n.kind == NodeKind::CutNode) {
      expect_typed.insert(n.kids[0]);
      expect_typed.insert(n.kids[1]);
    } else {
      expect_typed.insert(r);
    }
  }
  for (const auto& [id, t] : f.types) {
    (void)t;
    if (!expect_typed.count(id))
      return explain(why, "type recorded for non-root node " + std::to_string(id));
  }
  for (NodeId id : expect_typed)
    if (!f.types.count(id))
      return explain(why, "missing type for node " + std::to_string(id));

  TypeChecker tc{f, why, {}};
  for (NodeId r : f.roots) {
    const NetNode& n = f.node(r);
    if (n.kind == NodeKind::CutNode) {
      const NetType& ta = f.types.at(n.kids[0]);
      const NetType& tb = f.types.at(n.kids[1]);
      if (ta.kind != TypeKind::ClassicalT || tb.kind != TypeKind::ClassicalT)
        return explain(why, "cut sides must have classical types");
      if (!formula_equal(dual(ta.a), tb.a))
        return explain(why, "cut sides are not dual: " + print_formula(ta.a) +
                                " vs " + print_formula(tb.a));
      if (is_unit(ta.a)) return explain(why, "cut formula must not be a unit");
      if (!tc.check_tree(n.kids[0], ta.a)) return false;
      if (!tc.check_tree(n.kids[1], tb.a)) return false;
      continue;
    }
    const NetType& t = f.types.at(r);
    switch (t.kind) {
      case TypeKind::ClassicalT:
        if (!tc.check_tree(r, t.a)) return false;
        break;
      case TypeKind::WitnessT:
        if (n.kind != NodeKind::Wire)
          return explain(why, "witness type on a non-wire root");
        if (!tc.wire_ok(n, t.a->atom)) return false;
        break;
      case TypeKind::TensorT:
        if (n.kind != NodeKind::Tensor)
          return explain(why, "tensor type on a non-tensor root");
        if (!tc.check_tree(n.kids[0], t.a)) return false;
        if (!tc.check_tree(n.kids[1], t.b)) return false;
        break;
    }
  }
  return true;
}

std::vector<NetType> net_type(const TypedForest& f) {
  std::vector<NetType> out;
  for (NodeId r : f.roots) {
    if (f.node(r).kind == NodeKind::CutNode) continue;
    out.push_back(f.types.at(r));
  }
  return out;
}

Sequent classical_sequent(const TypedForest& f) {
  Sequent s;
  for (const NetType& t : net_type(f)) {
    require(t.kind != TypeKind::TensorT,
            "classical_sequent: tensor-typed root has no underlying formula");
    s.roots.push_back(t.a);
  }
  return s;
}

std::size_t structural_hash(const TypedForest& f, NodeId id) {
  const NetNode& n = f.node(id);
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x2545f4914f6cdd1dull + 1;
  switch (n.kind) {
    case NodeKind::Wire:
      return hash_combine(h, n.wire.neg ? 2 : 1);
    case NodeKind::Expansion: {
      std::vector<std::size_t> ks;
      for (NodeId k : n.kids) ks.push_back(structural_hash(f, k));
      std::sort(ks.begin(), ks.end());
      for (std::size_t x : ks) h = hash_combine(h, x);
      return h;
    }
    default:
      for (NodeId k : n.kids) h = hash_combine(h, structural_hash(f, k));
      return h;
  }
}

namespace {

struct WireBij {
  std::map<std::string, std::string> ab, ba;

  bool bind(const std::string& x, const std::string& y) {
    auto it = ab.find(x);
    if (it != ab.end()) return it->second == y;
    if (ba.count(y)) return false;
    ab[x] = y;
    ba[y] = x;
    return true;
  }
};

struct AlphaMatcher {
  const TypedForest& A;
  const TypedForest& B;

  bool match(NodeId a, NodeId b, WireBij& m) {
    const NetNode& na = A.node(a);
    const NetNode& nb = B.node(b);
    if (na.kind != nb.kind) return false;
    switch (na.kind) {
      case NodeKind::One:
      case NodeKind::Star:
        return true;
      case NodeKind::Wire:
        return na.wire.neg == nb.wire.neg && m.bind(na.wire.sym, nb.wire.sym);
      case NodeKind::OrNode:
      case NodeKind::Tensor:
      case NodeKind::CutNode:
        return match(na.kids[0], nb.kids[0], m) && match(na.kids[1], nb.kids[1], m);
      case NodeKind::Expansion: {
        if (na.kids.size() != nb.kids.size()) return false;
        std::vector<bool> used(nb.kids.size(), false);
        return match_summands(na.kids, nb.kids, 0, used, m);
      }
    }
    return false;
  }

  bool match_summands(const std::vector<NodeId>& as, const std::vector<NodeId>& bs,
                      std::size_t i, std::vector<bool>& used, WireBij& m) {
    if (i == as.size()) return true;
    std::size_t ha = structural_hash(A, as[i]);
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (used[j] || structural_hash(B, bs[j]) != ha) continue;
      WireBij saved = m;
      used[j] = true;
      if (match(as[i], bs[j], m) && match_summands(as, bs, i + 1, used, m))
        return true;
      used[j] = false;
      m = saved;
    }
    return false;
  }
};

}  // namespace

bool alpha_equal(const TypedForest& a, const TypedForest& b) {
  if (a.roots.size() != b.roots.size()) return false;
  AlphaMatcher am{a, b};
  WireBij m;
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    const NetNode& ra = a.node(a.roots[i]);
    const NetNode& rb = b.node(b.roots[i]);
    if ((ra.kind == NodeKind::CutNode) != (rb.kind == NodeKind::CutNode)) return false;
    if (ra.kind == NodeKind::CutNode) {
      WireBij saved = m;
      bool straight = type_equal(a.types.at(ra.kids[0]), b.types.at(rb.kids[0])) &&
                      type_equal(a.types.at(ra.kids[1]), b.types.at(rb.kids[1])) &&
                      am.match(ra.kids[0], rb.kids[0], m) &&
                      am.match(ra.kids[1], rb.kids[1], m);
      if (straight) continue;
      m = saved;
      bool swapped = type_equal(a.types.at(ra.kids[0]), b.types.at(rb.kids[1])) &&
                     type_equal(a.types.at(ra.kids[1]), b.types.at(rb.kids[0])) &&
                     am.match(ra.kids[0], rb.kids[1], m) &&
                     am.match(ra.kids[1], rb.kids[0], m);
      if (!swapped) return false;
      continue;
    }
    if (!type_equal(a.types.at(a.roots[i]), b.types.at(b.roots[i]))) return false;
    if (!am.match(a.roots[i], b.roots[i], m)) return false;
  }
  return true;
}

std::string print_term(const TypedForest& f, NodeId id) {
  const NetNode& n = f.node(id);
  switch (n.kind) {
    case NodeKind::One: return "1";
    case NodeKind::Star: return "*";
    case NodeKind::Wire: return (n.wire.neg ? "~" : "") + n.wire.sym;
    case NodeKind::Expansion: {
      std::string out = "{";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += " + ";
        out += print_term(f, n.kids[i]);
      }
      return out + "}";
    }
    case NodeKind::OrNode:
      return "(" + print_term(f, n.kids[0]) + " \\/ " + print_term(f, n.kids[1]) + ")";
    case NodeKind::Tensor:
      return "(" + print_term(f, n.kids[0]) + " >< " + print_term(f, n.kids[1]) + ")";
    case NodeKind::CutNode:
      throw ContractViolation("print_term: cut is not a term");
  }
  return "?";
}

std::string print_net(const TypedForest& f) {
  std::string out;
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    if (i) out += ", ";
    const NetNode& n = f.node(f.roots[i]);
    if (n.kind == NodeKind::CutNode) {
      out += print_term(f, n.kids[0]) + " : " + print_type(f.types.at(n.kids[0]));
      out += " || ";
      out += print_term(f, n.kids[1]) + " : " + print_type(f.types.at(n.kids[1]));
    } else {
      out += print_term(f, f.roots[i]) + " : " + print_type(f.types.at(f.roots[i]));
    }
  }
  return out;
}

void canonicalize(TypedForest& f) {
  std::vector<NodeId> order;
  for (NodeId r : f.roots) order.push_back(r);
  for (NodeId r : order) {
    for (NodeId id : subtree_of(f, r)) {
      NetNode& n = f.node(id);
      if (n.kind != NodeKind::Expansion || n.kids.size() < 2) continue;
      std::stable_sort(n.kids.begin(), n.kids.end(), [&](NodeId x, NodeId y) {
        std::size_t hx = structural_hash(f, x), hy = structural_hash(f, y);
        if (hx != hy) return hx < hy;
        return print_term(f, x) < print_term(f, y);
      });
    }
    NetNode& n = f.node(r);
    if (n.kind == NodeKind::CutNode) {
      const NetType& t0 = f.types.at(n.kids[0]);
      if (!is_positive_cut_type(t0.a)) std::swap(n.kids[0], n.kids[1]);
    }
  }
}

namespace {

struct NetParser {
  const std::string& s;
  std::size_t i = 0;
  TypedForest& f;

  NetParser(const std::string& text, TypedForest& out) : s(text), f(out) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool peek_is(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("net parse error at offset " + std::to_string(i) + ": " + msg);
  }

  std::string ident() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (start == i) fail("expected an identifier");
    return s.substr(start, i - start);
  }

  NodeId wire() {
    bool neg = eat("~");
    std::string name = ident();
    if (name == "T" || name == "F" || name == "1")
      fail("'" + name + "' cannot name a wire");
    return f.add(NodeKind::Wire, {}, Atom(name, neg));
  }

  NodeId summand() {
    skip_ws();
    if (peek_is('(')) {
      expect("(");
      NodeId l = term();
      expect("><");
      NodeId r = term();
      expect(")");
      return f.add(NodeKind::Tensor, {l, r});
    }
    return wire();
  }

  NodeId term() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input");
    if (s[i] == '1' &&
        (i + 1 == s.size() || !(std::isalnum(static_cast<unsigned char>(s[i + 1])) ||
                                s[i + 1] == '_'))) {
      ++i;
      return f.add(NodeKind::One);
    }
    if (peek_is('{')) {
      expect("{");
      std::vector<NodeId> kids{summand()};
      while (eat("+")) kids.push_back(summand());
      expect("}");
      return f.add(NodeKind::Expansion, std::move(kids));
    }
    if (peek_is('(')) {
      expect("(");
      if (eat("*")) {
        expect("\\/");
        NodeId r = term();
        expect(")");
        NodeId star = f.add(NodeKind::Star);
        return f.add(NodeKind::OrNode, {star, r});
      }
      NodeId l = term();
      if (eat("><")) {
        NodeId r = term();
        expect(")");
        return f.add(NodeKind::Tensor, {l, r});
      }
      expect("\\/");
      if (eat("*")) {
        expect(")");
        NodeId star = f.add(NodeKind::Star);
        return f.add(NodeKind::OrNode, {l, star});
      }
      NodeId r = term();
      expect(")");
      return f.add(NodeKind::OrNode, {l, r});
    }
    return wire();
  }
};

NetType parse_type_text(const std::string& raw) {
  std::size_t a = raw.find_first_not_of(" \t\n");
  std::size_t b = raw.find_last_not_of(" \t\n");
  if (a == std::string::npos) throw ParseError("empty type annotation");
  std::string text = raw.substr(a, b - a + 1);
  if (text.front() == '[') {
    if (text.back() != ']') throw ParseError("unterminated witness type: " + text);
    Formula at = parse_formula(text.substr(1, text.size() - 2));
    if (at->kind != FKind::AtomF)
      throw ParseError("witness type must be an atom: " + text);
    return witness_type(at);
  }
  try {
    return classical_type(parse_formula(text));
  } catch (const ParseError&) {
  }
  if (text.front() == '(' && text.back() == ')') {
    std::string inner = text.substr(1, text.size() - 2);
    int depth = 0;
    for (std::size_t k = 0; k + 1 < inner.size(); ++k) {
      char c = inner[k];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (depth == 0 && inner[k] == '>' && inner[k + 1] == '<') {
        Formula l = parse_formula(inner.substr(0, k));
        Formula r = parse_formula(inner.substr(k + 2));
        return tensor_type(l, r);
      }
    }
  }
  throw ParseError("cannot parse type: " + text);
}

// Splits at top-level occurrences of sep outside (), {}, [].
std::vector<std::string> split_top(const std::string& text, const std::string& sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (depth == 0 && text.compare(k, sep.size(), sep) == 0) {
      parts.push_back(text.substr(start, k - start));
      start = k + sep.size();
      k += sep.size() - 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

}  // namespace

TypedForest parse_net(const std::string& text) {
  TypedForest f;
  if (text.find_first_not_of(" \t\n") == std::string::npos)
    throw ParseError("empty net");
  for (const std::string& chunk : split_top(text, ",")) {
    std::vector<std::string> sides = split_top(chunk, "||");
    if (sides.size() > 2) throw ParseError("cut with more than two sides");
    auto parse_side = [&](const std::string& part) -> std::pair<NodeId, NetType> {
      std::vector<std::string> tt = split_top(part, ":");
      if (tt.size() != 2)
        throw ParseError("each root needs exactly one type annotation: " + part);
      NetParser p(tt[0], f);
      NodeId n = p.term();
      p.skip_ws();
      if (p.i != tt[0].size()) p.fail("trailing input after term");
      return {n, parse_type_text(tt[1])};
    };
    if (sides.size() == 1) {
      auto [n, t] = parse_side(sides[0]);
      f.roots.push_back(n);
      f.types.emplace(n, t);
    } else {
      auto [l, tl] = parse_side(sides[0]);
      auto [r, tr] = parse_side(sides[1]);
      NodeId cut = f.add(NodeKind::CutNode, {l, r});
      f.roots.push_back(cut);
      f.types.emplace(l, tl);
      f.types.emplace(r, tr);
    }
  }
  return f;
}

}  // namespace exnet
