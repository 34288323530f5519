#include "exnet/formula.hpp"

#include <cctype>
#include <functional>

namespace exnet {

Formula mk_atom(const Atom& a) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::AtomF;
  n->atom = a;
  return n;
}

Formula mk_atom(const std::string& sym, bool neg) { return mk_atom(Atom(sym, neg)); }

Formula mk_top() {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Top;
  return n;
}

Formula mk_bot() {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Bot;
  return n;
}

static Formula mk_bin(FKind k, Formula l, Formula r) {
  require(l && r, "binary formula needs both sides");
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

Formula mk_and(Formula l, Formula r) { return mk_bin(FKind::And, std::move(l), std::move(r)); }
Formula mk_or(Formula l, Formula r) { return mk_bin(FKind::Or, std::move(l), std::move(r)); }

bool formula_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::AtomF: return a->atom == b->atom;
    case FKind::Top:
    case FKind::Bot: return true;
    default:
      return formula_equal(a->left, b->left) && formula_equal(a->right, b->right);
  }
}

std::size_t formula_hash(const Formula& f) {
  require(static_cast<bool>(f), "formula_hash: null formula");
  std::size_t h = static_cast<std::size_t>(f->kind) * 0x517cc1b727220a95ull;
  switch (f->kind) {
    case FKind::AtomF:
      h = hash_combine(h, std::hash<std::string>{}(f->atom.sym));
      h = hash_combine(h, f->atom.neg ? 2u : 1u);
      return h;
    case FKind::Top:
    case FKind::Bot:
      return h;
    default:
      h = hash_combine(h, formula_hash(f->left));
      h = hash_combine(h, formula_hash(f->right));
      return h;
  }
}

int rank(const Formula& f) {
  require(static_cast<bool>(f), "rank: null formula");
  switch (f->kind) {
    case FKind::AtomF:
    case FKind::Top:
    case FKind::Bot: return 1;
    default: return 1 + std::max(rank(f->left), rank(f->right));
  }
}

Formula dual(const Formula& f) {
  require(static_cast<bool>(f), "dual: null formula");
  switch (f->kind) {
    case FKind::AtomF: return mk_atom(f->atom.dual());
    case FKind::Top: return mk_bot();
    case FKind::Bot: return mk_top();
    case FKind::And: return mk_or(dual(f->left), dual(f->right));
    case FKind::Or: return mk_and(dual(f->left), dual(f->right));
  }
  throw ContractViolation("dual: bad kind");
}

bool is_unit(const Formula& f) {
  return f && (f->kind == FKind::Top || f->kind == FKind::Bot);
}

std::string print_formula(const Formula& f) {
  require(static_cast<bool>(f), "print_formula: null formula");
  switch (f->kind) {
    case FKind::AtomF: return (f->atom.neg ? "~" : "") + f->atom.sym;
    case FKind::Top: return "T";
    case FKind::Bot: return "F";
    case FKind::And:
    case FKind::Or: {
      auto side = [](const Formula& g) {
        std::string s = print_formula(g);
        if (g->kind == FKind::And || g->kind == FKind::Or) return "(" + s + ")";
        return s;
      };
      const char* op = f->kind == FKind::And ? " /\\ " : " \\/ ";
      return side(f->left) + op + side(f->right);
    }
  }
  throw ContractViolation("print_formula: bad kind");
}

namespace {

// Recursive-descent parser over a raw character cursor. Kept tiny; the
// grammar has no precedence to manage because nesting is parenthesized.
struct FormulaParser {
  const std::string& s;
  std::size_t i = 0;

  explicit FormulaParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("formula parse error at offset " + std::to_string(i) + ": " + msg);
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

  Formula term() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input");
    if (eat("(")) {
      Formula f = formula();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (eat("~")) {
      std::string name = ident();
      if (name == "T" || name == "F") fail("units cannot be negated directly");
      return mk_atom(name, true);
    }
    std::string name = ident();
    if (name == "T") return mk_top();
    if (name == "F") return mk_bot();
    return mk_atom(name, false);
  }

  Formula formula() {
    Formula l = term();
    skip_ws();
    if (eat("/\\")) return mk_and(l, term());
    if (eat("\\/")) return mk_or(l, term());
    return l;
  }
};

}  // namespace

Formula parse_formula(const std::string& text) {
  FormulaParser p(text);
  Formula f = p.formula();
  p.skip_ws();
  if (p.i != text.size()) p.fail("trailing input");
  return f;
}

}  // namespace exnet
