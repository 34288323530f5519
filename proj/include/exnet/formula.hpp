#pragma once

// Formulas of classical propositional logic in negation normal form:
// atoms a, negated atoms ~a, units T (truth) and F (falsity), and the
// connectives /\ and \/. Negation lives on atoms only; dual() extends it
// to all formulas by De Morgan.
//
// Concrete syntax accepted by parse_formula:
//   atom      ::= identifier            e.g.  a, p, q1
//   natom     ::= '~' identifier
//   unit      ::= 'T' | 'F'
//   formula   ::= term | term '/\' term | term '\/' term
//   term      ::= atom | natom | unit | '(' formula ')'
// Nested binary connectives need explicit parentheses; only the outermost
// binary connective may appear bare. 'T' and 'F' are reserved and cannot be
// used as atom names.

#include <memory>
#include <string>

#include "exnet/base.hpp"

namespace exnet {

// A signed propositional variable. neg marks the overlined form.
struct Atom {
  std::string sym;
  bool neg = false;

  Atom() = default;
  Atom(std::string s, bool n) : sym(std::move(s)), neg(n) {}

  Atom dual() const { return Atom(sym, !neg); }

  bool operator==(const Atom& o) const { return sym == o.sym && neg == o.neg; }
  bool operator!=(const Atom& o) const { return !(*this == o); }
  bool operator<(const Atom& o) const {
    if (sym != o.sym) return sym < o.sym;
    return neg < o.neg;
  }
};

enum class FKind { AtomF, Top, Bot, And, Or };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind;
  Atom atom;        // AtomF only
  Formula left;     // And / Or
  Formula right;    // And / Or
};

Formula mk_atom(const Atom& a);
Formula mk_atom(const std::string& sym, bool neg);
Formula mk_top();
Formula mk_bot();
Formula mk_and(Formula l, Formula r);
Formula mk_or(Formula l, Formula r);

bool formula_equal(const Formula& a, const Formula& b);
std::size_t formula_hash(const Formula& f);

// Units and atoms have rank 1; a connective has rank 1 + max of its sides.
int rank(const Formula& f);

// De Morgan dual: ~ swaps T/F and /\ \/, and flips atom signs.
Formula dual(const Formula& f);

bool is_unit(const Formula& f);

std::string print_formula(const Formula& f);
Formula parse_formula(const std::string& text);

}  // namespace exnet
