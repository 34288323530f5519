#pragma once

// Sequents are ordered forests of formula occurrences. A position names an
// occurrence by root index plus a binary path (0 = left, 1 = right) into
// that root's formula tree. The order of roots matters for presentation and
// for the canonical layout of derivations; logical comparisons
// (is_subsequent, multiset equality) ignore it.

#include <optional>
#include <vector>

#include "exnet/formula.hpp"

namespace exnet {

struct Sequent {
  std::vector<Formula> roots;

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
};

// An occurrence inside a sequent: roots[root] followed along path.
struct SeqPos {
  int root = 0;
  std::vector<int> path;

  bool operator==(const SeqPos& o) const { return root == o.root && path == o.path; }
  bool operator<(const SeqPos& o) const {
    if (root != o.root) return root < o.root;
    return path < o.path;
  }
};

Formula formula_at(const Sequent& s, const SeqPos& pos);

std::string print_sequent(const Sequent& s);
Sequent parse_sequent(const std::string& text);

bool sequent_equal(const Sequent& a, const Sequent& b);

// Multiset equality of root formulas.
bool sequent_equal_multiset(const Sequent& a, const Sequent& b);

// True when a's roots form a sub-multiset of b's roots. A subsequent is a
// leafward-closed subforest whose roots are roots of the host, so at the
// sequent level the relation is exactly root multiset inclusion.
bool is_subsequent(const Sequent& a, const Sequent& b);

// True when the occurrence set is closed under taking subformulas.
bool is_subforest_closed(const Sequent& s, const std::vector<SeqPos>& occurrences);

// s with the roots at the given positions removed, order preserved.
Sequent remove_roots(const Sequent& s, std::vector<int> positions);

}  // namespace exnet
