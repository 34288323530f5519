#pragma once

// Sequent calculus derivations for three systems sharing one rule alphabet:
//
//   LKstar      Ax, AxTop, Or0, Or, Or1, And, Mix, C
//               (C restricted to atoms and conjunctions; AxTop has no context)
//   LK          Ax, AxTop, Or, And, C, W  (C unrestricted, no Mix)
//   LKstarCut   LKstar plus Cut on a non-unit formula
//
// Rule shapes, premises above conclusion:
//
//   Ax     |- a, ~a                    AxTop  |- T
//   Or0    G, A   |- G, A \/ B         Or1    G, B |- G, A \/ B
//   Or     G, A, B |- G, A \/ B
//   And    G, A   and   D, B  |- G, D, A /\ B
//   Mix    G  and  D  |- G, D
//   C      G, A, A |- G, A             W      G |- G, B
//   Cut    G, A  and  D, ~A  |- G, D
//
// Nodes are immutable and shared. Each constructor produces the conclusion
// in canonical layout: context roots in premise order with active roots
// removed, principal root appended last. An optional output permutation on
// a node reorders its stored conclusion relative to that layout; it is the
// only exchange mechanism and exists so that admissibility transformations
// can present their results at requested positions.

#include <memory>
#include <optional>
#include <vector>

#include "exnet/sequent.hpp"

namespace exnet {

enum class Rule { Ax, AxTop, Or0, Or, Or1, And, Mix, C, W, Cut };
enum class System { LK, LKstar, LKstarCut };

const char* rule_name(Rule r);
const char* system_name(System s);
std::optional<System> system_from_name(const std::string& name);

struct DerivNode;
using Deriv = std::shared_ptr<const DerivNode>;

struct DerivNode {
  Rule rule;
  std::vector<Deriv> premises;
  Sequent conclusion;

  // Active root positions in the premises, by rule:
  //   Or: pos_a, pos_b in the single premise (A then B)
  //   Or0: pos_a (A); Or1: pos_b (B)
  //   And: pos_a in premise 0 (A), pos_b in premise 1 (B)
  //   C: pos_a, pos_b in the single premise (the two copies)
  //   Cut: pos_a in premise 0 (A), pos_b in premise 1 (~A)
  int pos_a = -1;
  int pos_b = -1;

  Atom ax_atom;          // Ax: conclusion is [atom, dual]
  Formula side_formula;  // Or0/Or1: the weakened disjunct; W: the new root

  // Conclusion reordering: conclusion[k] = canonical[out_perm[k]].
  // Empty means identity.
  std::vector<int> out_perm;
};

// Constructors. Each checks the shape conditions of its rule (but not
// system membership) and throws ContractViolation on misuse.
Deriv mk_ax(const Atom& a);
Deriv mk_axtop();
Deriv mk_or0(Deriv prem, int pos_a, Formula b);
Deriv mk_or1(Deriv prem, int pos_b, Formula a);
Deriv mk_or(Deriv prem, int pos_a, int pos_b);
Deriv mk_and(Deriv left, int pos_a, Deriv right, int pos_b);
Deriv mk_mix(Deriv left, Deriv right);
Deriv mk_c(Deriv prem, int pos_a, int pos_b);
Deriv mk_w(Deriv prem, Formula b);
Deriv mk_cut(Deriv left, int pos_a, Deriv right, int pos_b);

// d with its conclusion reordered: new conclusion[k] = old conclusion[order[k]].
Deriv permute_conclusion(Deriv d, const std::vector<int>& order);

// Verifies rule shapes, canonical layout (including stored permutations)
// and membership of every rule in the given system. On failure returns
// false and, if why is non-null, stores a description.
bool check_derivation(const Deriv& d, System system, std::string* why = nullptr);

std::size_t derivation_size(const Deriv& d);

// JSON serialization. Wrapper object:
//   {"format": "exnet/1", "kind": "derivation", "system": ..., "derivation": ...}
// Loading rebuilds through the constructors, so a loaded derivation is
// structurally identical to the saved one.
std::string derivation_to_json(const Deriv& d, System system);
std::pair<Deriv, System> derivation_from_json(const std::string& text);

}  // namespace exnet
