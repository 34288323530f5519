#pragma once

// Expansion nets as typed forests.
//
// Node kinds and where they may appear:
//   One        the tree 1 of type T; child of \/ or ><, or a root
//   Wire       a wire variable x or ~x; expansion summand or witness root
//   Star       the placeholder * of a default weakening; child of \/ only
//   Expansion  formal sum {w1 + ... + wn}; summands all wires or all tensors
//   OrNode     (t \/ s), (t \/ *), (* \/ t)
//   Tensor     (t >< s); expansion summand, a root, never a bare \/ child
//   CutNode    t || s; always a root, both children carry recorded types
//
// Every wire variable occurs at most once with each sign, and x occurs
// exactly when ~x does. A wire's witness type has the polarity of the wire:
// x : [a], ~x : [~a].
//
// Concrete syntax, roots separated by commas:
//   root  ::= term ':' type | term ':' type '||' term ':' type
//   term  ::= '1' | wire | '{' summand ('+' summand)* '}'
//           | '(' term '><' term ')' | '(' orbody ')'
//   orbody ::= term '\/' term | term '\/' '*' | '*' '\/' term
//   summand ::= wire | '(' term '><' term ')'
//   wire  ::= identifier | '~' identifier
//   type  ::= formula | '[' atom ']' | '(' formula '><' formula ')'
// Cut roots require both side types; they are not inferable when a side
// contains default weakenings.

#include <map>
#include <set>
#include <vector>

#include "exnet/sequent.hpp"

namespace exnet {

enum class NodeKind { One, Wire, Star, Expansion, OrNode, Tensor, CutNode };

const char* kind_name(NodeKind k);

struct NetNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::One;
  std::vector<NodeId> kids;
  Atom wire;  // Wire nodes only: neg marks the barred form
};

enum class TypeKind { ClassicalT, WitnessT, TensorT };

struct NetType {
  TypeKind kind = TypeKind::ClassicalT;
  Formula a;  // ClassicalT: the formula; WitnessT: the atom; TensorT: left
  Formula b;  // TensorT: right
};

NetType classical_type(Formula f);
NetType witness_type(Formula atom);
NetType tensor_type(Formula a, Formula b);
bool type_equal(const NetType& x, const NetType& y);
std::string print_type(const NetType& t);

struct TypedForest {
  std::map<NodeId, NetNode> nodes;
  std::vector<NodeId> roots;
  // Types of non-cut roots and of both children of every cut root.
  std::map<NodeId, NetType> types;
  NodeId next_id = 0;

  NodeId add(NodeKind kind, std::vector<NodeId> kids = {}, Atom wire = {});
  bool has(NodeId id) const { return nodes.count(id) != 0; }
  const NetNode& node(NodeId id) const;
  NetNode& node(NodeId id);
};

// Parent of each non-root node.
std::map<NodeId, NodeId> parents_of(const TypedForest& f);

// Preorder listing of the subtree under root (root included).
std::vector<NodeId> subtree_of(const TypedForest& f, NodeId root);

// Structural well-formedness: forest shape, kind placement, wire pairing.
bool validate_forest(const TypedForest& f, std::string* why = nullptr);

// validate_forest plus the typing discipline, including cut side duality
// and global wire type consistency.
bool type_check(const TypedForest& f, std::string* why = nullptr);

// Types of the non-cut roots, in root order.
std::vector<NetType> net_type(const TypedForest& f);

// The sequent of underlying formulas: classical roots as-is, witness roots
// as their atom. Fails on tensor-typed roots.
Sequent classical_sequent(const TypedForest& f);

// Hash of a subtree's shape, ignoring wire names (but not polarities).
std::size_t structural_hash(const TypedForest& f, NodeId n);

// Root-order-significant equality up to a polarity-preserving renaming of
// wire variables; expansion summands are compared as multisets and cut
// children as unordered pairs.
bool alpha_equal(const TypedForest& a, const TypedForest& b);

// Deterministic presentation: expansion summands sorted by structural hash
// then printed form, cut children oriented positive side first.
void canonicalize(TypedForest& f);

std::string print_term(const TypedForest& f, NodeId n);
std::string print_net(const TypedForest& f);
TypedForest parse_net(const std::string& text);

}  // namespace exnet
