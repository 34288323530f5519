#pragma once

// Sequentialization: reading an annotated derivation back off a typed
// forest. The procedure peels the forest from the roots:
//
//   1  a single 1 : T root concludes with the top axiom
//   2  a disconnected correctness graph splits with Mix
//   3  a disjunction root peels into Or / Or0 / Or1
//   4  an expansion root with several summands splits with a contraction
//   5  two one-wire expansions over a dual pair conclude with Ax
//   6  otherwise some trivial conjunction expansion or cut root must
//      split the graph in two when removed; the scan tries candidates in
//      ascending node id order
//
// Success certifies correctness: a forest sequentializes exactly when all
// of its switching graphs are acyclic.

#include <optional>

#include "exnet/annotate.hpp"

namespace exnet {

std::optional<AnnDeriv> try_sequentialize(const TypedForest& f, std::string* why = nullptr);

// As above but throws ContractViolation with the reason on failure.
AnnDeriv sequentialize(const TypedForest& f);

// First root in ascending node id order whose removal (a cut, or a
// trivial conjunction expansion together with its tensor) splits the
// connected correctness graph into the components of its two subterms.
std::optional<NodeId> find_splitting_tensor(const TypedForest& f);

// Polynomial correctness check: wraps bare witness and tensor roots in
// trivial expansions and attempts to sequentialize the result.
bool ac_correct_poly(const TypedForest& f);

}  // namespace exnet
