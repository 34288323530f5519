#pragma once

// The annotated sequent calculus: derivations whose sequents are typed
// forests. Rules mirror the plain calculus, with contraction split by the
// shape of the contracted type (conjunction, positive atom, negative atom).
//
// All forests of one derivation share a single node id space; each rule's
// conclusion extends its premise forests by the freshly created nodes and
// never renames existing ones. The checker exploits this: it recovers the
// principal nodes of every step by set difference, so no rule parameters
// are stored.

#include <memory>

#include "exnet/derivation.hpp"
#include "exnet/net.hpp"

namespace exnet {

enum class ARule { Ax, AxTop, Or, Or0, Or1, And, CAnd, CPos, CNeg, Mix, Cut };

const char* arule_name(ARule r);

struct AnnDerivNode;
using AnnDeriv = std::shared_ptr<const AnnDerivNode>;

struct AnnDerivNode {
  ARule rule;
  std::vector<AnnDeriv> premises;
  TypedForest conclusion;
};

// Verifies every step against the annotated rules and type-checks every
// sequent. Cut steps are rejected unless allow_cut is set.
bool check_annotated(const AnnDeriv& d, bool allow_cut, std::string* why = nullptr);

std::size_t annotated_size(const AnnDeriv& d);

// Builds the annotated form of a plain derivation, inventing fresh wire
// names at the axioms. The conclusion's classical roots appear in the same
// order as the roots of d's conclusion, followed by any cut roots.
AnnDeriv annotate(const Deriv& d, System system);

// The net of a derivation: the conclusion forest of its annotated form.
TypedForest desequentialize(const Deriv& d, System system);

// Forgets the annotations, returning the plain derivation together with
// the system it lives in (LKstarCut when any cut occurs, else LKstar).
std::pair<Deriv, System> strip_annotations(const AnnDeriv& d);

}  // namespace exnet
