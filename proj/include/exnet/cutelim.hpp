#pragma once

// Cut reduction. A cut pairs a positive side, always an expansion typed by
// a negated atom or a conjunction, with a negative tree of the dual type.
// The applicable step is read off the positive side:
//
//   width > 1                  contraction: duplicate the kingdom of the
//                              negative tree, split the expansion
//   width 1, wire summand      atomic: splice the negative expansion into
//                              the dual wire's position
//   width 1, tensor summand    against (t1 \/ t2): two component cuts
//                              against (t \/ *) or (* \/ t): drop the
//                              starred component's empire, one residual cut
//
// Each step returns where every surviving sequent root came from, with a
// flag for witness roots that were closed into classical ones. The driver
// eliminates a topmost cut completely (the pair (cut rank, positive width)
// drops lexicographically at every recursive step) and iterates over cuts
// until none remain.

#include <optional>
#include <set>

#include "exnet/net.hpp"

namespace exnet {

enum class RedexKind { AndOr, Atomic, Contraction, Weakening };

const char* redex_name(RedexKind k);

struct RootTrace {
  int from = -1;        // index among the input's non-cut roots
  bool closed = false;  // a witness type became classical along the way
};

// Indexed by the result's non-cut root positions.
using ClosureMap = std::vector<RootTrace>;

ClosureMap identity_trace(std::size_t n);
ClosureMap compose_traces(const ClosureMap& later, const ClosureMap& earlier);

std::size_t non_cut_root_count(const TypedForest& f);

NodeId positive_side(const TypedForest& f, NodeId cut);
int positive_width(const TypedForest& f, NodeId cut);
RedexKind classify_cut(const TypedForest& f, NodeId cut);

struct Reduction {
  TypedForest net;
  ClosureMap roots;
  std::vector<NodeId> cuts;  // replacement cuts, in recursion order
  RedexKind kind = RedexKind::Atomic;
};

// One reduction step at the given cut root.
Reduction reduce_cut(const TypedForest& f, NodeId cut);

struct Replacement {
  TypedForest net;
  ClosureMap roots;
};

// Replaces the region (a subnet of the host) by the graft. root_map sends
// each non-cut root of the graft to a distinct region root of matching
// type; a classical graft root may also close a witness region root of the
// same atom. Region roots without a preimage become weak: a weak root's
// slot is deleted under an expansion, turns into * under a disjunction
// with a surviving branch, and disappears with its host root otherwise;
// weakness spreads upward through nodes all of whose children are weak.
// Graft cuts join the host as new cut roots.
Replacement replace_subnet(const TypedForest& host, const std::set<NodeId>& region,
                           const TypedForest& graft,
                           const std::map<NodeId, NodeId>& root_map);

struct ReductionStep {
  RedexKind kind = RedexKind::Atomic;
  NodeId cut = 0;  // the reduced cut root, in the net before the step
};

struct Elimination {
  TypedForest net;
  ClosureMap roots;
  std::vector<ReductionStep> trace;
};

// Fully eliminates one topmost cut (one whose kingdom contains no other
// cut); throws ContractViolation on a cut that is not topmost.
Elimination eliminate_cut(const TypedForest& f, NodeId cut);

// Eliminates all cuts, always picking a topmost one, and checks that the
// result's sequent is a subsequent of the input's closure.
Elimination eliminate_all(const TypedForest& f);

}  // namespace exnet
