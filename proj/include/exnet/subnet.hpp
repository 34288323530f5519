#pragma once

// Substructures and distinguished subnets of a typed forest.
//
// A substructure is a nonempty node set closed downward under children,
// closed under wire pairing, and containing the disjunction above any of
// its stars. Its roots are the members without a parent in the set. A
// substructure is a subnet when no switching path of the host leaves one
// of its roots through that root's parent, stays outside the set, and
// re-enters another of its roots from that root's parent.
//
// The kingdom of a node is the smallest subnet having it as a root; the
// contiguous empire is the largest subnet all of whose members lie on a
// switching path from the node inside the set. Both are well defined on
// hosts whose switching graphs are all acyclic, and the functions here
// assume such a host (they inherit the path engine's enumeration cap
// otherwise).

#include <optional>
#include <set>

#include "exnet/net.hpp"

namespace exnet {

// Least superset of seed closed under children, wire partners and the
// star-to-parent rule.
std::set<NodeId> str_closure(const TypedForest& f, const std::set<NodeId>& seed);

bool is_substructure(const TypedForest& f, const std::set<NodeId>& g,
                     std::string* why = nullptr);

// Members of g without a parent in g, ascending by id.
std::vector<NodeId> substructure_roots(const TypedForest& f, const std::set<NodeId>& g);

// A witness path for the subnet condition's failure, if any: it runs from
// one root of g to another, leaves and enters through their parents, and
// avoids g in between.
std::optional<std::vector<NodeId>> subnet_violation(const TypedForest& f,
                                                    const std::set<NodeId>& g);

bool is_subnet(const TypedForest& f, const std::set<NodeId>& g);

// Smallest subnet with x among its roots. For a cut root this is the
// union of the children's kingdoms plus the cut node itself.
std::set<NodeId> kingdom(const TypedForest& f, NodeId x);

// x's membership in the kingdom of y: the kingdom ordering.
bool kingdom_leq(const TypedForest& f, NodeId x, NodeId y);

std::set<NodeId> contiguous_empire(const TypedForest& f, NodeId x);

// Whether every member of the region lies on a switching path from x that
// stays inside the region.
bool contiguous_within(const TypedForest& f, NodeId x, const std::set<NodeId>& region);

struct EmpireNote {
  std::set<NodeId> nodes;  // union of all subnets rooted at x
  bool subnet = false;     // whether that union is itself a subnet
};

// Exhaustive enumeration; refuses hosts with more than 16 nodes besides x.
EmpireNote empire_note(const TypedForest& f, NodeId x);

}  // namespace exnet
