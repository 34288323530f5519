#pragma once

// The correctness graph of a typed forest and everything that walks it.
//
// Vertices are all forest nodes, stars included. Edges are the tree edges
// between each node and its children plus one edge per dual wire pair. A
// node is switched when it is an expansion (however small) or a disjunction
// with two real children; a switching picks one child edge of every
// switched node and deletes the rest. Cuts and tensors are never switched.
//
// A switching path is a simple path all of whose edges survive some
// switching together, equivalently one that never uses two child edges of
// the same switched vertex. The net is AC-correct when every switching
// graph is acyclic.

#include <cstdint>
#include <optional>

#include "exnet/net.hpp"

namespace exnet {

struct NetGraph {
  std::vector<NodeId> verts;
  std::map<NodeId, std::vector<NodeId>> kids;
  std::map<NodeId, NodeId> parent;
  std::map<NodeId, NodeId> wire_partner;
  std::set<NodeId> switched;

  bool is_kid_of(NodeId child, NodeId node) const;
  std::vector<NodeId> neighbors(NodeId v) const;
};

NetGraph graph_of(const TypedForest& f);

// A choice of one child per switched node.
struct SwitchingAssignment {
  std::map<NodeId, NodeId> choice;
};

// The number of switching graphs; caps at limit (returns limit + 1 beyond).
std::uint64_t switching_count(const NetGraph& g, std::uint64_t limit);

std::vector<SwitchingAssignment> enumerate_switchings(const NetGraph& g,
                                                      std::uint64_t limit);

bool switching_acyclic(const NetGraph& g, const SwitchingAssignment& sigma);

// Checks every switching graph for acyclicity. Throws ContractViolation
// with a refusal message when there are more than 1 << 16 switchings.
bool ac_correct_bruteforce(const TypedForest& f);

struct PathQuery {
  std::optional<NodeId> first_via;  // required second vertex of the path
  std::optional<NodeId> last_via;   // required second-to-last vertex
  std::set<NodeId> forbidden;       // excluded as interior vertices
};

// Searches for a switching path between two distinct vertices, subject to
// the query constraints (endpoints are exempt from the forbidden set).
// Exact on hosts whose switching graphs are all acyclic; on other hosts it
// may fall back to switching enumeration and throws ContractViolation if
// that would exceed 1 << 16 switchings.
std::optional<std::vector<NodeId>> switching_path(const NetGraph& g, NodeId from,
                                                  NodeId to,
                                                  const PathQuery& q = {});

bool switching_path_exists(const NetGraph& g, NodeId from, NodeId to,
                           const PathQuery& q = {});

// True when the vertex sequence is a switching path satisfying the query.
bool check_switching_path(const NetGraph& g, const std::vector<NodeId>& path,
                          NodeId from, NodeId to, const PathQuery& q);

}  // namespace exnet
