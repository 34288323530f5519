#pragma once

#include <set>
#include <string>

#include "exnet/net.hpp"

namespace exnet {

// Renders a forest in Graphviz dot syntax. Tree edges are solid, the
// edge between a wire and its dual is dashed. Nodes listed in
// highlight are drawn filled, which is how the subnet tooling marks a
// region of interest.
std::string to_dot(const TypedForest& f, const std::set<NodeId>& highlight = {});

}  // namespace exnet
