#include "exnet/dot.hpp"

#include <map>
#include <sstream>

namespace exnet {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string label_of(const TypedForest& f, NodeId id) {
  const NetNode& n = f.node(id);
  switch (n.kind) {
    case NodeKind::One: return "1";
    case NodeKind::Star: return "*";
    case NodeKind::Wire: return (n.wire.neg ? "~" : "") + n.wire.sym;
    case NodeKind::Expansion: return "+";
    case NodeKind::OrNode: return "\\/";
    case NodeKind::Tensor: return "/\\";
    case NodeKind::CutNode: return "cut";
  }
  return "?";
}

}  // namespace

std::string to_dot(const TypedForest& f, const std::set<NodeId>& highlight) {
  std::ostringstream out;
  out << "digraph net {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=plaintext, fontsize=11];\n";
  for (const auto& [id, n] : f.nodes) {
    std::string label = label_of(f, id);
    auto ty = f.types.find(id);
    if (ty != f.types.end()) label += " : " + print_type(ty->second);
    out << "  n" << id << " [label=\"" << escape(label) << "\"";
    if (highlight.count(id)) out << ", shape=box, style=filled, fillcolor=lightgrey";
    if (n.kind == NodeKind::CutNode) out << ", shape=box";
    out << "];\n";
  }
  for (const auto& [id, n] : f.nodes)
    for (NodeId k : n.kids) out << "  n" << k << " -> n" << id << ";\n";
  std::map<std::string, NodeId> seen;
  for (const auto& [id, n] : f.nodes) {
    if (n.kind != NodeKind::Wire) continue;
    auto it = seen.find(n.wire.sym);
    if (it == seen.end()) {
      seen.emplace(n.wire.sym, id);
    } else {
      out << "  n" << it->second << " -> n" << id
          << " [dir=none, style=dashed, constraint=false];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace exnet
