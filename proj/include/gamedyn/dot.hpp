#pragma once

#include <ostream>

#include "gamedyn/analysis.hpp"

namespace gamedyn {

/// Graphviz export. Node labels are decoded states with 1-based actions;
/// absorbing equilibrium repeats are drawn with a double border.
inline void write_dot(std::ostream& os, const TransitionGraph& g,
                      const std::string& name = "dynamics") {
  std::vector<char> marked(static_cast<std::size_t>(g.node_count), 0);
  {
    std::vector<char> absorbing(static_cast<std::size_t>(g.node_count), 0);
    for (std::int64_t v : g.absorbing) absorbing[static_cast<std::size_t>(v)] = 1;
    for (std::int64_t v : g.pne_repeats)
      if (absorbing[static_cast<std::size_t>(v)])
        marked[static_cast<std::size_t>(v)] = 1;
  }

  os << "digraph \"" << name << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=ellipse];\n";
  for (std::int64_t v = 0; v < g.node_count; ++v) {
    os << "  n" << v << " [label=\""
       << format_state(decode_state(g.space, g.recall, v)) << "\"";
    if (marked[static_cast<std::size_t>(v)]) os << ", peripheries=2";
    os << "];\n";
  }
  for (std::int64_t v = 0; v < g.node_count; ++v) {
    const auto& succ = g.successors[static_cast<std::size_t>(v)];
    const auto& probs = g.edge_probs[static_cast<std::size_t>(v)];
    for (std::size_t e = 0; e < succ.size(); ++e) {
      os << "  n" << v << " -> n" << succ[e];
      if (!probs[e].is_one()) os << " [label=\"" << probs[e].str() << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
}

}  // namespace gamedyn
