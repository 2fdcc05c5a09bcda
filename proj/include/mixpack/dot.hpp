#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "mixpack/mixed_graph.hpp"
#include "mixpack/pipeline.hpp"

namespace mixpack {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Graphviz description of g. Roots are filled; with a packing, every edge and
/// arc used by tree i is drawn in the tree's colour and in its direction of use.
inline std::string export_dot(const MixedGraph& g, std::span<const VertexIndex> roots,
                              const MixedPacking* packing = nullptr) {
  static constexpr std::array<const char*, 8> kPalette = {"red",    "blue",  "darkgreen", "orange",
                                                          "purple", "brown", "magenta",   "cyan"};
  std::vector<int> edge_tree(g.edges().size(), -1);
  std::vector<int> arc_tree(g.arcs().size(), -1);
  std::vector<DirectedPair> edge_dir(g.edges().size());
  if (packing) {
    for (const auto& t : packing->trees) {
      for (const auto& a : t.arcs) {
        if (a.origin == ArcOrigin::native_arc) {
          arc_tree.at(a.index) = static_cast<int>(t.root_index);
        } else {
          edge_tree.at(a.index) = static_cast<int>(t.root_index);
          edge_dir.at(a.index) = {a.tail, a.head};
        }
      }
    }
  }

  std::ostringstream out;
  out << "digraph mixed {\n";
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::string labels;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (roots[i] == v) labels += (labels.empty() ? "" : ",") + std::to_string(i + 1);
    }
    out << "  " << detail::dot_quote(g.name(v));
    if (!labels.empty()) {
      out << " [style=filled, fillcolor=lightgray, xlabel=" << detail::dot_quote("root " + labels) << "]";
    }
    out << ";\n";
  }
  auto colour = [&](int tree) { return kPalette[static_cast<std::size_t>(tree) % kPalette.size()]; };
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& edge = g.edges()[e];
    if (edge_tree[e] >= 0) {
      out << "  " << detail::dot_quote(g.name(edge_dir[e].tail)) << " -> " << detail::dot_quote(g.name(edge_dir[e].head))
          << " [label=" << detail::dot_quote(edge.id) << ", color=" << colour(edge_tree[e])
          << ", penwidth=2, arrowhead=open];\n";
    } else {
      out << "  " << detail::dot_quote(g.name(edge.u)) << " -> " << detail::dot_quote(g.name(edge.v))
          << " [label=" << detail::dot_quote(edge.id) << ", dir=none];\n";
    }
  }
  for (std::size_t a = 0; a < g.arcs().size(); ++a) {
    const auto& arc = g.arcs()[a];
    out << "  " << detail::dot_quote(g.name(arc.tail)) << " -> " << detail::dot_quote(g.name(arc.head))
        << " [label=" << detail::dot_quote(arc.id);
    if (arc_tree[a] >= 0) out << ", color=" << colour(arc_tree[a]) << ", penwidth=2";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mixpack
