#pragma once

// JSON documents exchanged by the command-line tool. Every top-level document
// carries "format": 1.

#include <json.hpp>

#include <string>
#include <vector>

#include "mixpack/decomposition.hpp"
#include "mixpack/errors.hpp"
#include "mixpack/mixed_graph.hpp"
#include "mixpack/orientation_solver.hpp"
#include "mixpack/pipeline.hpp"

namespace mixpack {

using json = nlohmann::ordered_json;

inline constexpr int kJsonFormat = 1;

inline json vertex_names(const MixedGraph& g, VertexSet x) {
  json out = json::array();
  for (auto v : x) out.push_back(g.name(static_cast<VertexIndex>(v)));
  return out;
}

inline VertexSet vertex_set_from_json(const MixedGraph& g, const json& names) {
  if (!names.is_array()) throw InputError("expected an array of vertex ids");
  VertexSet x;
  for (const auto& n : names) {
    if (!n.is_string()) throw InputError("vertex ids must be strings");
    x.insert(g.vertex(n.get<std::string>()));
  }
  return x;
}

inline json root_indices(RootSet r) {
  json out = json::array();
  for (auto i : r) out.push_back(i + 1);
  return out;
}

inline json packing_to_json(const MixedGraph& g, std::span<const VertexIndex> roots, const MixedPacking& mp) {
  json trees = json::array();
  for (const auto& t : mp.trees) {
    json arcs = json::array();
    for (const auto& a : t.arcs) {
      const bool native = a.origin == ArcOrigin::native_arc;
      arcs.push_back({{"id", native ? g.arcs()[a.index].id : g.edges()[a.index].id},
                      {"tail", g.name(a.tail)},
                      {"head", g.name(a.head)},
                      {"origin", native ? "arc" : "edge"}});
    }
    trees.push_back({{"index", t.root_index + 1}, {"root", g.name(roots[t.root_index])}, {"arcs", std::move(arcs)}});
  }
  return {{"format", kJsonFormat}, {"status", "feasible"}, {"trees", std::move(trees)}};
}

inline MixedPacking packing_from_json(const MixedGraph& g, const json& doc) {
  try {
    MixedPacking mp;
    for (const auto& t : doc.at("trees")) {
      MixedTree tree;
      tree.root_index = t.at("index").get<std::size_t>() - 1;
      for (const auto& a : t.at("arcs")) {
        TreeArc ta;
        const auto id = a.at("id").get<std::string>();
        const auto origin = a.at("origin").get<std::string>();
        if (origin == "arc") {
          auto idx = g.find_arc(id);
          if (!idx) throw InputError("unknown arc '" + id + "'");
          ta.origin = ArcOrigin::native_arc;
          ta.index = *idx;
        } else if (origin == "edge") {
          auto idx = g.find_edge(id);
          if (!idx) throw InputError("unknown edge '" + id + "'");
          ta.origin = ArcOrigin::oriented_edge;
          ta.index = *idx;
        } else {
          throw InputError("unknown origin '" + origin + "'");
        }
        ta.tail = g.vertex(a.at("tail").get<std::string>());
        ta.head = g.vertex(a.at("head").get<std::string>());
        tree.arcs.push_back(ta);
      }
      mp.trees.push_back(std::move(tree));
    }
    return mp;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed packing document: ") + e.what());
  }
}

inline json certificate_to_json(const MixedGraph& g, const BiSetFamilyCertificate& cert) {
  json bisets = json::array();
  for (const auto& x : cert.bisets) {
    bisets.push_back({{"outer", vertex_names(g, x.outer)}, {"inner", vertex_names(g, x.inner)}});
  }
  return {{"atom", cert.atom_index + 1}, {"bisets", std::move(bisets)}, {"lhs", cert.lhs}, {"rhs", cert.rhs}};
}

inline json infeasible_to_json(const MixedGraph& g, const BiSetFamilyCertificate& cert) {
  return {{"format", kJsonFormat}, {"status", "infeasible"}, {"certificate", certificate_to_json(g, cert)}};
}

/// Accepts a bare certificate object or a whole `solve` output.
inline BiSetFamilyCertificate certificate_from_json(const MixedGraph& g, const json& doc) {
  try {
    const json& c = doc.contains("certificate") ? doc.at("certificate") : doc;
    BiSetFamilyCertificate cert;
    const auto atom = c.at("atom").get<long long>();
    if (atom < 1) throw InputError("atom index must be positive");
    cert.atom_index = static_cast<std::size_t>(atom - 1);
    for (const auto& x : c.at("bisets")) {
      const VertexSet outer = vertex_set_from_json(g, x.at("outer"));
      const VertexSet inner = vertex_set_from_json(g, x.at("inner"));
      cert.bisets.push_back(BiSet{outer, inner});
    }
    cert.lhs = c.at("lhs").get<int>();
    cert.rhs = c.at("rhs").get<int>();
    return cert;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed certificate document: ") + e.what());
  }
}

inline json atoms_to_json(const MixedGraph& g, const AtomDecomposition& dec) {
  json atoms = json::array();
  for (std::size_t j = 0; j < dec.atom_count(); ++j) {
    atoms.push_back(
        {{"index", j + 1}, {"vertices", vertex_names(g, dec.atoms[j])}, {"roots", root_indices(dec.atom_roots[j])}});
  }
  return {{"format", kJsonFormat}, {"atoms", std::move(atoms)}};
}

inline json orientation_to_json(const AuxiliaryGraph& aux, const Orientation& o) {
  json edges = json::array();
  for (std::size_t e = 0; e < o.size(); ++e) {
    edges.push_back({{"id", aux.graph.edges()[e].id},
                     {"tail", aux.graph.name(o[e].tail)},
                     {"head", aux.graph.name(o[e].head)}});
  }
  return {{"format", kJsonFormat}, {"atom", aux.atom_index + 1}, {"orientation", std::move(edges)}};
}

inline json subpartition_certificate_to_json(const AuxiliaryGraph& aux, const SubpartitionCertificate& sc) {
  json parts = json::array();
  for (auto p : sc.parts.parts()) parts.push_back(vertex_names(aux.graph, p));
  return {{"format", kJsonFormat}, {"atom", sc.atom_index + 1}, {"parts", std::move(parts)}, {"deficit", sc.deficit}};
}

}  // namespace mixpack
