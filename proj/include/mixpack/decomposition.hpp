#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixpack/errors.hpp"
#include "mixpack/index_set.hpp"
#include "mixpack/mixed_graph.hpp"

namespace mixpack {

/// Nested pair (outer, inner) with inner ⊆ outer.
struct BiSet {
  VertexSet outer;
  VertexSet inner;

  static BiSet make(VertexSet outer, VertexSet inner) {
    if (!inner.subset_of(outer)) throw std::invalid_argument("bi-set inner set is not contained in its outer set");
    return BiSet{outer, inner};
  }
  static BiSet plain(VertexSet x) { return BiSet{x, x}; }

  /// Outer part not in the inner set.
  VertexSet rim() const { return outer - inner; }

  BiSet join(const BiSet& o) const { return BiSet{outer | o.outer, inner | o.inner}; }
  BiSet meet(const BiSet& o) const { return BiSet{outer & o.outer, inner & o.inner}; }

  bool operator==(const BiSet&) const = default;
};

/// Reachability sets U_i, atoms and their root-index sets.
///
/// Atoms are ordered by their root-index sets read as ascending index lists and
/// compared lexicographically, so the numbering depends only on the roots and
/// not on vertex naming.
struct AtomDecomposition {
  std::vector<VertexSet> reach;
  std::vector<VertexSet> atoms;
  std::vector<RootSet> atom_roots;
  /// Atom index per vertex; absent for vertices no root reaches.
  std::vector<std::optional<std::size_t>> atom_of;

  std::size_t root_count() const { return reach.size(); }
  std::size_t atom_count() const { return atoms.size(); }

  /// {i : v ∈ U_i}
  RootSet membership(VertexIndex v) const {
    RootSet r;
    for (std::size_t i = 0; i < reach.size(); ++i) {
      if (reach[i].contains(v)) r.insert(i);
    }
    return r;
  }

  VertexSet covered() const {
    VertexSet all;
    for (auto u : reach) all |= u;
    return all;
  }
};

namespace detail {

inline bool lex_less(RootSet a, RootSet b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.end() && ib != b.end();
}

inline AtomDecomposition atoms_from_reach(std::size_t vertex_count, std::vector<VertexSet> reach) {
  AtomDecomposition dec;
  dec.reach = std::move(reach);
  dec.atom_of.assign(vertex_count, std::nullopt);

  std::vector<std::pair<RootSet, VertexSet>> classes;
  for (VertexIndex v = 0; v < vertex_count; ++v) {
    const RootSet m = dec.membership(v);
    if (m.empty()) continue;
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return c.first == m; });
    if (it == classes.end()) {
      classes.emplace_back(m, VertexSet::single(v));
    } else {
      it->second.insert(v);
    }
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  for (std::size_t j = 0; j < classes.size(); ++j) {
    dec.atom_roots.push_back(classes[j].first);
    dec.atoms.push_back(classes[j].second);
    for (auto v : classes[j].second) dec.atom_of[v] = j;
  }
  return dec;
}

}  // namespace detail

inline AtomDecomposition compute_atoms(const MixedGraph& g, std::span<const VertexIndex> roots) {
  std::vector<VertexSet> reach;
  reach.reserve(roots.size());
  for (auto r : roots) {
    if (r >= g.vertex_count()) throw InputError("unknown root vertex index " + std::to_string(r));
    reach.push_back(mixed_reachable_set(g, r));
  }
  return detail::atoms_from_reach(g.vertex_count(), std::move(reach));
}

inline AtomDecomposition compute_atoms(const DirectedView& d, std::span<const VertexIndex> roots) {
  std::vector<VertexSet> reach;
  reach.reserve(roots.size());
  for (auto r : roots) reach.push_back(reachable_set(d, r));
  return detail::atoms_from_reach(d.vertex_count(), std::move(reach));
}

/// rho of a bi-set: arcs with tail outside the outer set and head in the inner set.
inline int biset_in_degree(const DirectedView& d, const BiSet& x) {
  require_subset(x.outer, d.vertices());
  int count = 0;
  for (const auto& a : d.arcs()) {
    if (x.inner.contains(a.head) && !x.outer.contains(a.tail)) ++count;
  }
  return count;
}

/// Same count over the native arcs of a mixed graph.
inline int biset_in_degree(const MixedGraph& g, const BiSet& x) {
  int count = 0;
  for (const auto& a : g.arcs()) {
    if (x.inner.contains(a.head) && !x.outer.contains(a.tail)) ++count;
  }
  return count;
}

/// Number of root indices i with inner ⊆ U_i, r_i ∉ inner and rim ∩ U_i = ∅.
/// Repeated root vertices are counted once per index.
inline int p_value(const AtomDecomposition& dec, std::span<const VertexIndex> roots, const BiSet& x) {
  if (x.inner.empty()) throw std::invalid_argument("p is undefined on a bi-set with empty inner set");
  const VertexSet rim = x.rim();
  int count = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const VertexSet u = dec.reach.at(i);
    if (x.inner.subset_of(u) && !x.inner.contains(roots[i]) && !rim.intersects(u)) ++count;
  }
  return count;
}

/// The atom j with x ∈ F_j, if any.
inline std::optional<std::size_t> in_family_F(const AtomDecomposition& dec, const BiSet& x) {
  if (x.inner.empty() || !x.inner.subset_of(x.outer)) return std::nullopt;
  for (std::size_t j = 0; j < dec.atoms.size(); ++j) {
    if (x.inner.subset_of(dec.atoms[j]) && !x.rim().intersects(dec.atoms[j])) return j;
  }
  return std::nullopt;
}

/// Where a terminal t_a of an auxiliary graph comes from.
struct TerminalOrigin {
  std::size_t arc = 0;
  VertexIndex tail = 0;
};

/// F_j: the atom's induced mixed graph plus one terminal t_a per arc a entering
/// the atom, with the single arc t_a -> head(a).
///
/// Local vertices [0, atom_size) are the atom members in ascending original
/// index; the terminals follow in entering-arc order and are named "t:<arc-id>".
struct AuxiliaryGraph {
  std::size_t atom_index = 0;
  MixedGraph graph;
  std::size_t atom_size = 0;
  std::vector<VertexIndex> to_original;
  std::vector<TerminalOrigin> terminals;
  /// Local edge -> original edge index.
  std::vector<std::size_t> edge_origin;
  /// Local arc -> original arc index (terminal arcs map to the entering arc).
  std::vector<std::size_t> arc_origin;

  VertexSet atom_part() const { return VertexSet::prefix(atom_size); }
  VertexSet terminal_part() const { return graph.vertices() - atom_part(); }
  bool is_terminal(VertexIndex v) const { return v >= atom_size && v < graph.vertex_count(); }
  const TerminalOrigin& terminal(VertexIndex v) const { return terminals.at(v - atom_size); }
  /// Head of the terminal's only arc, as a local vertex.
  VertexIndex terminal_head(VertexIndex v) const { return terminal_heads.at(v - atom_size); }

  std::vector<VertexIndex> terminal_heads;
};

inline AuxiliaryGraph build_auxiliary(const MixedGraph& g, const AtomDecomposition& dec, std::size_t j) {
  if (j >= dec.atoms.size()) throw std::out_of_range("atom index " + std::to_string(j) + " out of range");
  const VertexSet atom = dec.atoms[j];

  AuxiliaryGraph aux;
  aux.atom_index = j;
  aux.atom_size = atom.size();
  std::vector<VertexIndex> local(g.vertex_count(), 0);
  for (auto v : atom) {
    local[v] = aux.graph.add_vertex(g.name(static_cast<VertexIndex>(v)));
    aux.to_original.push_back(static_cast<VertexIndex>(v));
  }

  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const bool in_u = atom.contains(e.u);
    const bool in_v = atom.contains(e.v);
    if (in_u != in_v) {
      throw InvariantError("edge '" + e.id + "' joins atom " + std::to_string(j + 1) + " to a vertex outside it");
    }
    if (in_u && !e.is_loop()) {
      aux.graph.add_edge(local[e.u], local[e.v], e.id);
      aux.edge_origin.push_back(i);
    }
  }

  const auto arcs = g.arcs();
  std::size_t entering = 0;
  for (const auto& a : arcs) {
    if (atom.contains(a.head) && !atom.contains(a.tail)) ++entering;
  }
  if (aux.atom_size + entering > VertexSet::kCapacity) {
    throw CapacityError("auxiliary graph vertex count", aux.atom_size + entering, VertexSet::kCapacity);
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (!atom.contains(a.head) || a.is_loop()) continue;
    if (atom.contains(a.tail)) {
      aux.graph.add_arc(local[a.tail], local[a.head], a.id);
    } else {
      const auto t = aux.graph.add_vertex("t:" + a.id);
      aux.terminals.push_back({i, a.tail});
      aux.terminal_heads.push_back(local[a.head]);
      aux.graph.add_arc(t, local[a.head], a.id);
    }
    aux.arc_origin.push_back(i);
  }
  return aux;
}

inline void require_local(const AuxiliaryGraph& aux, VertexSet x) {
  if (!x.subset_of(aux.graph.vertices())) throw std::invalid_argument("set is not contained in V_j");
}

/// Every terminal in x has its head in x.
inline bool is_consistent(const AuxiliaryGraph& aux, VertexSet x) {
  require_local(aux, x);
  for (auto v : x - aux.atom_part()) {
    if (!x.contains(aux.terminal_head(static_cast<VertexIndex>(v)))) return false;
  }
  return true;
}

/// Membership in H_j: consistent and meeting the atom.
inline bool in_Hj(const AuxiliaryGraph& aux, VertexSet x) {
  return is_consistent(aux, x) && x.intersects(aux.atom_part());
}

inline void require_Hj(const AuxiliaryGraph& aux, VertexSet x) {
  if (!in_Hj(aux, x)) throw std::invalid_argument("set " + aux.graph.format(x) + " is not in H_j");
}

/// B(X) over the original vertex universe: inner = X ∩ atom, outer adds the
/// original tail of every terminal in X.
inline BiSet lift_biset(const AuxiliaryGraph& aux, VertexSet x) {
  require_Hj(aux, x);
  VertexSet inner;
  VertexSet outer;
  for (auto v : x) {
    if (v < aux.atom_size) {
      inner.insert(aux.to_original[v]);
    } else {
      outer.insert(aux.terminal(static_cast<VertexIndex>(v)).tail);
    }
  }
  return BiSet{outer | inner, inner};
}

inline int p_j_value(const AuxiliaryGraph& aux, const AtomDecomposition& dec, std::span<const VertexIndex> roots,
                     VertexSet x) {
  return p_value(dec, roots, lift_biset(aux, x));
}

/// The auxiliary graph's arcs as a digraph (E_j left out).
inline DirectedView auxiliary_arcs(const AuxiliaryGraph& aux) {
  std::vector<DirectedArc> arcs;
  const auto native = aux.graph.arcs();
  for (std::size_t i = 0; i < native.size(); ++i) {
    arcs.push_back({native[i].id, native[i].tail, native[i].head, ArcOrigin::native_arc, i});
  }
  return DirectedView(aux.graph.vertex_count(), std::move(arcs));
}

}  // namespace mixpack
