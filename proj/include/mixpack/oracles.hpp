#pragma once

// Exhaustive checkers used as independent references by the test suites.
// Everything here is exponential and bounded by Bounds.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mixpack/bounds.hpp"
#include "mixpack/decomposition.hpp"
#include "mixpack/digraph_packing.hpp"
#include "mixpack/mixed_graph.hpp"
#include "mixpack/orientation_solver.hpp"

namespace mixpack {

/// Bi-set family scans range over 2^|V| outer sets per inner set.
inline constexpr std::size_t kBiSetScanVertexLimit = 10;

/// Calls fn(x, j) for every x ∈ F_j, every atom j.
template <class Fn>
void for_each_family_biset(const AtomDecomposition& dec, std::size_t vertex_count, Fn&& fn) {
  require_within("vertex count for the bi-set family scan", vertex_count, kBiSetScanVertexLimit);
  const VertexSet all = VertexSet::prefix(vertex_count);
  for (std::size_t j = 0; j < dec.atom_count(); ++j) {
    const VertexSet atom = dec.atoms[j];
    for_each_subset(atom, [&](VertexSet inner) {
      if (inner.empty()) return;
      for_each_subset(all - atom, [&](VertexSet extra) { fn(BiSet{inner | extra, inner}, j); });
    });
  }
}

/// rho_d(X) >= p(X) for every X ∈ F (F and p taken from dec).
inline bool covers_biset_family(const DirectedView& d, const AtomDecomposition& dec,
                                std::span<const VertexIndex> roots) {
  bool ok = true;
  for_each_family_biset(dec, d.vertex_count(), [&](const BiSet& x, std::size_t) {
    if (ok && biset_in_degree(d, x) < p_value(dec, roots, x)) ok = false;
  });
  return ok;
}

/// rho(X) >= p_j(X) for every X ∈ H_j of every atom, in F_j with E_j oriented as in o.
inline bool covers_atom_families(const MixedGraph& g, const Orientation& o, const AtomDecomposition& dec,
                                 std::span<const VertexIndex> roots, const Bounds& bounds = {}) {
  std::vector<VertexIndex> local(g.vertex_count(), 0);
  for (std::size_t j = 0; j < dec.atom_count(); ++j) {
    const AuxiliaryGraph aux = build_auxiliary(g, dec, j);
    require_within("auxiliary graph vertex count", aux.graph.vertex_count(), bounds.max_enum_vertices);
    for (std::size_t v = 0; v < aux.to_original.size(); ++v) local[aux.to_original[v]] = static_cast<VertexIndex>(v);
    std::vector<DirectedPair> dirs;
    for (auto e : aux.edge_origin) dirs.push_back({local[o[e].tail], local[o[e].head]});
    const DirectedView view = apply_orientation(aux.graph, Orientation(std::move(dirs)));
    for (std::uint64_t bits = 1; bits < subset_count(aux.graph.vertex_count()); ++bits) {
      const VertexSet x = VertexSet::from_bits(bits);
      if (in_Hj(aux, x) && in_degree(view, x) < p_j_value(aux, dec, roots, x)) return false;
    }
  }
  return true;
}

/// Some orientation of E gives a digraph whose reachability sets equal the
/// mixed ones and which satisfies the cut condition.
inline bool brute_force_feasible(const MixedGraph& g, std::span<const VertexIndex> roots, const Bounds& bounds = {}) {
  std::vector<std::size_t> free_edges;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    if (!g.edges()[e].is_loop()) free_edges.push_back(e);
  }
  require_within("edge count for the brute-force oracle", free_edges.size(), bounds.max_bruteforce_edges);
  std::vector<VertexSet> reach;
  for (auto r : roots) reach.push_back(mixed_reachable_set(g, r));

  const Orientation base = Orientation::ascending(g);
  for (std::uint64_t flips = 0; flips < subset_count(free_edges.size()); ++flips) {
    Orientation o = base;
    for (std::size_t k = 0; k < free_edges.size(); ++k) {
      if ((flips >> k) & 1U) o.reverse(free_edges[k]);
    }
    const DirectedView d = apply_orientation(g, o);
    bool same = true;
    for (std::size_t i = 0; i < roots.size() && same; ++i) same = reachable_set(d, roots[i]) == reach[i];
    if (same && !cut_condition_violation(d, roots, reach, bounds)) return true;
  }
  return false;
}

/// Calls fn(parts) for every subpartition of `ground` (the empty one included).
template <class Fn>
void for_each_subpartition(VertexSet ground, Fn&& fn) {
  std::vector<std::size_t> items = ground.to_vector();
  std::vector<VertexSet> parts;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == items.size()) {
      fn(std::span<const VertexSet>(parts));
      return;
    }
    self(self, k + 1);
    for (auto& p : parts) {
      p.insert(items[k]);
      self(self, k + 1);
      p.erase(items[k]);
    }
    parts.push_back(VertexSet::single(items[k]));
    self(self, k + 1);
    parts.pop_back();
  };
  rec(rec, 0);
}

/// e_E(P) + Σ rho_A(V_i) >= k·t for every subpartition of V - {r}.
inline bool check_single_root_partition_condition(const MixedGraph& g, VertexIndex r, int k, const Bounds& bounds = {}) {
  require_vertex(g, r);
  if (k <= 0) return true;
  require_within("vertex count for the subpartition scan", g.vertex_count(), bounds.max_partition_vertices);
  const DirectedView arcs = native_arcs(g);
  bool ok = true;
  for_each_subpartition(g.vertices() - VertexSet::single(r), [&](std::span<const VertexSet> parts) {
    if (!ok || parts.empty()) return;
    int lhs = crossing_edge_count(g, Subpartition({parts.begin(), parts.end()}));
    for (auto p : parts) lhs += in_degree(arcs, p);
    if (lhs < k * static_cast<int>(parts.size())) ok = false;
  });
  return ok;
}

/// Largest Σ (p_j - rho_{A_j})(V^i) - e_{E_j}(P') over subpartitions of V_j
/// with every part in H_j, by direct enumeration. The empty subpartition gives 0.
inline int max_subpartition_deficit(const AuxiliaryGraph& aux, const AtomDecomposition& dec,
                                    std::span<const VertexIndex> roots) {
  const DirectedView arcs = auxiliary_arcs(aux);
  int best = 0;
  for_each_subpartition(aux.atom_part(), [&](std::span<const VertexSet> core) {
    if (core.empty()) return;
    std::vector<VertexSet> parts(core.begin(), core.end());
    std::vector<std::pair<VertexIndex, std::size_t>> attachable;
    for (auto t : aux.terminal_part()) {
      const auto head = aux.terminal_head(static_cast<VertexIndex>(t));
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].contains(head)) attachable.emplace_back(static_cast<VertexIndex>(t), k);
      }
    }
    const int crossing = crossing_edge_count(aux.graph, Subpartition(parts));
    for (std::uint64_t pick = 0; pick < subset_count(attachable.size()); ++pick) {
      std::vector<VertexSet> full = parts;
      for (std::size_t a = 0; a < attachable.size(); ++a) {
        if ((pick >> a) & 1U) full[attachable[a].second].insert(attachable[a].first);
      }
      int total = -crossing;
      for (auto p : full) total += p_j_value(aux, dec, roots, p) - in_degree(arcs, p);
      best = std::max(best, total);
    }
  });
  return best;
}

/// Whether some orientation of E_j covers p_j, trying all 2^|E_j| of them.
inline bool exists_covering_orientation(const AuxiliaryGraph& aux, const AtomDecomposition& dec,
                                        std::span<const VertexIndex> roots, const Bounds& bounds = {}) {
  require_within("auxiliary graph vertex count", aux.graph.vertex_count(), bounds.max_enum_vertices);
  require_within("atom edge count", aux.graph.edges().size(), bounds.max_fallback_edges);
  const DirectedView arcs = auxiliary_arcs(aux);
  // Oriented edges stay inside the atom, so only the atom slice of X matters for them.
  std::map<std::uint64_t, int> need;
  for (std::uint64_t bits = 1; bits < subset_count(aux.graph.vertex_count()); ++bits) {
    const VertexSet x = VertexSet::from_bits(bits);
    if (!in_Hj(aux, x)) continue;
    const int h = p_j_value(aux, dec, roots, x) - in_degree(arcs, x);
    auto [it, fresh] = need.try_emplace((x & aux.atom_part()).bits(), h);
    if (!fresh) it->second = std::max(it->second, h);
  }
  const auto edges = aux.graph.edges();
  for (std::uint64_t flips = 0; flips < subset_count(edges.size()); ++flips) {
    bool ok = true;
    for (const auto& [y, h] : need) {
      const VertexSet ys = VertexSet::from_bits(y);
      int rho = 0;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool flip = ((flips >> e) & 1U) != 0;
        const VertexIndex tail = flip ? edges[e].v : edges[e].u;
        const VertexIndex head = flip ? edges[e].u : edges[e].v;
        if (ys.contains(head) && !ys.contains(tail)) ++rho;
      }
      if (rho < h) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// Violations of the intersecting-family closure of H_j and of the
/// supermodular inequality for p_j, over all intersecting pairs.
struct FamilyViolations {
  std::size_t closure = 0;
  std::size_t supermodular = 0;
  std::size_t pairs = 0;
};

inline FamilyViolations check_atom_family(const AuxiliaryGraph& aux, const AtomDecomposition& dec,
                                          std::span<const VertexIndex> roots, std::size_t vertex_limit = 10) {
  require_within("auxiliary graph vertex count for the pair scan", aux.graph.vertex_count(), vertex_limit);
  const std::uint64_t n = subset_count(aux.graph.vertex_count());
  std::vector<int> value(n, INT_MIN);
  std::vector<std::uint64_t> members;
  for (std::uint64_t bits = 1; bits < n; ++bits) {
    const VertexSet x = VertexSet::from_bits(bits);
    if (in_Hj(aux, x)) {
      value[bits] = p_j_value(aux, dec, roots, x);
      members.push_back(bits);
    }
  }
  FamilyViolations v;
  for (auto x : members) {
    for (auto y : members) {
      if ((x & y) == 0) continue;
      ++v.pairs;
      const int cup = value[x | y];
      const int cap = value[x & y];
      if (cup == INT_MIN || cap == INT_MIN) {
        ++v.closure;
        continue;
      }
      if (value[x] + value[y] > cup + cap) ++v.supermodular;
    }
  }
  return v;
}

}  // namespace mixpack
