#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mixpack/bounds.hpp"
#include "mixpack/decomposition.hpp"
#include "mixpack/errors.hpp"
#include "mixpack/mixed_graph.hpp"

namespace mixpack {

/// Tree for root index `root_index`; arcs are indices into the DirectedView.
struct Arborescence {
  std::size_t root_index = 0;
  std::vector<std::size_t> arcs;
};

struct DigraphPacking {
  std::vector<Arborescence> trees;
};

struct PackStats {
  std::size_t search_nodes = 0;
  std::size_t backtracks = 0;
};

/// Right side of the cut condition: |{i : r_i ∉ X, U_i ∩ X ≠ ∅}|.
inline int reachability_demand(std::span<const VertexSet> reach, std::span<const VertexIndex> roots, VertexSet x) {
  int demand = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!x.contains(roots[i]) && reach[i].intersects(x)) ++demand;
  }
  return demand;
}

/// First X ⊆ V (ascending mask) with rho(X) below the demand computed from the
/// given reachability sets.
inline std::optional<VertexSet> cut_condition_violation(const DirectedView& d, std::span<const VertexIndex> roots,
                                              std::span<const VertexSet> reach, const Bounds& bounds = {}) {
  require_within("vertex count for the cut-condition scan", d.vertex_count(), bounds.max_enum_vertices);
  const std::uint64_t n = subset_count(d.vertex_count());
  std::vector<int> rho(n, 0);
  for (const auto& a : d.arcs()) {
    if (a.tail == a.head) continue;
    const std::uint64_t head = std::uint64_t{1} << a.head;
    const std::uint64_t tail = std::uint64_t{1} << a.tail;
    for (std::uint64_t x = 0; x < n; ++x) {
      if ((x & head) != 0 && (x & tail) == 0) ++rho[x];
    }
  }
  for (std::uint64_t x = 1; x < n; ++x) {
    if (rho[x] < reachability_demand(reach, roots, VertexSet::from_bits(x))) return VertexSet::from_bits(x);
  }
  return std::nullopt;
}

/// Checks the cut condition rho(X) >= |{i : r_i ∉ X, U_i ∩ X ≠ ∅}| for every X,
/// with U_i the reachability sets of d itself.
inline std::optional<VertexSet> verify_cut_condition(const DirectedView& d, std::span<const VertexIndex> roots,
                                                     const Bounds& bounds = {}) {
  std::vector<VertexSet> reach;
  for (auto r : roots) reach.push_back(reachable_set(d, r));
  return cut_condition_violation(d, roots, reach, bounds);
}

namespace detail {

/// Arc-disjoint branching search for one atom.
///
/// Vertices of `atom` must be covered by every tree; the other vertices of the
/// view are entry terminals. Tree i may use arcs inside the atom and the arcs
/// leaving its own entry terminals; an atom vertex in its entry set is a root.
class BranchingSearch {
 public:
  BranchingSearch(const DirectedView& view, VertexSet atom, std::span<const VertexSet> entries, PackStats& stats)
      : view_(view), atom_(atom), entries_(entries.begin(), entries.end()), stats_(stats) {
    const auto arcs = view_.arcs();
    owner_.assign(arcs.size(), -1);
    forbidden_.assign(entries_.size(), std::vector<char>(arcs.size(), 0));
    for (std::size_t i = 0; i < entries_.size(); ++i) covered_.push_back(entries_[i] & atom_);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const bool inside = atom_.contains(arcs[a].tail) && atom_.contains(arcs[a].head);
      const bool from_terminal = !atom_.contains(arcs[a].tail) && atom_.contains(arcs[a].head);
      if (arcs[a].tail == arcs[a].head || (!inside && !from_terminal)) {
        for (auto& f : forbidden_) f[a] = 1;
        continue;
      }
      if (from_terminal) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
          if (!entries_[i].contains(arcs[a].tail)) forbidden_[i][a] = 1;
        }
      }
    }
  }

  std::optional<std::vector<std::vector<std::size_t>>> run() {
    if (!residual_ok() || !search()) return std::nullopt;
    std::vector<std::vector<std::size_t>> trees(entries_.size());
    for (std::size_t a = 0; a < owner_.size(); ++a) {
      if (owner_[a] >= 0) trees[static_cast<std::size_t>(owner_[a])].push_back(a);
    }
    return trees;
  }

 private:
  bool usable(std::size_t tree, std::size_t a) const {
    if (owner_[a] >= 0 || forbidden_[tree][a]) return false;
    const auto& arc = view_.arcs()[a];
    if (covered_[tree].contains(arc.head)) return false;
    return covered_[tree].contains(arc.tail) || !atom_.contains(arc.tail);
  }

  bool search() {
    ++stats_.search_nodes;
    std::size_t tree = entries_.size();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (covered_[i] != atom_) {
        tree = i;
        break;
      }
    }
    if (tree == entries_.size()) return true;

    std::optional<std::size_t> pick;
    for (std::size_t a = 0; a < owner_.size(); ++a) {
      if (usable(tree, a)) {
        pick = a;
        break;
      }
    }
    if (!pick) return false;
    const std::size_t a = *pick;
    const VertexIndex head = view_.arcs()[a].head;

    owner_[a] = static_cast<int>(tree);
    covered_[tree].insert(head);
    if (residual_ok() && search()) return true;
    owner_[a] = -1;
    covered_[tree].erase(head);
    ++stats_.backtracks;

    forbidden_[tree][a] = 1;
    if (residual_ok() && search()) return true;
    forbidden_[tree][a] = 0;
    return false;
  }

  /// Every tree with no covered vertex in Y needs its own unused arc entering Y.
  bool residual_ok() const {
    const auto arcs = view_.arcs();
    std::vector<std::size_t> needing;
    std::vector<std::size_t> entering;
    bool ok = true;
    for_each_subset(atom_, [&](VertexSet y) {
      if (y.empty() || !ok) return;
      needing.clear();
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!covered_[i].intersects(y)) needing.push_back(i);
      }
      if (needing.empty()) return;
      entering.clear();
      for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (owner_[a] < 0 && y.contains(arcs[a].head) && !y.contains(arcs[a].tail)) entering.push_back(a);
      }
      if (entering.size() < needing.size() || !saturating_matching(needing, entering)) ok = false;
    });
    return ok;
  }

  bool saturating_matching(const std::vector<std::size_t>& trees, const std::vector<std::size_t>& arcs) const {
    std::vector<int> arc_match(arcs.size(), -1);
    for (std::size_t t = 0; t < trees.size(); ++t) {
      std::vector<char> visited(arcs.size(), 0);
      if (!augment(t, trees, arcs, arc_match, visited)) return false;
    }
    return true;
  }

  bool augment(std::size_t t, const std::vector<std::size_t>& trees, const std::vector<std::size_t>& arcs,
               std::vector<int>& arc_match, std::vector<char>& visited) const {
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      if (visited[k] || forbidden_[trees[t]][arcs[k]]) continue;
      visited[k] = 1;
      if (arc_match[k] < 0 || augment(static_cast<std::size_t>(arc_match[k]), trees, arcs, arc_match, visited)) {
        arc_match[k] = static_cast<int>(t);
        return true;
      }
    }
    return false;
  }

  const DirectedView& view_;
  VertexSet atom_;
  std::vector<VertexSet> entries_;
  PackStats& stats_;
  std::vector<int> owner_;
  std::vector<std::vector<char>> forbidden_;
  std::vector<VertexSet> covered_;
};

}  // namespace detail

/// Arc-disjoint branchings, one per entry set, each covering `atom` with every
/// component rooted at an entry point. Vertices outside `atom` are terminals.
/// Returns arc indices of `view` per tree, or nullopt when none exist.
inline std::optional<std::vector<std::vector<std::size_t>>> pack_atom_branchings(
    const DirectedView& view, VertexSet atom, std::span<const VertexSet> entries, PackStats* stats = nullptr) {
  require_subset(atom, view.vertices());
  for (auto e : entries) require_subset(e, view.vertices());
  PackStats local;
  detail::BranchingSearch search(view, atom, entries, stats ? *stats : local);
  return search.run();
}

/// Builds the packing atom by atom, without checking the cut condition first.
/// Throws InvariantError when an atom has no branching packing, which cannot
/// happen while the cut condition holds.
inline DigraphPacking pack_by_atoms(const DirectedView& d, std::span<const VertexIndex> roots,
                                    const Bounds& bounds = {}, PackStats* stats = nullptr) {
  const AtomDecomposition dec = compute_atoms(d, roots);
  const auto arcs = d.arcs();

  for (const auto& a : arcs) {
    const auto from = dec.atom_of[a.tail];
    const auto to = dec.atom_of[a.head];
    if (!to || from == to) continue;
    const RootSet rf = from ? dec.atom_roots[*from] : RootSet{};
    const RootSet rt = dec.atom_roots[*to];
    if (!rf.subset_of(rt) || rf == rt) {
      throw InvariantError("arc '" + a.id + "' runs against the order of root sets between atoms");
    }
  }

  std::vector<std::size_t> order(dec.atom_count());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dec.atom_roots[a].size() < dec.atom_roots[b].size(); });

  DigraphPacking packing;
  for (std::size_t i = 0; i < roots.size(); ++i) packing.trees.push_back({i, {}});

  for (std::size_t j : order) {
    const VertexSet atom = dec.atoms[j];
    require_within("atom size for the branching search", atom.size(), bounds.max_enum_vertices);

    std::vector<VertexIndex> local(d.vertex_count(), 0);
    std::size_t next = 0;
    for (auto v : atom) local[v] = static_cast<VertexIndex>(next++);
    std::vector<DirectedArc> local_arcs;
    std::vector<std::size_t> origin;
    std::vector<VertexIndex> terminal_tail;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (!atom.contains(arcs[a].head) || arcs[a].tail == arcs[a].head) continue;
      if (atom.contains(arcs[a].tail)) {
        local_arcs.push_back({arcs[a].id, local[arcs[a].tail], local[arcs[a].head], arcs[a].origin, a});
      } else {
        const auto t = static_cast<VertexIndex>(next++);
        terminal_tail.push_back(arcs[a].tail);
        local_arcs.push_back({arcs[a].id, t, local[arcs[a].head], arcs[a].origin, a});
      }
      origin.push_back(a);
    }
    if (next > VertexSet::kCapacity) throw CapacityError("atom view vertex count", next, VertexSet::kCapacity);
    const DirectedView view(next, std::move(local_arcs));
    const VertexSet local_atom = VertexSet::prefix(atom.size());

    std::vector<std::size_t> trees;
    std::vector<VertexSet> entries;
    for (auto i : dec.atom_roots[j]) {
      trees.push_back(i);
      VertexSet entry;
      if (atom.contains(roots[i])) {
        entry.insert(local[roots[i]]);
      } else {
        for (std::size_t k = 0; k < terminal_tail.size(); ++k) {
          if (dec.reach[i].contains(terminal_tail[k])) entry.insert(atom.size() + k);
        }
      }
      entries.push_back(entry);
    }

    auto packed = pack_atom_branchings(view, local_atom, entries, stats);
    if (!packed) {
      throw InvariantError("no branching packing for atom " + std::to_string(j + 1) +
                           " although the cut condition was expected to hold");
    }
    for (std::size_t t = 0; t < trees.size(); ++t) {
      for (auto a : (*packed)[t]) packing.trees[trees[t]].arcs.push_back(view.arcs()[a].source);
    }
  }
  for (auto& t : packing.trees) std::sort(t.arcs.begin(), t.arcs.end());
  return packing;
}

using DigraphPackResult = std::variant<DigraphPacking, VertexSet>;

/// Packing of r_i-arborescences spanning U_i in d, or the first set violating
/// the cut condition.
inline DigraphPackResult pack_reachability(const DirectedView& d, std::span<const VertexIndex> roots,
                                           const Bounds& bounds = {}, PackStats* stats = nullptr) {
  if (auto bad = verify_cut_condition(d, roots, bounds)) return *bad;
  return pack_by_atoms(d, roots, bounds, stats);
}

namespace detail {

/// The vertices reachable from the root through `arcs` are exactly `target`.
inline bool spans_exactly(std::span<const DirectedPair> arcs, VertexIndex root, VertexSet target) {
  VertexSet reached = VertexSet::single(root);
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& a : arcs) {
      if (reached.contains(a.tail) && !reached.contains(a.head)) {
        reached.insert(a.head);
        grew = true;
      }
    }
  }
  return reached == target;
}

/// Given the span check passed: one arc into every non-root vertex, none into the root.
inline std::optional<std::string> check_tree_shape(std::span<const DirectedPair> arcs, VertexIndex root,
                                                   VertexSet target) {
  if (arcs.size() + 1 != target.size()) return std::string("is not an arborescence (wrong arc count)");
  VertexSet entered;
  for (const auto& a : arcs) {
    if (!target.contains(a.tail) || !target.contains(a.head)) {
      return std::string("is not an arborescence (arc leaves its vertex set)");
    }
    if (a.head == root) return std::string("is not an arborescence (arc enters the root)");
    if (entered.contains(a.head)) return std::string("is not an arborescence (vertex entered twice)");
    entered.insert(a.head);
  }
  return std::nullopt;
}

}  // namespace detail

/// nullopt when the packing is valid; otherwise a report naming the first
/// failed check (arc reuse, spanning, arborescence shape, in that order).
inline std::optional<std::string> validate_digraph_packing(const DirectedView& d, std::span<const VertexIndex> roots,
                                                           const DigraphPacking& packing) {
  if (packing.trees.size() != roots.size()) {
    return "packing has " + std::to_string(packing.trees.size()) + " trees for " + std::to_string(roots.size()) +
           " roots";
  }
  const auto arcs = d.arcs();
  std::vector<char> used(arcs.size(), 0);
  for (std::size_t i = 0; i < packing.trees.size(); ++i) {
    if (packing.trees[i].root_index != i) return "tree " + std::to_string(i + 1) + " has the wrong root index";
    for (auto a : packing.trees[i].arcs) {
      if (a >= arcs.size()) return "tree " + std::to_string(i + 1) + " references a missing arc";
      if (used[a]) return "arc " + arcs[a].id + " used twice";
      used[a] = 1;
    }
  }
  std::vector<std::vector<DirectedPair>> pairs(roots.size());
  std::vector<VertexSet> reach;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (auto a : packing.trees[i].arcs) pairs[i].push_back({arcs[a].tail, arcs[a].head});
    reach.push_back(reachable_set(d, roots[i]));
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!detail::spans_exactly(pairs[i], roots[i], reach[i])) {
      return "tree " + std::to_string(i + 1) + " does not span U_" + std::to_string(i + 1);
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (auto why = detail::check_tree_shape(pairs[i], roots[i], reach[i])) {
      return "tree " + std::to_string(i + 1) + " " + *why;
    }
  }
  return std::nullopt;
}

}  // namespace mixpack
