#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mixpack/bounds.hpp"
#include "mixpack/decomposition.hpp"
#include "mixpack/digraph_packing.hpp"
#include "mixpack/errors.hpp"
#include "mixpack/mixed_graph.hpp"
#include "mixpack/orientation_solver.hpp"

namespace mixpack {

/// One arc of a mixed arborescence: a native arc, or an edge used in the given direction.
struct TreeArc {
  ArcOrigin origin = ArcOrigin::native_arc;
  std::size_t index = 0;
  VertexIndex tail = 0;
  VertexIndex head = 0;

  bool operator==(const TreeArc&) const = default;
};

struct MixedTree {
  std::size_t root_index = 0;
  std::vector<TreeArc> arcs;
};

struct MixedPacking {
  std::vector<MixedTree> trees;
};

/// Bi-sets over one atom whose inner sets form a subpartition of the atom and
/// for which e_E(P) + Σ rho_A(X^i) = lhs < rhs = Σ p(X^i).
struct BiSetFamilyCertificate {
  std::size_t atom_index = 0;
  std::vector<BiSet> bisets;
  int lhs = 0;
  int rhs = 0;
};

struct SolveOptions {
  Bounds bounds;
  /// Worker threads for the per-atom orientation step.
  unsigned jobs = 1;
};

struct SolveStats {
  std::size_t atoms = 0;
  std::size_t descent_steps = 0;
  std::size_t fallback_atoms = 0;
  PackStats packing;
};

using SolveResult = std::variant<MixedPacking, BiSetFamilyCertificate>;

/// Both sides of the certificate inequality, recomputed on the original graph.
struct CertificateSides {
  int lhs = 0;
  int rhs = 0;
};

inline CertificateSides certificate_sides(const MixedGraph& g, const AtomDecomposition& dec,
                                          std::span<const VertexIndex> roots, std::span<const BiSet> bisets) {
  std::vector<VertexSet> inner;
  CertificateSides sides;
  for (const auto& x : bisets) {
    inner.push_back(x.inner);
    sides.lhs += biset_in_degree(g, x);
    sides.rhs += p_value(dec, roots, x);
  }
  sides.lhs += crossing_edge_count(g, Subpartition(std::move(inner)));
  return sides;
}

/// Lifts each part V^i of an orientation-level certificate to B(V^i).
inline BiSetFamilyCertificate certificate_from_subpartition(const SubpartitionCertificate& sc,
                                                            const AuxiliaryGraph& aux, const AtomDecomposition& dec,
                                                            const MixedGraph& g,
                                                            std::span<const VertexIndex> roots) {
  if (sc.deficit < 1) throw std::invalid_argument("subpartition has no positive deficit; it certifies nothing");
  if (sc.atom_index != aux.atom_index) throw std::invalid_argument("certificate and auxiliary graph disagree on the atom");
  BiSetFamilyCertificate cert;
  cert.atom_index = sc.atom_index;
  for (auto part : sc.parts.parts()) cert.bisets.push_back(lift_biset(aux, part));
  const auto sides = certificate_sides(g, dec, roots, cert.bisets);
  cert.lhs = sides.lhs;
  cert.rhs = sides.rhs;
  if (cert.lhs >= cert.rhs) {
    throw InvariantError("lifted certificate is not violated (" + std::to_string(cert.lhs) +
                         " >= " + std::to_string(cert.rhs) + ")");
  }
  return cert;
}

struct CertificateCheck {
  bool ok = false;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Recomputes both sides from g alone and checks the family's shape.
inline CertificateCheck verify_certificate(const MixedGraph& g, std::span<const VertexIndex> roots,
                                           const BiSetFamilyCertificate& cert) {
  const AtomDecomposition dec = compute_atoms(g, roots);
  if (cert.atom_index >= dec.atom_count()) return {false, "atom index out of range"};
  if (cert.bisets.empty()) return {false, "empty family"};
  const VertexSet atom = dec.atoms[cert.atom_index];
  VertexSet seen;
  for (const auto& x : cert.bisets) {
    if (!x.outer.subset_of(g.vertices())) return {false, "bi-set refers to vertices outside the graph"};
    if (!x.inner.subset_of(x.outer)) return {false, "inner set not contained in outer set"};
    if (x.inner.empty()) return {false, "empty inner set"};
    if (x.inner.intersects(seen)) return {false, "not a subpartition: inner sets overlap"};
    seen |= x.inner;
    if (!x.inner.subset_of(atom)) return {false, "inner set leaves the atom"};
    if (x.rim().intersects(atom)) return {false, "outer set meets the atom outside the inner set"};
  }
  const auto sides = certificate_sides(g, dec, roots, cert.bisets);
  if (sides.lhs >= sides.rhs) {
    return {false, "inequality holds (" + std::to_string(sides.lhs) + " >= " + std::to_string(sides.rhs) + ")"};
  }
  if (sides.lhs != cert.lhs || sides.rhs != cert.rhs) {
    return {false, "stored sides " + std::to_string(cert.lhs) + "/" + std::to_string(cert.rhs) +
                       " differ from recomputed " + std::to_string(sides.lhs) + "/" + std::to_string(sides.rhs)};
  }
  return {true, ""};
}

/// Restriction of a global orientation to the edges of one auxiliary graph.
inline Orientation restrict_orientation(const AuxiliaryGraph& aux, const MixedGraph& g, const Orientation& o) {
  std::vector<VertexIndex> local(g.vertex_count(), 0);
  for (std::size_t v = 0; v < aux.to_original.size(); ++v) local[aux.to_original[v]] = static_cast<VertexIndex>(v);
  std::vector<DirectedPair> dirs;
  for (auto e : aux.edge_origin) dirs.push_back({local[o[e].tail], local[o[e].head]});
  return Orientation(std::move(dirs));
}

inline MixedPacking to_mixed_packing(const DirectedView& d, const DigraphPacking& packing) {
  MixedPacking mp;
  const auto arcs = d.arcs();
  for (const auto& t : packing.trees) {
    MixedTree tree{t.root_index, {}};
    for (auto a : t.arcs) tree.arcs.push_back({arcs[a].origin, arcs[a].source, arcs[a].tail, arcs[a].head});
    mp.trees.push_back(std::move(tree));
  }
  return mp;
}

/// Decides the reachability mixed arborescence packing problem.
///
/// Builds F_j per atom, orients each E_j to cover p_j (stopping at the first
/// atom, in index order, that admits no such orientation), orients the whole
/// graph accordingly and packs reachability arborescences in the result.
inline SolveResult solve(const MixedGraph& g, std::span<const VertexIndex> roots, const SolveOptions& options = {},
                         SolveStats* stats = nullptr) {
  SolveStats local_stats;
  SolveStats& st = stats ? *stats : local_stats;
  const AtomDecomposition dec = compute_atoms(g, roots);
  st.atoms = dec.atom_count();

  struct AtomOutcome {
    AuxiliaryGraph aux;
    OrientResult result;
    OrientStats stats;
  };
  auto run_atom = [&](std::size_t j) {
    AuxiliaryGraph aux = build_auxiliary(g, dec, j);
    CoverRequirement req(aux, dec, roots, options.bounds);
    OrientStats os;
    OrientResult r = orient_covering(req, &os);
    return AtomOutcome{std::move(aux), std::move(r), os};
  };

  std::vector<AtomOutcome> outcomes;
  outcomes.reserve(dec.atom_count());
  if (options.jobs <= 1) {
    for (std::size_t j = 0; j < dec.atom_count(); ++j) {
      outcomes.push_back(run_atom(j));
      if (std::holds_alternative<SubpartitionCertificate>(outcomes.back().result)) break;
    }
  } else {
    for (std::size_t start = 0; start < dec.atom_count(); start += options.jobs) {
      const std::size_t stop = std::min<std::size_t>(dec.atom_count(), start + options.jobs);
      std::vector<std::future<AtomOutcome>> batch;
      for (std::size_t j = start; j < stop; ++j) batch.push_back(std::async(std::launch::async, run_atom, j));
      for (auto& f : batch) outcomes.push_back(f.get());
    }
  }

  Orientation o = Orientation::ascending(g);
  for (const auto& out : outcomes) {
    st.descent_steps += out.stats.descent_steps;
    if (out.stats.used_fallback) ++st.fallback_atoms;
    if (const auto* sc = std::get_if<SubpartitionCertificate>(&out.result)) {
      return certificate_from_subpartition(*sc, out.aux, dec, g, roots);
    }
    const auto& local = std::get<Orientation>(out.result);
    for (std::size_t e = 0; e < out.aux.edge_origin.size(); ++e) {
      o.set(out.aux.edge_origin[e], {out.aux.to_original[local[e].tail], out.aux.to_original[local[e].head]});
    }
  }

  const DirectedView d = apply_orientation(g, o);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (reachable_set(d, roots[i]) != dec.reach[i]) {
      throw InvariantError("orientation changed the set reachable from root " + std::to_string(i + 1));
    }
  }
  const DigraphPacking packing = pack_by_atoms(d, roots, options.bounds, &st.packing);
  if (auto why = validate_digraph_packing(d, roots, packing)) throw InvariantError("packing check failed: " + *why);
  return to_mixed_packing(d, packing);
}

/// nullopt when mp is a valid packing for (g, roots); otherwise the first
/// failed check (element validity, reuse of an edge or arc, spanning U_i,
/// arborescence shape).
inline std::optional<std::string> validate_mixed_packing(const MixedGraph& g, std::span<const VertexIndex> roots,
                                                         const MixedPacking& mp) {
  if (mp.trees.size() != roots.size()) {
    return "packing has " + std::to_string(mp.trees.size()) + " trees for " + std::to_string(roots.size()) + " roots";
  }
  std::vector<char> edge_used(g.edges().size(), 0);
  std::vector<char> arc_used(g.arcs().size(), 0);
  std::vector<std::vector<DirectedPair>> pairs(roots.size());
  for (std::size_t i = 0; i < mp.trees.size(); ++i) {
    const std::string tree = "tree " + std::to_string(i + 1);
    if (mp.trees[i].root_index != i) return tree + " has the wrong root index";
    for (const auto& t : mp.trees[i].arcs) {
      if (t.origin == ArcOrigin::native_arc) {
        if (t.index >= g.arcs().size()) return tree + " references a missing arc";
        const auto& a = g.arcs()[t.index];
        if (a.tail != t.tail || a.head != t.head) return tree + " reverses arc " + a.id;
        if (arc_used[t.index]) return "arc " + a.id + " used twice";
        arc_used[t.index] = 1;
      } else {
        if (t.index >= g.edges().size()) return tree + " references a missing edge";
        const auto& e = g.edges()[t.index];
        const bool fits = (e.u == t.tail && e.v == t.head) || (e.v == t.tail && e.u == t.head);
        if (!fits) return tree + " uses edge " + e.id + " between the wrong vertices";
        if (edge_used[t.index]) return "edge " + e.id + " used twice";
        edge_used[t.index] = 1;
      }
      pairs[i].push_back({t.tail, t.head});
    }
  }
  std::vector<VertexSet> reach;
  for (auto r : roots) reach.push_back(mixed_reachable_set(g, r));
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
