#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mixpack/bounds.hpp"
#include "mixpack/decomposition.hpp"
#include "mixpack/errors.hpp"
#include "mixpack/mixed_graph.hpp"

namespace mixpack {

/// A subpartition of V_j whose total requirement exceeds what the edges of the
/// atom could ever supply. Proof that no covering orientation exists.
struct SubpartitionCertificate {
  std::size_t atom_index = 0;
  Subpartition parts;
  int deficit = 0;
};

struct OrientStats {
  std::size_t descent_steps = 0;
  bool used_fallback = false;
};

/// The covering requirement h = p_j - rho_{A_j} on H_j for one auxiliary graph.
///
/// h is evaluated on demand; construction additionally tabulates, for every
/// nonempty Y ⊆ Γ_j, the maximum of h over members X of H_j with X ∩ Γ_j = Y
/// and the histogram of the positive values of h on that slice. Oriented edges
/// never touch terminals, so rho of an oriented E_j only depends on X ∩ Γ_j and
/// the slices are all the solver needs.
class CoverRequirement {
 public:
  CoverRequirement(AuxiliaryGraph aux, const AtomDecomposition& dec, std::span<const VertexIndex> roots,
                   Bounds bounds = {})
      : aux_(std::move(aux)), dec_(dec), roots_(roots.begin(), roots.end()), bounds_(bounds) {
    require_within("auxiliary graph vertex count", aux_.graph.vertex_count(), bounds_.max_enum_vertices);
    arc_view_ = auxiliary_arcs(aux_);
    build_tables();
    const VertexSet all = aux_.graph.vertices();
    if (requirement(all) != 0) {
      throw InvariantError("requirement on V_j is " + std::to_string(requirement(all)) + ", expected 0");
    }
  }

  const AuxiliaryGraph& aux() const { return aux_; }
  const AtomDecomposition& decomposition() const { return dec_; }
  std::span<const VertexIndex> roots() const { return roots_; }
  const Bounds& bounds() const { return bounds_; }
  std::size_t atom_size() const { return aux_.atom_size; }

  int p_j(VertexSet x) const { return p_j_value(aux_, dec_, roots_, x); }
  /// rho_{A_j}(X)
  int arc_in_degree(VertexSet x) const { return in_degree(arc_view_, x); }
  int requirement(VertexSet x) const { return p_j(x) - arc_in_degree(x); }

  /// max h(X) over X ∈ H_j with X ∩ Γ_j = y; y nonempty, y ⊆ Γ_j.
  int best_requirement(VertexSet y) const { return best_[y.bits()]; }
  /// First X (ascending terminal mask) attaining best_requirement(y).
  VertexSet best_set(VertexSet y) const { return best_set_[y.bits()]; }

  /// Σ max(0, h(X) - rho) over X ∈ H_j with X ∩ Γ_j = y.
  long long slice_potential(VertexSet y, int rho) const {
    long long total = 0;
    for (std::size_t k = hist_offset_[y.bits()]; k < hist_offset_[y.bits() + 1]; ++k) {
      if (hist_[k].value > rho) total += static_cast<long long>(hist_[k].value - rho) * hist_[k].count;
    }
    return total;
  }

 private:
  struct HistEntry {
    int value;
    long long count;
  };

  void build_tables() {
    const std::size_t m = aux_.atom_size;
    const std::uint64_t slices = subset_count(m);
    best_.assign(slices, INT_MIN);
    best_set_.assign(slices, VertexSet{});
    hist_offset_.assign(slices + 1, 0);
    const VertexSet terminals = aux_.terminal_part();

    for (std::uint64_t bits = 0; bits < slices; ++bits) {
      hist_offset_[bits] = hist_.size();
      if (bits == 0) continue;
      const VertexSet y = VertexSet::from_bits(bits);
      VertexSet attachable;
      for (auto t : terminals) {
        if (y.contains(aux_.terminal_head(static_cast<VertexIndex>(t)))) attachable.insert(t);
      }
      std::vector<long long> counts(roots_.size() + 1, 0);
      for_each_subset(attachable, [&](VertexSet sub) {
        const VertexSet x = y | sub;
        const int h = requirement(x);
        if (h > best_[bits]) {
          best_[bits] = h;
          best_set_[bits] = x;
        }
        if (h > 0) ++counts[static_cast<std::size_t>(h)];
      });
      for (std::size_t h = 1; h < counts.size(); ++h) {
        if (counts[h] > 0) hist_.push_back({static_cast<int>(h), counts[h]});
      }
    }
    hist_offset_[slices] = hist_.size();
  }

  AuxiliaryGraph aux_;
  AtomDecomposition dec_;
  std::vector<VertexIndex> roots_;
  Bounds bounds_;
  DirectedView arc_view_;
  std::vector<int> best_;
  std::vector<VertexSet> best_set_;
  std::vector<std::size_t> hist_offset_;
  std::vector<HistEntry> hist_;
};

/// First X ∈ H_j (ascending mask over V_j) with rho(X) < p_j(X) in A_j plus
/// the oriented E_j. Scans H_j directly, independent of the slice tables.
inline std::optional<VertexSet> check_cover(const CoverRequirement& req, const Orientation& o) {
  const auto& aux = req.aux();
  require_within("auxiliary graph vertex count", aux.graph.vertex_count(), req.bounds().max_enum_vertices);
  const DirectedView view = apply_orientation(aux.graph, o);
  const std::uint64_t n = subset_count(aux.graph.vertex_count());
  for (std::uint64_t bits = 1; bits < n; ++bits) {
    const VertexSet x = VertexSet::from_bits(bits);
    if (!in_Hj(aux, x)) continue;
    if (in_degree(view, x) < req.p_j(x)) return x;
  }
  return std::nullopt;
}

/// Σ (p_j(V^i) - rho_{A_j}(V^i)) - e_{E_j}(P'). Positive means no covering
/// orientation exists.
inline int subpartition_deficit(const CoverRequirement& req, const Subpartition& p) {
  int total = 0;
  for (auto part : p.parts()) {
    require_Hj(req.aux(), part);
    total += req.requirement(part);
  }
  return total - crossing_edge_count(req.aux().graph, p);
}

namespace detail {

/// rho of the oriented atom edges for every subset of the atom, indexed by mask.
inline std::vector<int> edge_rho_table(const CoverRequirement& req, const Orientation& o) {
  const std::uint64_t n = subset_count(req.atom_size());
  std::vector<int> rho(n, 0);
  for (const auto& d : o.directions()) {
    if (d.tail == d.head) continue;
    const std::uint64_t head = std::uint64_t{1} << d.head;
    const std::uint64_t tail = std::uint64_t{1} << d.tail;
    for (std::uint64_t y = 0; y < n; ++y) {
      if ((y & head) != 0 && (y & tail) == 0) ++rho[y];
    }
  }
  return rho;
}

inline long long potential(const CoverRequirement& req, const std::vector<int>& rho) {
  long long phi = 0;
  for (std::uint64_t y = 1; y < rho.size(); ++y) phi += req.slice_potential(VertexSet::from_bits(y), rho[y]);
  return phi;
}

inline bool covers(const CoverRequirement& req, const std::vector<int>& rho) {
  for (std::uint64_t y = 1; y < rho.size(); ++y) {
    if (rho[y] < req.best_requirement(VertexSet::from_bits(y))) return false;
  }
  return true;
}

/// Edges on a directed s->t path using oriented edges only; empty if none.
inline std::vector<std::size_t> oriented_path(const Orientation& o, std::size_t vertex_count, VertexIndex s,
                                              VertexIndex t) {
  std::vector<std::optional<std::size_t>> via(vertex_count);
  std::vector<char> seen(vertex_count, 0);
  seen[s] = 1;
  std::deque<VertexIndex> queue{s};
  const auto dirs = o.directions();
  while (!queue.empty() && !seen[t]) {
    const VertexIndex u = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < dirs.size(); ++e) {
      if (dirs[e].tail != u || seen[dirs[e].head]) continue;
      seen[dirs[e].head] = 1;
      via[dirs[e].head] = e;
      queue.push_back(dirs[e].head);
    }
  }
  std::vector<std::size_t> path;
  if (!seen[t]) return path;
  for (VertexIndex v = t; v != s;) {
    const std::size_t e = *via[v];
    path.push_back(e);
    v = dirs[e].tail;
  }
  return path;
}

/// Best subpartition of the atom into slices with positive requirement.
inline std::optional<SubpartitionCertificate> search_certificate(const CoverRequirement& req) {
  const auto& aux = req.aux();
  const std::size_t m = req.atom_size();
  require_within("atom size for the subpartition search", m, req.bounds().max_partition_vertices);

  std::vector<VertexSet> candidates;
  for (std::uint64_t y = 1; y < subset_count(m); ++y) {
    if (req.best_requirement(VertexSet::from_bits(y)) > 0) candidates.push_back(VertexSet::from_bits(y));
  }
  if (candidates.empty()) return std::nullopt;

  const auto edges = aux.graph.edges();
  auto crossing = [&](const std::vector<VertexSet>& parts) {
    VertexSet support;
    for (auto p : parts) support |= p;
    int count = 0;
    for (const auto& e : edges) {
      if (e.is_loop() || (!support.contains(e.u) && !support.contains(e.v))) continue;
      bool internal = false;
      for (auto p : parts) internal = internal || (p.contains(e.u) && p.contains(e.v));
      if (!internal) ++count;
    }
    return count;
  };

  int best_deficit = 0;
  std::vector<VertexSet> best_parts;
  std::vector<VertexSet> chosen;

  auto better = [&](int deficit, std::vector<VertexSet> parts) {
    std::sort(parts.begin(), parts.end());
    if (deficit != best_deficit) return deficit > best_deficit;
    if (parts.size() != best_parts.size()) return parts.size() < best_parts.size();
    return parts < best_parts;
  };

  auto recurse = [&](auto&& self, VertexSet undecided, int gain) -> void {
    if (undecided.empty()) {
      if (chosen.empty()) return;
      const int deficit = gain - crossing(chosen);
      if (deficit > 0 && (best_parts.empty() || better(deficit, chosen))) {
        best_deficit = deficit;
        best_parts = chosen;
        std::sort(best_parts.begin(), best_parts.end());
      }
      return;
    }
    const std::size_t v = undecided.front();
    self(self, undecided - VertexSet::single(v), gain);
    for (auto y : candidates) {
      if (y.front() != v || !y.subset_of(undecided)) continue;
      chosen.push_back(y);
      self(self, undecided - y, gain + req.best_requirement(y));
      chosen.pop_back();
    }
  };
  recurse(recurse, aux.atom_part(), 0);

  if (best_parts.empty()) return std::nullopt;
  std::vector<VertexSet> full;
  for (auto y : best_parts) full.push_back(req.best_set(y));
  SubpartitionCertificate cert{aux.atom_index, Subpartition(std::move(full)), 0};
  cert.deficit = subpartition_deficit(req, cert.parts);
  if (cert.deficit != best_deficit) throw InvariantError("certificate deficit does not match its search value");
  return cert;
}

}  // namespace detail

using OrientResult = std::variant<Orientation, SubpartitionCertificate>;

/// Orients E_j so that A_j plus the oriented edges covers p_j, or returns a
/// subpartition certificate when no such orientation exists.
///
/// Starts from the ascending orientation and reverses oriented-edge paths while
/// that strictly lowers the total deficiency Φ; if the descent stalls, every
/// orientation is tried (|E_j| permitting). Infeasibility is always reported
/// through an explicit maximum-deficit subpartition.
inline OrientResult orient_covering(const CoverRequirement& req, OrientStats* stats = nullptr) {
  const auto& aux = req.aux();
  const std::size_t m = req.atom_size();
  Orientation o = Orientation::ascending(aux.graph);
  OrientStats local_stats;
  OrientStats& st = stats ? *stats : local_stats;

  auto finish = [&](const Orientation& found) -> OrientResult {
    if (auto bad = check_cover(req, found)) {
      throw InvariantError("orientation solver produced an orientation violating " + aux.graph.format(*bad));
    }
    return found;
  };

  for (;;) {
    const auto rho = detail::edge_rho_table(req, o);
    const long long phi = detail::potential(req, rho);
    if (phi == 0) return finish(o);

    VertexSet deficient;
    for (std::uint64_t y = 1; y < rho.size(); ++y) {
      if (req.slice_potential(VertexSet::from_bits(y), rho[y]) > 0) deficient |= VertexSet::from_bits(y);
    }

    bool improved = false;
    for (auto s : deficient) {
      for (std::size_t t = 0; t < m && !improved; ++t) {
        if (t == s) continue;
        auto path = detail::oriented_path(o, aux.graph.vertex_count(), static_cast<VertexIndex>(s),
                                          static_cast<VertexIndex>(t));
        if (path.empty()) continue;
        // Reversing an s->t path adds one to rho(Y) when s ∈ Y, t ∉ Y and removes one when t ∈ Y, s ∉ Y.
        long long delta = 0;
        const std::uint64_t sb = std::uint64_t{1} << s;
        const std::uint64_t tb = std::uint64_t{1} << t;
        for (std::uint64_t y = 1; y < rho.size(); ++y) {
          const bool has_s = (y & sb) != 0;
          const bool has_t = (y & tb) != 0;
          if (has_s == has_t) continue;
          const VertexSet ys = VertexSet::from_bits(y);
          delta += req.slice_potential(ys, rho[y] + (has_s ? 1 : -1)) - req.slice_potential(ys, rho[y]);
        }
        if (delta < 0) {
          for (auto e : path) o.reverse(e);
          ++st.descent_steps;
          improved = true;
        }
      }
      if (improved) break;
    }
    if (!improved) break;
  }

  const std::size_t edge_count = aux.graph.edges().size();
  if (edge_count <= req.bounds().max_fallback_edges) {
    st.used_fallback = true;
    const Orientation base = Orientation::ascending(aux.graph);
    for (std::uint64_t flips = 0; flips < subset_count(edge_count); ++flips) {
      Orientation trial = base;
      for (std::size_t e = 0; e < edge_count; ++e) {
        if ((flips >> e) & 1U) trial.reverse(e);
      }
      if (detail::covers(req, detail::edge_rho_table(req, trial))) return finish(trial);
    }
  }

  if (auto cert = detail::search_certificate(req)) return *cert;
  if (edge_count > req.bounds().max_fallback_edges) {
    throw CapacityError("atom edge count for the exhaustive orientation fallback", edge_count,
                        req.bounds().max_fallback_edges);
  }
  throw InvariantError("no covering orientation and no violated subpartition for atom " +
                       std::to_string(aux.atom_index + 1));
}

}  // namespace mixpack
