#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mixpack/errors.hpp"
#include "mixpack/index_set.hpp"

namespace mixpack {

using VertexIndex = std::uint32_t;

struct Edge {
  std::string id;
  VertexIndex u = 0;
  VertexIndex v = 0;

  bool is_loop() const { return u == v; }
  VertexIndex other(VertexIndex w) const { return w == u ? v : u; }
};

struct Arc {
  std::string id;
  VertexIndex tail = 0;
  VertexIndex head = 0;

  bool is_loop() const { return tail == head; }
};

/// Mixed multigraph F = (V; E, A). Vertices are dense indices assigned in
/// insertion order; edges and arcs keep their user-visible ids.
///
/// Built once through the add_* calls and treated as immutable afterwards.
class MixedGraph {
 public:
  VertexIndex add_vertex(std::string name) {
    if (index_.contains(name)) throw InputError("duplicate vertex id '" + name + "'");
    if (names_.size() >= VertexSet::kCapacity) {
      throw CapacityError("vertex count", names_.size() + 1, VertexSet::kCapacity);
    }
    const auto v = static_cast<VertexIndex>(names_.size());
    index_.emplace(name, v);
    names_.push_back(std::move(name));
    return v;
  }

  std::size_t add_edge(VertexIndex u, VertexIndex v, std::string id) {
    check_vertex(u);
    check_vertex(v);
    if (edge_index_.contains(id)) throw InputError("duplicate edge id '" + id + "'");
    edge_index_.emplace(id, edges_.size());
    edges_.push_back(Edge{std::move(id), u, v});
    return edges_.size() - 1;
  }

  std::size_t add_arc(VertexIndex tail, VertexIndex head, std::string id) {
    check_vertex(tail);
    check_vertex(head);
    if (arc_index_.contains(id)) throw InputError("duplicate arc id '" + id + "'");
    arc_index_.emplace(id, arcs_.size());
    arcs_.push_back(Arc{std::move(id), tail, head});
    return arcs_.size() - 1;
  }

  std::size_t vertex_count() const { return names_.size(); }
  VertexSet vertices() const { return VertexSet::prefix(names_.size()); }
  const std::string& name(VertexIndex v) const { return names_.at(v); }
  std::span<const std::string> names() const { return names_; }

  std::optional<VertexIndex> find_vertex(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  VertexIndex vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw InputError("unknown vertex '" + std::string(name) + "'");
  }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Arc> arcs() const { return arcs_; }

  std::optional<std::size_t> find_edge(std::string_view id) const {
    auto it = edge_index_.find(std::string(id));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_arc(std::string_view id) const {
    auto it = arc_index_.find(std::string(id));
    if (it == arc_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Names a vertex set as "{a,b,c}" in index order.
  std::string format(VertexSet x) const {
    std::string out = "{";
    bool first = true;
    for (auto v : x) {
      if (!first) out += ',';
      out += v < names_.size() ? names_[v] : "#" + std::to_string(v);
      first = false;
    }
    return out + "}";
  }

 private:
  void check_vertex(VertexIndex v) const {
    if (v >= names_.size()) throw InputError("unknown vertex index " + std::to_string(v));
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<Edge> edges_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  std::unordered_map<std::string, std::size_t> arc_index_;
};

struct DirectedPair {
  VertexIndex tail = 0;
  VertexIndex head = 0;

  bool operator==(const DirectedPair&) const = default;
};

/// A direction for every edge of one graph, indexed by edge position.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::vector<DirectedPair> directions) : directions_(std::move(directions)) {}

  /// Every edge points from its smaller to its larger vertex index.
  static Orientation ascending(const MixedGraph& g) {
    std::vector<DirectedPair> dirs;
    dirs.reserve(g.edges().size());
    for (const auto& e : g.edges()) {
      dirs.push_back(e.u <= e.v ? DirectedPair{e.u, e.v} : DirectedPair{e.v, e.u});
    }
    return Orientation(std::move(dirs));
  }

  std::size_t size() const { return directions_.size(); }
  const DirectedPair& operator[](std::size_t edge) const { return directions_.at(edge); }
  std::span<const DirectedPair> directions() const { return directions_; }

  void reverse(std::size_t edge) {
    auto& d = directions_.at(edge);
    std::swap(d.tail, d.head);
  }
  void set(std::size_t edge, DirectedPair d) { directions_.at(edge) = d; }

  bool operator==(const Orientation&) const = default;

 private:
  std::vector<DirectedPair> directions_;
};

enum class ArcOrigin { native_arc, oriented_edge };

struct DirectedArc {
  std::string id;
  VertexIndex tail = 0;
  VertexIndex head = 0;
  ArcOrigin origin = ArcOrigin::native_arc;
  /// Index of the arc or edge this came from in the source graph.
  std::size_t source = 0;
};

/// Plain digraph view: native arcs first (in source order), then one arc per
/// oriented edge.
class DirectedView {
 public:
  DirectedView() = default;
  DirectedView(std::size_t vertex_count, std::vector<DirectedArc> arcs)
      : vertex_count_(vertex_count), arcs_(std::move(arcs)) {
    for (const auto& a : arcs_) {
      if (a.tail >= vertex_count_ || a.head >= vertex_count_) {
        throw InputError("arc '" + a.id + "' has an endpoint outside the vertex range");
      }
    }
  }

  std::size_t vertex_count() const { return vertex_count_; }
  VertexSet vertices() const { return VertexSet::prefix(vertex_count_); }
  std::span<const DirectedArc> arcs() const { return arcs_; }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<DirectedArc> arcs_;
};

/// Pairwise-disjoint nonempty vertex sets.
class Subpartition {
 public:
  Subpartition() = default;
  explicit Subpartition(std::vector<VertexSet> parts) : parts_(std::move(parts)) {
    VertexSet seen;
    for (auto p : parts_) {
      if (p.empty()) throw std::invalid_argument("invalid subpartition: empty part");
      if (p.intersects(seen)) throw std::invalid_argument("invalid subpartition: overlapping parts");
      seen |= p;
    }
    union_ = seen;
  }

  std::span<const VertexSet> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  VertexSet support() const { return union_; }

 private:
  std::vector<VertexSet> parts_;
  VertexSet union_;
};

inline void require_vertex(const MixedGraph& g, VertexIndex v) {
  if (v >= g.vertex_count()) throw InputError("unknown vertex index " + std::to_string(v));
}

inline void require_subset(VertexSet x, VertexSet universe) {
  if (!x.subset_of(universe)) throw std::invalid_argument("vertex set is not contained in the vertex range");
}

/// Vertices reachable from s along arcs (forward) and edges (either way).
inline VertexSet mixed_reachable_set(const MixedGraph& g, VertexIndex s) {
  require_vertex(g, s);
  std::vector<std::vector<VertexIndex>> out(g.vertex_count());
  for (const auto& e : g.edges()) {
    out[e.u].push_back(e.v);
    out[e.v].push_back(e.u);
  }
  for (const auto& a : g.arcs()) out[a.tail].push_back(a.head);

  VertexSet seen = VertexSet::single(s);
  std::deque<VertexIndex> queue{s};
  while (!queue.empty()) {
    const VertexIndex u = queue.front();
    queue.pop_front();
    for (VertexIndex w : out[u]) {
      if (!seen.contains(w)) {
        seen.insert(w);
        queue.push_back(w);
      }
    }
  }
  return seen;
}

inline VertexSet reachable_set(const DirectedView& d, VertexIndex s) {
  if (s >= d.vertex_count()) throw InputError("unknown vertex index " + std::to_string(s));
  std::vector<std::vector<VertexIndex>> out(d.vertex_count());
  for (const auto& a : d.arcs()) out[a.tail].push_back(a.head);
  VertexSet seen = VertexSet::single(s);
  std::deque<VertexIndex> queue{s};
  while (!queue.empty()) {
    const VertexIndex u = queue.front();
    queue.pop_front();
    for (VertexIndex w : out[u]) {
      if (!seen.contains(w)) {
        seen.insert(w);
        queue.push_back(w);
      }
    }
  }
  return seen;
}

/// rho(X): arcs with head in x and tail outside x.
inline int in_degree(const DirectedView& d, VertexSet x) {
  require_subset(x, d.vertices());
  int count = 0;
  for (const auto& a : d.arcs()) {
    if (x.contains(a.head) && !x.contains(a.tail)) ++count;
  }
  return count;
}

/// Native arcs entering x, by arc index.
inline std::vector<std::size_t> entering_arcs(const MixedGraph& g, VertexSet x) {
  std::vector<std::size_t> out;
  const auto arcs = g.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (x.contains(arcs[i].head) && !x.contains(arcs[i].tail)) out.push_back(i);
  }
  return out;
}

struct InducedParts {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> arcs;
};

/// E[X] and A[X]; self-loops on a vertex of x are left out.
inline InducedParts induced(const MixedGraph& g, VertexSet x) {
  InducedParts out;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i].is_loop() && x.contains(edges[i].u) && x.contains(edges[i].v)) out.edges.push_back(i);
  }
  const auto arcs = g.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (!arcs[i].is_loop() && x.contains(arcs[i].tail) && x.contains(arcs[i].head)) out.arcs.push_back(i);
  }
  return out;
}

/// e_E(P): edges with an endpoint in some part and no part holding both ends.
/// Edges from a part to vertices outside every part count.
inline int crossing_edge_count(const MixedGraph& g, const Subpartition& p) {
  require_subset(p.support(), g.vertices());
  int count = 0;
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    if (!p.support().contains(e.u) && !p.support().contains(e.v)) continue;
    bool internal = false;
    for (auto part : p.parts()) {
      if (part.contains(e.u) && part.contains(e.v)) {
        internal = true;
        break;
      }
    }
    if (!internal) ++count;
  }
  return count;
}

/// Native arcs followed by the edges, each in its oriented direction.
inline DirectedView apply_orientation(const MixedGraph& g, const Orientation& o) {
  const auto edges = g.edges();
  if (o.size() != edges.size()) {
    throw std::invalid_argument("orientation covers " + std::to_string(o.size()) + " edges, graph has " +
                                std::to_string(edges.size()));
  }
  std::vector<DirectedArc> arcs;
  arcs.reserve(g.arcs().size() + edges.size());
  const auto native = g.arcs();
  for (std::size_t i = 0; i < native.size(); ++i) {
    arcs.push_back({native[i].id, native[i].tail, native[i].head, ArcOrigin::native_arc, i});
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const auto d = o[i];
    const bool matches = (d.tail == e.u && d.head == e.v) || (d.tail == e.v && d.head == e.u);
    if (!matches) throw std::invalid_argument("orientation of edge '" + e.id + "' does not match its endpoints");
    arcs.push_back({e.id, d.tail, d.head, ArcOrigin::oriented_edge, i});
  }
  return DirectedView(g.vertex_count(), std::move(arcs));
}

/// The native arcs alone, ignoring E.
inline DirectedView native_arcs(const MixedGraph& g) {
  std::vector<DirectedArc> arcs;
  const auto native = g.arcs();
  for (std::size_t i = 0; i < native.size(); ++i) {
    arcs.push_back({native[i].id, native[i].tail, native[i].head, ArcOrigin::native_arc, i});
  }
  return DirectedView(g.vertex_count(), std::move(arcs));
}

/// D = (V, A) for a graph without edges.
inline DirectedView arcs_only(const MixedGraph& g) {
  if (!g.edges().empty()) throw InputError("graph has undirected edges; a pure digraph is required");
  return apply_orientation(g, Orientation{});
}

}  // namespace mixpack
