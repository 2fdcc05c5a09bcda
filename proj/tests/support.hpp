#pragma once

// Fixtures and seeded random instance generators shared by the test binaries.

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "mixpack/mixpack.hpp"

namespace testing_support {

using namespace mixpack;

inline Instance load_fixture(const std::string& name) {
  const std::string path = std::string(MIXPACK_DATA_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw InputError("missing fixture " + path);
  return parse_mixed_graph(in);
}

inline VertexSet named(const MixedGraph& g, std::initializer_list<const char*> names) {
  VertexSet x;
  for (const char* n : names) x.insert(g.vertex(n));
  return x;
}

struct Shape {
  std::size_t max_vertices = 7;
  std::size_t max_edges = 8;
  std::size_t max_arcs = 10;
  std::size_t max_roots = 3;
};

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random mixed graph; endpoints are distinct, parallel elements allowed.
inline Instance random_instance(std::mt19937_64& rng, const Shape& shape) {
  Instance inst;
  const std::size_t n = uniform(rng, 2, shape.max_vertices);
  for (std::size_t v = 0; v < n; ++v) inst.graph.add_vertex("v" + std::to_string(v));
  auto pair = [&] {
    const auto a = static_cast<VertexIndex>(uniform(rng, 0, n - 1));
    auto b = static_cast<VertexIndex>(uniform(rng, 0, n - 2));
    if (b >= a) ++b;
    return std::pair{a, b};
  };
  const std::size_t edges = uniform(rng, 0, shape.max_edges);
  for (std::size_t e = 0; e < edges; ++e) {
    auto [a, b] = pair();
    inst.graph.add_edge(a, b, "e" + std::to_string(e + 1));
  }
  const std::size_t arcs = uniform(rng, 0, shape.max_arcs);
  for (std::size_t i = 0; i < arcs; ++i) {
    auto [a, b] = pair();
    inst.graph.add_arc(a, b, "a" + std::to_string(i + 1));
  }
  const std::size_t k = uniform(rng, 1, shape.max_roots);
  for (std::size_t i = 0; i < k; ++i) inst.roots.push_back(static_cast<VertexIndex>(uniform(rng, 0, n - 1)));
  return inst;
}

/// One root vertex listed k times, every vertex mixed-reachable from it.
inline Instance repeated_root_instance(std::mt19937_64& rng, const Shape& shape) {
  Instance inst = random_instance(rng, shape);
  const std::size_t n = inst.graph.vertex_count();
  const VertexIndex r = inst.roots.front();
  const std::size_t k = uniform(rng, 1, shape.max_roots);
  inst.roots.assign(k, r);
  std::size_t extra = 0;
  for (VertexSet reach = mixed_reachable_set(inst.graph, r); reach.size() < n;
       reach = mixed_reachable_set(inst.graph, r)) {
    std::vector<std::size_t> inside = reach.to_vector();
    std::vector<std::size_t> outside = (VertexSet::prefix(n) - reach).to_vector();
    const auto tail = static_cast<VertexIndex>(inside[uniform(rng, 0, inside.size() - 1)]);
    const auto head = static_cast<VertexIndex>(outside[uniform(rng, 0, outside.size() - 1)]);
    if (uniform(rng, 0, 1) == 0) {
      inst.graph.add_edge(tail, head, "x" + std::to_string(++extra));
    } else {
      inst.graph.add_arc(tail, head, "y" + std::to_string(++extra));
    }
  }
  return inst;
}

/// Random pure digraph with roots.
inline Instance random_digraph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_arcs,
                               std::size_t max_roots) {
  return random_instance(rng, Shape{max_vertices, 0, max_arcs, max_roots});
}

/// Random orientation of every edge of g.
inline Orientation random_orientation(std::mt19937_64& rng, const MixedGraph& g) {
  Orientation o = Orientation::ascending(g);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    if (uniform(rng, 0, 1) == 1) o.reverse(e);
  }
  return o;
}

inline std::string describe(const Instance& inst) {
  std::string s;
  for (auto v : inst.graph.vertices()) s += "vertex " + inst.graph.name(static_cast<VertexIndex>(v)) + "\n";
  for (const auto& e : inst.graph.edges()) s += "edge " + inst.graph.name(e.u) + " " + inst.graph.name(e.v) + "\n";
  for (const auto& a : inst.graph.arcs()) s += "arc " + inst.graph.name(a.tail) + " " + inst.graph.name(a.head) + "\n";
  for (auto r : inst.roots) s += "root " + inst.graph.name(r) + "\n";
  return s;
}

}  // namespace testing_support
