#pragma once

#include <cstddef>

#include "mixpack/errors.hpp"

namespace mixpack {

/// Limits for the exhaustive code paths. Everything exponential in the library is
/// gated by one of these.
struct Bounds {
  /// |V_j| for requirement tables and coverage scans; |V| for the cut-condition scan.
  std::size_t max_enum_vertices = 20;
  /// |E_j| for the exhaustive orientation fallback.
  std::size_t max_fallback_edges = 16;
  /// Atom size for the subpartition (certificate) search.
  std::size_t max_partition_vertices = 12;
  /// |E| for the brute-force feasibility oracle.
  std::size_t max_bruteforce_edges = 12;
};

inline void require_within(const char* what, std::size_t value, std::size_t limit) {
  if (value > limit) throw CapacityError(what, value, limit);
}

}  // namespace mixpack
