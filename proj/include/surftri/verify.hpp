#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "surftri/canon.hpp"
#include "surftri/surface_map.hpp"

namespace surftri {

/// Largest vertex count the face-addition oracle accepts.
inline constexpr int kOracleMaxVertices = 16;

/// Every triangulation of `surface` with n vertices, found by adding faces one
/// at a time to the lexicographically smallest open edge.  Shares no code with
/// vertex splitting.  Sorted by canonical code.
std::vector<Triangulation> oracle_enumerate(SurfaceClass surface, int n, int jobs = 0);

inline constexpr std::size_t kDefaultMemoryCapBytes = std::size_t{4} << 30;

struct FlipClosure {
  SurfaceClass surface;
  int n = 0;
  std::set<CanonicalCode> classes;
  std::uint64_t edges_explored = 0;
};

/// All classes reachable from `start` by legal diagonal flips.  Throws
/// MemoryCapExceeded when the stored codes pass the cap.
FlipClosure flip_closure(const Triangulation& start, std::size_t memory_cap_bytes = kDefaultMemoryCapBytes,
                         int jobs = 0);

struct RandomSearchOptions {
  int start_n = 14;
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 1;
  /// Flip attempts per vertex when mixing the start triangulation.
  int flips_per_vertex = 10;
  int jobs = 0;
};

/// Hits per irreducible code.  Each iteration grows a random triangulation of
/// start_n vertices by random splits from one of `seeds`, mixes it with random
/// flips, then contracts random contractible edges until none is left.
/// Iteration k draws from its own generator seeded by (seed, k), so the result
/// does not depend on the number of workers.
std::map<CanonicalCode, std::uint64_t> random_contract_search(std::span<const Triangulation> seeds,
                                                              const RandomSearchOptions& opts);

/// Classes of nonseparating 3-cycles of t under Aut(t).
int nonseparating_3cycle_orbits(const Triangulation& t);

struct RedundancyReport {
  bool ok = true;
  std::uint64_t expected = 0;  // sum of nonseparating 3-cycle orbits
  std::uint64_t observed = 0;  // pre-irreducible framed classes
  std::optional<CanonicalCode> first_mismatch;
};

/// Compares, per irreducible, the nonseparating 3-cycle orbit count with the
/// number of pre-irreducible framed triangulations that glued to it.
RedundancyReport redundancy_check(std::span<const Triangulation> irreducibles,
                                  const std::map<CanonicalCode, std::uint64_t>& multiplicity);

/// Members whose flip closure contains only irreducible triangulations.
std::vector<Triangulation> classify_pseudo_minimal(std::span<const Triangulation> irreducibles,
                                                   std::size_t memory_cap_bytes = kDefaultMemoryCapBytes);

}  // namespace surftri
