#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "surftri/canon.hpp"
#include "surftri/surface_map.hpp"

namespace surftri {

/// One vertex split: a = vertex, b = rotation(a)[i], c = rotation(a)[i+s-1].
/// Only 2 <= s <= deg(a) - i is produced, so each unordered {b, c} appears once.
struct SplitMove {
  VertexId vertex = -1;
  int i = 0;
  int s = 2;

  auto operator<=>(const SplitMove&) const = default;
};

std::vector<SplitMove> enumerate_splits(const Triangulation& t);
Triangulation apply_split(const Triangulation& t, const SplitMove& m);

/// Splits up to automorphisms of t: one move per orbit.
std::vector<SplitMove> split_orbit_representatives(const Triangulation& t, const CanonicalForm& form);

struct GenerationSchema {
  std::vector<Triangulation> basis;
  /// Whether the split producing `child` from `parent` may be applied.
  std::function<bool(const Triangulation& parent, const Triangulation& child)> rule;
  std::function<bool(const Triangulation&)> filter;
};

struct SchemaOptions {
  /// A node of this size with an admissible child throws BudgetExceeded.
  int max_vertices = kMaxVertices;
  /// 1 runs the serial reference; 0 uses the OpenMP default.
  int jobs = 0;
};

/// Emits one representative per isomorphism class of the generated set that
/// passes the filter.  Children are accepted only along their canonical
/// construction path, so no seen-set is kept.  Emission order depends only on
/// the schema, not on the number of workers.
void run_schema(const GenerationSchema& schema, const SchemaOptions& opts,
                const std::function<void(const Triangulation&)>& sink);

/// True when contracting new_edge in child is the canonical reduction of child.
bool is_canonical_extension(const Triangulation& child, EdgeRef new_edge);

/// All triangulations of `surface` with exactly n vertices and minimum degree
/// at least min_degree.  `irreducibles` must be the complete irreducible set.
std::vector<Triangulation> all_triangulations(SurfaceClass surface, int n, std::span<const Triangulation> irreducibles,
                                              int min_degree = 3, int jobs = 0);

/// One representative per canonical code, keyed by code.
class Dedup {
 public:
  /// False when an isomorphic triangulation is already present.
  bool insert(const Triangulation& t);
  bool insert(CanonicalCode code, const Triangulation& t);
  std::size_t size() const { return items_.size(); }
  const std::map<CanonicalCode, Triangulation>& items() const { return items_; }
  std::vector<Triangulation> values() const;

 private:
  std::map<CanonicalCode, Triangulation> items_;
};

}  // namespace surftri
