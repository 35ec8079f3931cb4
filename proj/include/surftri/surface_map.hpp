#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surftri/error.hpp"

namespace surftri {

using VertexId = int;
using VertexMask = std::uint64_t;

/// Hard limit on vertex count; adjacency is kept as one 64-bit mask per vertex.
inline constexpr int kMaxVertices = 64;

inline VertexMask bit(VertexId v) { return VertexMask{1} << v; }

/// S_g (orientable, genus g) or N_g (nonorientable, genus g >= 1).
struct SurfaceClass {
  bool orientable = true;
  int genus = 0;

  int euler_genus() const { return orientable ? 2 * genus : genus; }
  int euler_characteristic() const { return 2 - euler_genus(); }

  /// "S0", "S1", "N2", ...
  std::string name() const;
  static SurfaceClass parse(std::string_view name);
  static SurfaceClass from_euler_genus(bool orientable, int euler_genus);

  auto operator<=>(const SurfaceClass&) const = default;
};

struct EdgeRef {
  VertexId a = -1;
  VertexId b = -1;

  auto operator<=>(const EdgeRef&) const = default;
};

using Face = std::array<VertexId, 3>;

/// A triangulation of a closed surface stored as a rotation system: for every
/// vertex the cyclic order of its neighbours around it (its link).  The local
/// direction of each rotation is arbitrary; edge signatures record whether the
/// directions at the two endpoints agree.  Because the graph is simple and every
/// face is a triangle, the rotations alone determine the surface.
class Triangulation {
 public:
  Triangulation() = default;

  /// Validates and takes ownership of the rotations.  Directions are
  /// normalized so that a BFS spanning tree carries signature +1.
  static Triangulation from_rotations(std::vector<std::vector<VertexId>> rotations);

  /// As from_rotations but trusts the caller; used by the local mutations,
  /// whose outputs are valid by construction.
  static Triangulation adopt(std::vector<std::vector<VertexId>> rotations);

  /// Builds from an unordered face list.  Vertex ids may be sparse; they are
  /// compacted in increasing order.  Throws NotSimple when the faces do not
  /// form a simple closed surface.
  static Triangulation from_faces(std::span<const Face> faces);

  int num_vertices() const { return static_cast<int>(rot_.size()); }
  int num_edges() const { return edges_; }
  int num_faces() const { return 2 * edges_ / 3; }

  int degree(VertexId v) const { return static_cast<int>(rot_[v].size()); }
  std::span<const VertexId> rotation(VertexId v) const { return rot_[v]; }
  const std::vector<std::vector<VertexId>>& rotations() const { return rot_; }

  VertexMask neighbors(VertexId v) const { return adj_[v]; }
  bool adjacent(VertexId a, VertexId b) const { return (adj_[a] >> b) & 1U; }

  /// Index of `b` in the rotation of `a`, or -1.
  int position(VertexId a, VertexId b) const;

  /// +1 when the rotation directions at a and b agree across edge ab.
  int signature(VertexId a, VertexId b) const;

  bool has_face(VertexId a, VertexId b, VertexId c) const;
  std::vector<Face> faces() const;
  std::vector<EdgeRef> edges() const;

  /// Throws InvalidTriangulation describing the first broken invariant.
  void validate() const;

  bool operator==(const Triangulation& other) const { return rot_ == other.rot_; }

 private:
  void rebuild_adjacency();
  void normalize_signatures();

  std::vector<std::vector<VertexId>> rot_;
  std::vector<VertexMask> adj_;
  int edges_ = 0;
};

// Standard small triangulations.
Triangulation tetrahedron();
Triangulation octahedron();
/// K6 on the projective plane (the 6-vertex RP^2).
Triangulation k6_projective_plane();
/// K7 on the torus (the 7-vertex Möbius torus).
Triangulation k7_torus();

int euler_genus(const Triangulation& t);
bool is_orientable(const Triangulation& t);
SurfaceClass surface_class(const Triangulation& t);

/// Neighbours of v in rotation order.
std::vector<VertexId> link(const Triangulation& t, VertexId v);

/// Common neighbours of the endpoints; each closes one 3-cycle through e.
int count_3cycles_through(const Triangulation& t, EdgeRef e);

bool is_k4_sphere(const Triangulation& t);
bool is_contractible(const Triangulation& t, EdgeRef e);
bool is_irreducible(const Triangulation& t);

/// Vertices that end at least one contractible edge.
VertexMask contractible_vertices(const Triangulation& t);
std::vector<EdgeRef> contractible_edges(const Triangulation& t);

/// Contract e = (a, c): c is merged into a, and c's id is removed by moving
/// the last vertex into its slot.
Triangulation contract(const Triangulation& t, EdgeRef e);

/// Split `a` along the path b a c where b = rotation(a)[i] and c is s-1 steps
/// further along the rotation (2 <= s <= deg).  The piece holding the faces
/// between b and c keeps id `a`; the other piece gets id num_vertices().
Triangulation split_vertex(const Triangulation& t, VertexId a, int i, int s);

/// Same split named by endpoints: a keeps the arc running from b to c in
/// rotation order.
Triangulation split_vertex_between(const Triangulation& t, VertexId a, VertexId b, VertexId c);

/// Replaces edge ac by the opposite diagonal bd of the quadrilateral abcd.
Triangulation diagonal_flip(const Triangulation& t, EdgeRef e);
bool is_flippable(const Triangulation& t, EdgeRef e);

/// Relabel vertices: vertex v becomes perm[v].
Triangulation relabel(const Triangulation& t, std::span<const VertexId> perm);

/// Reverses every rotation (mirror image).
Triangulation mirror(const Triangulation& t);

}  // namespace surftri
