#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "surftri/surface_map.hpp"

namespace surftri {

using Cycle3 = std::array<VertexId, 3>;

struct CycleClass {
  bool facial = false;
  bool separating = false;
  bool one_sided = false;

  auto operator<=>(const CycleClass&) const = default;
};

enum class FrameKind : std::uint8_t { Handle = 1, Crosscap = 2 };

/// The capping subcomplex left by a cut/cap.  u[i] and v[i] are the two
/// copies of the same original vertex.  A handle frame is the pair of faces
/// u0u1u2 and v0v1v2; a crosscap frame is the hub of degree 6 whose link
/// reads u0 u1 u2 v0 v1 v2.
struct FrameLabels {
  FrameKind kind = FrameKind::Handle;
  std::array<VertexId, 3> u{-1, -1, -1};
  std::array<VertexId, 3> v{-1, -1, -1};
  VertexId hub = -1;

  VertexMask vertices() const;
  bool is_frame_edge(VertexId a, VertexId b) const;
  /// Renames vertex `from` to `to` wherever it appears.
  void rename(VertexId from, VertexId to);

  auto operator<=>(const FrameLabels&) const = default;
};

/// How the two cap faces of a handle frame sit relative to each other.
enum class OrientationRelation { Opposite, Same, Unoriented };

const char* to_string(OrientationRelation r);

/// Throws NotACycle when the vertices are not pairwise adjacent and distinct.
CycleClass classify_3cycle(const Triangulation& t, Cycle3 c);

/// All 3-cycles that do not bound a face, each listed once with c[0]<c[1]<c[2].
std::vector<Cycle3> nonfacial_3cycles(const Triangulation& t);
std::vector<Cycle3> nonseparating_3cycles(const Triangulation& t);

struct TransversePair {
  Cycle3 first;   // v, v_i, v_k
  Cycle3 second;  // v, v_j, v_l
};

/// Two nonseparating 3-cycles through v whose other endpoints interleave in lk(v).
TransversePair find_transverse_pair(const Triangulation& t, VertexId v);

struct CutResult {
  Triangulation t;
  FrameLabels frame;
};

CutResult cut_cap_two_sided(const Triangulation& t, Cycle3 c);
CutResult cut_cap_one_sided(const Triangulation& t, Cycle3 c);
/// Dispatches on the side count of c.
CutResult cut_cap(const Triangulation& t, Cycle3 c);

bool frame_valid(const Triangulation& t, const FrameLabels& f);

/// Relation between the cap faces (u0,u1,u2) and (v0,v1,v2) of a handle frame.
OrientationRelation orientation_relation(const Triangulation& t, const FrameLabels& f);

/// Glues the frame back: removes the cap faces (or the hub) and identifies
/// v[i] with u[i].  Throws NotSimple when the result is not a simple
/// triangulation and InvalidFrame when the frame is not present.
Triangulation inverse_cut_cap(const Triangulation& t, const FrameLabels& f);

/// Every legal regluing of a handle frame: the three cyclic pairings of each
/// orientation relation.  Non-simple gluings are skipped.  A crosscap frame has
/// exactly one gluing.
std::vector<std::pair<FrameLabels, Triangulation>> inverse_cut_cap_all(const Triangulation& t, const FrameLabels& f);

}  // namespace surftri
