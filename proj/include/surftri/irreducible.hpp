#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surftri/canon.hpp"
#include "surftri/cycles.hpp"
#include "surftri/surface_map.hpp"

namespace surftri {

enum class CutKind { TwoSided, OneSided };

/// One way of reaching `target`: cut/cap along a 3-cycle of the given kind,
/// landing on `base`.
struct PathwaySpec {
  SurfaceClass target;
  SurfaceClass base;
  CutKind cut = CutKind::TwoSided;
  OrientationRelation relation = OrientationRelation::Unoriented;

  /// "S0/two", "N1/one", ...
  std::string name() const;
};

/// Empty for S0.
std::vector<PathwaySpec> pathways_for(SurfaceClass target);

struct FramedTriangulation {
  Triangulation t;
  FrameLabels frame;
};

enum class EdgeClass { Frame, Interior, Support, Crossframe };

EdgeClass classify_edge(const FramedTriangulation& ft, VertexId a, VertexId b);
bool has_crossframe_edge(const FramedTriangulation& ft);

/// dist(u_i, v_i) >= 3 for every i.
bool frame_pairs_far_apart(const FramedTriangulation& ft);

/// The glued triangulation when ft is pre-irreducible for p, else nullopt.
std::optional<Triangulation> glue_pre_irreducible(const FramedTriangulation& ft, const PathwaySpec& p);
bool is_pre_irreducible(const FramedTriangulation& ft, const PathwaySpec& p);

/// Canonical code of a framed triangulation (frame kept up to its own symmetries).
CanonicalCode framed_code(const FramedTriangulation& ft);

struct StageOptions {
  /// A node of this size that still has an admissible split throws BudgetExceeded.
  int max_vertices = 32;
  /// 1 runs the serial reference kernel; 0 uses the OpenMP default.
  int jobs = 0;
};

/// Framed triangulations of p.base with every contractible vertex on the frame.
std::vector<FramedTriangulation> stage1(const PathwaySpec& p, const std::vector<Triangulation>& base_irreducibles,
                                        const StageOptions& opts = {});

/// Frame-vertex splits keeping the frame and leaving no contractible interior
/// edge; keeps results without crossframe edges.
std::vector<FramedTriangulation> stage2(const std::vector<FramedTriangulation>& in, const StageOptions& opts = {});

/// Interior-vertex splits preserving the short-path conditions on
/// contractible edges and vertices; keeps results whose frame pairs are at
/// distance >= 3.  These are the pre-irreducible candidates.
std::vector<FramedTriangulation> stage3_candidates(const std::vector<FramedTriangulation>& in,
                                                   const StageOptions& opts = {});

/// The short-path conditions checked on every stage-3 split.
bool short_path_conditions(const FramedTriangulation& ft);

struct Stage3Result {
  std::vector<Triangulation> irreducibles;  // deduplicated, sorted by code
  std::map<CanonicalCode, std::uint64_t> multiplicity;
  std::uint64_t pre_irreducible = 0;
  std::uint64_t candidates = 0;
};

/// Glues every candidate and keeps the irreducible triangulations of p.target.
Stage3Result glue_candidates(const std::vector<FramedTriangulation>& candidates, const PathwaySpec& p);

Stage3Result stage3(const std::vector<FramedTriangulation>& in, const PathwaySpec& p, const StageOptions& opts = {});

/// Greedy contraction until no contractible edge is left.
Triangulation reduce_to_irreducible(const Triangulation& t);

/// Contracts interior edges first, then support edges, then frame and
/// crossframe edges.
Triangulation reduce_to_irreducible(const FramedTriangulation& ft);

struct PipelineOptions {
  StageOptions stage;
  /// Only run this pathway (by name); empty runs all.
  std::string pathway;
  /// Stage outputs are written here and reused when already complete.
  std::string stage_dump_dir;
  /// Stop after this stage (1..3); results are then empty.
  int stop_after_stage = 3;
};

struct PathwayReport {
  PathwaySpec pathway;
  std::size_t stage1 = 0;
  std::size_t stage2 = 0;
  std::uint64_t candidates = 0;
  std::uint64_t pre_irreducible = 0;
  std::size_t irreducible = 0;
};

struct PipelineResult {
  std::vector<Triangulation> irreducibles;  // sorted by canonical code
  std::vector<PathwayReport> reports;
  /// Pre-irreducible framed classes per irreducible code, summed over pathways.
  std::map<CanonicalCode, std::uint64_t> multiplicity;
};

/// `bases` maps each base surface to its complete irreducible set.
PipelineResult generate_irreducibles(SurfaceClass target, const std::map<SurfaceClass, std::vector<Triangulation>>& bases,
                                     const PipelineOptions& opts = {});

}  // namespace surftri
