#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surftri/cycles.hpp"
#include "surftri/surface_map.hpp"

namespace surftri {

/// Byte string identifying a triangulation up to relabelling and reflection.
/// Two triangulations get the same code exactly when they are isomorphic.
using CanonicalCode = std::vector<std::uint8_t>;

struct CanonOptions {
  /// When false, an orientable triangulation and its mirror image get
  /// different codes.  Has no effect on nonorientable input.
  bool identify_reflections = true;
  /// Optional frame; the code then also identifies the frame up to its own
  /// symmetries, and only frame-preserving isomorphisms count.
  const FrameLabels* frame = nullptr;
};

/// A starting flag of the canonical traversal: vertex, first neighbour, direction.
struct TraversalStart {
  VertexId vertex = -1;
  VertexId first = -1;
  int dir = 1;
};

struct CanonicalForm {
  CanonicalCode code;
  /// Every start that attains the minimal code.
  std::vector<TraversalStart> optimal;
};

CanonicalCode canonical_code(const Triangulation& t, const CanonOptions& opts = {});

CanonicalForm canonical_form(const Triangulation& t, const CanonOptions& opts = {});

/// Rebuilds a triangulation from its code, labelled in traversal order.
/// `consumed` receives the length of the graph part; a frame code continues
/// after it.  Throws Parse on malformed input.
Triangulation decode_canonical_code(std::span<const std::uint8_t> code, std::size_t* consumed = nullptr);

/// label[v] for the traversal from `start`.
std::vector<VertexId> traversal_labels(const Triangulation& t, const TraversalStart& start);

/// The automorphism group (including reflections unless disabled) as vertex
/// permutations; the identity is always first.
std::vector<std::vector<VertexId>> automorphisms(const Triangulation& t, const CanonicalForm& form);
std::vector<std::vector<VertexId>> automorphisms(const Triangulation& t, const CanonOptions& opts = {});

/// Copy of t relabelled by the first optimal start, with every rotation
/// starting at the vertex's traversal parent and running in its traversal
/// direction.  Equal inputs up to isomorphism give identical results.
Triangulation canonical_triangulation(const Triangulation& t);

struct CanonicalFramed {
  Triangulation t;
  FrameLabels frame;
};

/// Framed analogue of canonical_triangulation.
CanonicalFramed canonical_framed(const Triangulation& t, const FrameLabels& frame);

}  // namespace surftri
