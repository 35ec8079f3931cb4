#include <numeric>
#include <random>

#include "doctest.h"
#include "surftri/canon.hpp"
#include "surftri/cycles.hpp"
#include "surftri/surface_map.hpp"

using namespace surftri;

namespace {

Triangulation shuffled(const Triangulation& t, std::mt19937_64& rng) {
  std::vector<VertexId> perm(t.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(t, perm);
}

}  // namespace

TEST_CASE("standard triangulations") {
  CHECK(surface_class(tetrahedron()) == SurfaceClass{true, 0});
  CHECK(is_irreducible(tetrahedron()));
  CHECK(surface_class(octahedron()) == SurfaceClass{true, 0});
  CHECK(contractible_edges(octahedron()).size() == 12);
  CHECK(surface_class(k6_projective_plane()) == SurfaceClass{false, 1});
  CHECK(is_irreducible(k6_projective_plane()));
  CHECK(surface_class(k7_torus()) == SurfaceClass{true, 1});
  CHECK(is_irreducible(k7_torus()));
  CHECK(k7_torus().num_edges() == 21);
}

TEST_CASE("split then contract restores the triangulation") {
  std::mt19937_64 rng(7);
  Triangulation t = k7_torus();
  for (int step = 0; step < 200; ++step) {
    const VertexId a = static_cast<VertexId>(rng() % t.num_vertices());
    const int d = t.degree(a);
    const int i = static_cast<int>(rng() % d);
    const int s = 2 + static_cast<int>(rng() % (d - 1));
    Triangulation u = split_vertex(t, a, i, s);
    u.validate();
    CHECK(surface_class(u) == surface_class(t));
    CHECK(is_contractible(u, {a, t.num_vertices()}));
    CHECK(canonical_code(contract(u, {a, t.num_vertices()})) == canonical_code(t));
    if (u.num_vertices() < 14) t = u;
  }
}

TEST_CASE("canonical code ignores labels and reflection") {
  std::mt19937_64 rng(11);
  for (const auto& t : {octahedron(), k6_projective_plane(), k7_torus()}) {
    const auto code = canonical_code(t);
    for (int k = 0; k < 10; ++k) {
      CHECK(canonical_code(shuffled(t, rng)) == code);
      CHECK(canonical_code(mirror(shuffled(t, rng))) == code);
    }
  }
  CHECK(automorphisms(tetrahedron()).size() == 24);
  CHECK(automorphisms(octahedron()).size() == 48);
  // The K7 torus map is chiral: no reflection is an automorphism.
  CHECK(automorphisms(k7_torus()).size() == 42);
  CHECK(automorphisms(k7_torus(), CanonOptions{false, nullptr}).size() == 42);
  CHECK(canonical_code(k7_torus(), {false, nullptr}) != canonical_code(mirror(k7_torus()), {false, nullptr}));
  CHECK(automorphisms(octahedron(), CanonOptions{false, nullptr}).size() == 24);
  CHECK(automorphisms(k6_projective_plane()).size() == 60);
}

TEST_CASE("cut and reglue") {
  const Triangulation torus = k7_torus();
  const auto cycles = nonseparating_3cycles(torus);
  REQUIRE(!cycles.empty());
  for (const auto& c : cycles) {
    const auto cut = cut_cap(torus, c);
    CHECK(cut.frame.kind == FrameKind::Handle);
    CHECK(surface_class(cut.t) == SurfaceClass{true, 0});
    CHECK(cut.t.num_vertices() == 10);
    CHECK(orientation_relation(cut.t, cut.frame) == OrientationRelation::Opposite);
    CHECK(canonical_code(inverse_cut_cap(cut.t, cut.frame)) == canonical_code(torus));
  }
  const Triangulation rp2 = k6_projective_plane();
  for (const auto& c : nonfacial_3cycles(rp2)) {
    const auto cls = classify_3cycle(rp2, c);
    CHECK(cls.one_sided);
    const auto cut = cut_cap(rp2, c);
    CHECK(cut.frame.kind == FrameKind::Crosscap);
    CHECK(surface_class(cut.t) == SurfaceClass{true, 0});
    CHECK(cut.t.num_vertices() == 10);
    CHECK(frame_valid(cut.t, cut.frame));
    CHECK(canonical_code(inverse_cut_cap(cut.t, cut.frame)) == canonical_code(rp2));
  }
  const auto pair = find_transverse_pair(torus, 0);
  CHECK(pair.first[0] == 0);
  CHECK(pair.second[0] == 0);
}
