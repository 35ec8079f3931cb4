#include <bit>

#include "doctest.h"
#include "surftri/canon.hpp"
#include "surftri/cycles.hpp"
#include "surftri/verify.hpp"

using namespace surftri;

namespace {

// K4 with a vertex inserted into face 0 1 2: that triangle now separates.
Triangulation stacked_k4() {
  return Triangulation::from_faces(std::vector<Face>{{0, 1, 4}, {1, 2, 4}, {2, 0, 4}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}});
}

int count_faces_of(const Triangulation& t, const std::vector<Cycle3>& cs) {
  int k = 0;
  for (const auto& c : cs) k += t.has_face(c[0], c[1], c[2]);
  return k;
}

}  // namespace

TEST_CASE("3-cycle classification on small maps") {
  const Triangulation rp2 = k6_projective_plane();
  const auto rp2_cycles = nonfacial_3cycles(rp2);
  CHECK(rp2_cycles.size() == 10);  // 20 triangles of K6 minus 10 faces
  CHECK(count_faces_of(rp2, rp2_cycles) == 0);
  for (const auto& c : rp2_cycles) CHECK(classify_3cycle(rp2, c) == CycleClass{false, false, true});

  const Triangulation torus = k7_torus();
  const auto torus_cycles = nonfacial_3cycles(torus);
  CHECK(torus_cycles.size() == 21);  // 35 triangles of K7 minus 14 faces
  for (const auto& c : torus_cycles) CHECK(classify_3cycle(torus, c) == CycleClass{false, false, false});

  const Triangulation s = stacked_k4();
  REQUIRE(s.num_vertices() == 5);
  CHECK(classify_3cycle(s, {0, 1, 2}) == CycleClass{false, true, false});
  CHECK(classify_3cycle(s, {0, 1, 3}) == CycleClass{true, true, false});
  CHECK(nonseparating_3cycles(s).empty());
  CHECK(nonseparating_3cycles(octahedron()).empty());
}

TEST_CASE("3-cycle errors") {
  const Triangulation o = octahedron();
  // Antipodal vertices 0 and 1 are not adjacent.
  CHECK_THROWS_AS(classify_3cycle(o, {0, 1, 2}), Error);
  try {
    classify_3cycle(o, {0, 0, 2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACycle);
  }
  const Triangulation t = k7_torus();
  const Face f = t.faces().front();
  try {
    cut_cap(t, {f[0], f[1], f[2]});
    FAIL("facial cycle was cut");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongCycleClass);
  }
  const auto c = nonfacial_3cycles(k6_projective_plane()).front();
  try {
    cut_cap_two_sided(k6_projective_plane(), c);
    FAIL("one-sided cycle cut as two-sided");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongCycleClass);
  }
}

TEST_CASE("cut/cap lowers the Euler genus and the frame is well formed") {
  for (const auto& t : {k7_torus(), k6_projective_plane()}) {
    for (const auto& c : nonseparating_3cycles(t)) {
      const auto cut = cut_cap(t, c);
      const bool one = classify_3cycle(t, c).one_sided;
      CHECK(euler_genus(cut.t) == euler_genus(t) - (one ? 1 : 2));
      CHECK(cut.t.num_vertices() == t.num_vertices() + (one ? 4 : 3));
      CHECK(frame_valid(cut.t, cut.frame));
      const VertexMask fm = cut.frame.vertices();
      CHECK(std::popcount(fm) == (one ? 7 : 6));
    }
  }
}

TEST_CASE("frame edges") {
  FrameLabels h;
  h.kind = FrameKind::Handle;
  h.u = {0, 1, 2};
  h.v = {3, 4, 5};
  CHECK(h.is_frame_edge(0, 2));
  CHECK(h.is_frame_edge(4, 3));
  CHECK_FALSE(h.is_frame_edge(0, 3));
  FrameLabels c;
  c.kind = FrameKind::Crosscap;
  c.hub = 6;
  c.u = {0, 1, 2};
  c.v = {3, 4, 5};
  CHECK(c.is_frame_edge(6, 4));
  CHECK(c.is_frame_edge(2, 3));
  CHECK(c.is_frame_edge(5, 0));
  CHECK_FALSE(c.is_frame_edge(0, 2));
  CHECK_FALSE(c.is_frame_edge(0, 3));
  c.rename(6, 9);
  CHECK(c.hub == 9);
  CHECK(c.vertices() == (bit(0) | bit(1) | bit(2) | bit(3) | bit(4) | bit(5) | bit(9)));
}

TEST_CASE("regluing a handle frame in all pairings") {
  const Triangulation torus = k7_torus();
  const auto cut = cut_cap(torus, nonseparating_3cycles(torus).front());
  const auto all = inverse_cut_cap_all(cut.t, cut.frame);
  int tori = 0, klein = 0;
  for (const auto& [frame, g] : all) {
    const auto rel = orientation_relation(cut.t, frame);
    if (surface_class(g) == SurfaceClass{true, 1}) {
      ++tori;
      CHECK(rel == OrientationRelation::Opposite);
    } else {
      ++klein;
      CHECK(surface_class(g) == SurfaceClass{false, 2});
      CHECK(rel == OrientationRelation::Same);
    }
  }
  CHECK(tori >= 1);
  CHECK(tori + klein == static_cast<int>(all.size()));
  CHECK(all.size() <= 6);
}

TEST_CASE("transverse pairs interleave in the link") {
  for (const auto& t : {k7_torus(), k6_projective_plane()}) {
    for (VertexId v = 0; v < t.num_vertices(); ++v) {
      const auto p = find_transverse_pair(t, v);
      CHECK(p.first[0] == v);
      CHECK(p.second[0] == v);
      CHECK_FALSE(classify_3cycle(t, p.first).separating);
      CHECK_FALSE(classify_3cycle(t, p.second).separating);
      CHECK_FALSE(classify_3cycle(t, p.first).facial);
      CHECK_FALSE(classify_3cycle(t, p.second).facial);
      // second's endpoints sit on opposite arcs of the link cut by first's.
      const int d = t.degree(v);
      const int i = t.position(v, p.first[1]), k = t.position(v, p.first[2]);
      auto inside = [&](VertexId x) {
        const int j = t.position(v, x);
        return ((j - i + d) % d) < ((k - i + d) % d);
      };
      CHECK(inside(p.second[1]) != inside(p.second[2]));
    }
  }
  try {
    find_transverse_pair(octahedron(), 0);
    FAIL("reducible input accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIrreducible);
  }
}
