#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "surftri/canon.hpp"
#include "surftri/cycles.hpp"
#include "surftri/verify.hpp"

using namespace surftri;

namespace {

Triangulation random_relabel(const Triangulation& t, std::mt19937_64& rng) {
  std::vector<VertexId> perm(t.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(t, perm);
}

Triangulation random_growth(Triangulation t, int n, std::mt19937_64& rng) {
  while (t.num_vertices() < n) {
    const VertexId a = static_cast<VertexId>(rng() % t.num_vertices());
    const int d = t.degree(a);
    t = split_vertex(t, a, static_cast<int>(rng() % d), 2 + static_cast<int>(rng() % (d - 1)));
  }
  return t;
}

}  // namespace

TEST_CASE("canonical code is a class function") {
  std::mt19937_64 rng(2024);
  const std::vector<Triangulation> roots{tetrahedron(), k6_projective_plane(), k7_torus()};
  for (int k = 0; k < 1000; ++k) {
    const Triangulation t = random_growth(roots[k % 3], 5 + static_cast<int>(rng() % 8), rng);
    const auto code = canonical_code(t);
    Triangulation u = random_relabel(t, rng);
    if (rng() & 1) u = mirror(u);
    REQUIRE(canonical_code(u) == code);
  }
}

TEST_CASE("distinct classes get distinct codes") {
  // The oracle keys classes by canonical code; compare against counts it
  // finds with a code-free invariant as a sanity floor.
  for (int n = 6; n <= 8; ++n) {
    const auto all = oracle_enumerate({true, 0}, n, 1);
    std::set<CanonicalCode> codes;
    for (const auto& t : all) codes.insert(canonical_code(t));
    CHECK(codes.size() == all.size());
  }
  CHECK(oracle_enumerate({true, 0}, 6, 1).size() == 2);
  CHECK(oracle_enumerate({true, 0}, 7, 1).size() == 5);
  CHECK(oracle_enumerate({true, 0}, 8, 1).size() == 14);
}

TEST_CASE("code length and canonical relabelling") {
  const Triangulation t = k7_torus();
  CHECK(canonical_code(t).size() == static_cast<std::size_t>(t.num_vertices() + 2 * t.num_edges()));
  std::mt19937_64 rng(5);
  const Triangulation c = canonical_triangulation(t);
  CHECK(canonical_triangulation(random_relabel(t, rng)) == c);
  CHECK(canonical_triangulation(mirror(random_relabel(t, rng))) == c);
  CHECK(canonical_code(c) == canonical_code(t));
}

TEST_CASE("codes decode to the class they name") {
  std::mt19937_64 rng(77);
  const std::vector<Triangulation> roots{tetrahedron(), k6_projective_plane(), k7_torus()};
  for (int k = 0; k < 300; ++k) {
    const Triangulation t = random_growth(roots[k % 3], 5 + static_cast<int>(rng() % 10), rng);
    const auto code = canonical_code(t);
    std::size_t used = 0;
    const Triangulation d = decode_canonical_code(code, &used);
    CHECK(used == code.size());
    CHECK(surface_class(d) == surface_class(t));
    CHECK(canonical_code(d) == code);
  }
  const auto code = canonical_code(octahedron());
  CHECK_THROWS_AS(decode_canonical_code(std::span(code).first(code.size() - 1)), Error);
}

TEST_CASE("automorphisms are structure preserving") {
  for (const auto& t : {octahedron(), k6_projective_plane(), k7_torus()}) {
    const auto autos = automorphisms(t);
    for (std::size_t i = 0; i < t.num_vertices(); ++i) CHECK(autos.front()[i] == static_cast<VertexId>(i));
    for (const auto& p : autos) {
      for (const auto& e : t.edges()) CHECK(t.adjacent(p[e.a], p[e.b]));
      for (const auto& f : t.faces()) CHECK(t.has_face(p[f[0]], p[f[1]], p[f[2]]));
    }
  }
}

TEST_CASE("framed codes respect frame symmetry only") {
  const Triangulation torus = k7_torus();
  const auto cycles = nonseparating_3cycles(torus);
  const auto cut = cut_cap(torus, cycles.front());
  CanonOptions opts;
  opts.frame = &cut.frame;
  const auto code = canonical_code(cut.t, opts);

  // Reordering the pairs or swapping the two cap faces is the same frame.
  FrameLabels g = cut.frame;
  std::swap(g.u, g.v);
  std::swap(g.u[0], g.u[2]);
  std::swap(g.v[0], g.v[2]);
  opts.frame = &g;
  CHECK(canonical_code(cut.t, opts) == code);

  // A different pairing is a different frame.
  FrameLabels h = cut.frame;
  std::swap(h.v[0], h.v[1]);
  opts.frame = &h;
  CHECK(canonical_code(cut.t, opts) != code);

  // Relabelling the whole framed triangulation.
  std::mt19937_64 rng(9);
  std::vector<VertexId> perm(cut.t.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  FrameLabels r = cut.frame;
  for (auto& x : r.u) x = perm[x];
  for (auto& x : r.v) x = perm[x];
  opts.frame = &r;
  CHECK(canonical_code(relabel(cut.t, perm), opts) == code);

  const auto cf = canonical_framed(cut.t, cut.frame);
  CHECK(frame_valid(cf.t, cf.frame));
  opts.frame = &cf.frame;
  CHECK(canonical_code(cf.t, opts) == code);
}
