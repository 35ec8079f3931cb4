#include <set>

#include "doctest.h"
#include "surftri/generate.hpp"
#include "surftri/irreducible.hpp"
#include "surftri/surfcode.hpp"
#include "surftri/verify.hpp"

using namespace surftri;

namespace {

std::vector<Triangulation> data_set(const char* name) {
  std::vector<Triangulation> out;
  for (auto& r : read_surfcode_file(std::string(SURFTRI_DATA_DIR) + "/" + name).records) out.push_back(r.t);
  return out;
}

}  // namespace

TEST_CASE("oracle small counts") {
  CHECK(oracle_enumerate({true, 0}, 4, 1).size() == 1);
  CHECK(oracle_enumerate({true, 0}, 5, 1).size() == 1);
  CHECK(oracle_enumerate({false, 1}, 6, 1).size() == 1);
  CHECK(oracle_enumerate({true, 1}, 7, 1).size() == 1);
  CHECK(oracle_enumerate({false, 2}, 8, 1).size() == 6);
  CHECK(oracle_enumerate({false, 1}, 5, 1).empty());
  CHECK_THROWS_AS(oracle_enumerate({true, 0}, 3, 1), Error);
}

TEST_CASE("oracle output is valid and independent of workers") {
  const auto a = oracle_enumerate({true, 1}, 8, 1);
  const auto b = oracle_enumerate({true, 1}, 8, 3);
  REQUIRE(a.size() == 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i].validate();
    CHECK(surface_class(a[i]) == SurfaceClass{true, 1});
    CHECK(canonical_code(a[i]) == canonical_code(b[i]));
  }
}

TEST_CASE("flip closure") {
  const auto oct = flip_closure(octahedron());
  CHECK(oct.classes.size() == 2);
  CHECK(oct.n == 6);
  CHECK(flip_closure(tetrahedron()).classes.size() == 1);
  CHECK(flip_closure(k6_projective_plane()).classes.size() == 1);
  const auto all = all_triangulations({true, 0}, 8, std::vector<Triangulation>{tetrahedron()});
  CHECK(flip_closure(all.back()).classes.size() == all.size());
  try {
    flip_closure(all.front(), 256);
    FAIL("memory cap not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MemoryCapExceeded);
  }
}

TEST_CASE("random search is sound and deterministic") {
  const auto irr = data_set("N2.sc");
  RandomSearchOptions o;
  o.start_n = 13;
  o.iterations = 300;
  o.seed = 42;
  o.jobs = 1;
  const auto a = random_contract_search(irr, o);
  o.jobs = 3;
  const auto b = random_contract_search(irr, o);
  CHECK(a == b);
  std::set<CanonicalCode> known;
  for (const auto& t : irr) known.insert(canonical_code(t));
  std::uint64_t total = 0;
  for (const auto& [code, k] : a) {
    CHECK(known.contains(code));
    total += k;
  }
  CHECK(total == o.iterations);
  o.seed = 43;
  CHECK(random_contract_search(irr, o) != a);
}

TEST_CASE("redundancy check and an injected fault") {
  const PipelineResult r = generate_irreducibles({true, 1}, {{{true, 0}, {tetrahedron()}}});
  REQUIRE(r.irreducibles.size() == 21);
  const RedundancyReport ok = redundancy_check(r.irreducibles, r.multiplicity);
  CHECK(ok.ok);
  CHECK(ok.expected == ok.observed);
  auto broken = r.multiplicity;
  --broken.begin()->second;
  const RedundancyReport bad = redundancy_check(r.irreducibles, broken);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.first_mismatch.has_value());
  CHECK(*bad.first_mismatch == broken.begin()->first);
}

TEST_CASE("nonseparating 3-cycle orbits") {
  // K7 on the torus: 21 nonfacial triangles form one orbit under its 42 symmetries.
  CHECK(nonseparating_3cycles(k7_torus()).size() == 21);
  CHECK(nonseparating_3cycle_orbits(k7_torus()) == 1);
  CHECK(nonseparating_3cycle_orbits(k6_projective_plane()) == 1);
  CHECK(nonseparating_3cycle_orbits(octahedron()) == 0);
}

TEST_CASE("pseudo-minimal triangulations") {
  for (const char* name : {"S1.sc", "N2.sc"}) {
    const auto irr = data_set(name);
    const auto pm = classify_pseudo_minimal(irr);
    std::set<CanonicalCode> all;
    for (const auto& t : irr) all.insert(canonical_code(t));
    for (const auto& t : pm) {
      CHECK(is_irreducible(t));
      CHECK(all.contains(canonical_code(t)));
    }
  }
  // The 7-vertex torus is alone in its size class.
  CHECK(classify_pseudo_minimal(std::vector<Triangulation>{k7_torus()}).size() == 1);
}

TEST_CASE("stored N3 set") {
  const auto irr = data_set("N3.sc");
  REQUIRE(irr.size() == 9708);
  std::set<CanonicalCode> codes;
  for (const auto& t : irr) {
    CHECK(surface_class(t) == SurfaceClass{false, 3});
    CHECK(is_irreducible(t));
    codes.insert(canonical_code(t));
  }
  CHECK(codes.size() == irr.size());
  CHECK(classify_pseudo_minimal(irr).size() == 133);
}
