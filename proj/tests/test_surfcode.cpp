#include <cstdio>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "surftri/canon.hpp"
#include "surftri/cycles.hpp"
#include "surftri/surfcode.hpp"

using namespace surftri;

namespace {

ErrorKind parse_error_kind(const std::string& line) {
  try {
    parse_surfcode(line);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Mismatch;
}

}  // namespace

TEST_CASE("tetrahedron record") {
  const std::string rec = to_surfcode(tetrahedron());
  CHECK(rec.rfind("T 4 o0: 1>", 0) == 0);
  CHECK(rec.back() == ';');
  CHECK(rec.find('-') == std::string::npos);
  CHECK(to_surfcode(parse_surfcode(rec).t) == rec);
}

TEST_CASE("round trip") {
  std::mt19937_64 rng(3);
  for (const auto& base : {tetrahedron(), k6_projective_plane(), k7_torus()}) {
    Triangulation t = base;
    for (int k = 0; k < 30; ++k) {
      const VertexId a = static_cast<VertexId>(rng() % t.num_vertices());
      const int d = t.degree(a);
      t = split_vertex(t, a, static_cast<int>(rng() % d), 2 + static_cast<int>(rng() % (d - 1)));
      const std::string rec = to_surfcode(t);
      const auto back = parse_surfcode(rec);
      CHECK_FALSE(back.frame.has_value());
      CHECK(canonical_code(back.t) == canonical_code(t));
      CHECK(to_surfcode(back.t) == rec);
    }
  }
}

TEST_CASE("nonorientable records carry negative signatures") {
  const std::string rec = to_surfcode(k6_projective_plane());
  CHECK(rec.rfind("T 6 x1:", 0) == 0);
  CHECK(rec.find('-') != std::string::npos);
}

TEST_CASE("framed round trip") {
  for (const auto& t : {k7_torus(), k6_projective_plane()}) {
    const auto cut = cut_cap(t, nonseparating_3cycles(t).front());
    const std::string rec = to_surfcode(cut.t, cut.frame);
    CHECK(rec.find(cut.frame.kind == FrameKind::Handle ? " | H " : " | C ") != std::string::npos);
    const auto back = parse_surfcode(rec);
    REQUIRE(back.frame.has_value());
    CanonOptions a, b;
    a.frame = &cut.frame;
    b.frame = &*back.frame;
    CHECK(canonical_code(cut.t, a) == canonical_code(back.t, b));
    CHECK(to_surfcode(back.t, *back.frame) == rec);
  }
}

TEST_CASE("malformed records") {
  const std::string good = to_surfcode(tetrahedron());
  CHECK(parse_error_kind("") == ErrorKind::Parse);
  CHECK(parse_error_kind("T 4 o0:") == ErrorKind::Parse);
  CHECK(parse_error_kind("X" + good.substr(1)) == ErrorKind::Parse);
  // Wrong surface tag.
  std::string tag = good;
  tag.replace(tag.find("o0"), 2, "o1");
  CHECK(parse_error_kind(tag) == ErrorKind::Parse);
  // A signature that disagrees with the rotations.
  std::string sig = good;
  sig.insert(sig.find("1>") + 2, "-");
  CHECK(parse_error_kind(sig) == ErrorKind::Parse);
  // Not a triangulation.
  CHECK(parse_error_kind("T 4 o0: 1>2,3; 2>1,3; 3>1,2; 4>1,2,3;") == ErrorKind::Parse);
  CHECK(parse_error_kind(good + " | H 1,2,3 4,1,2") == ErrorKind::Parse);
}

TEST_CASE("files and the completion trailer") {
  const auto path = (std::filesystem::temp_directory_path() / "surftri_test_file.sc").string();
  {
    SurfcodeWriter w(path);
    w.comment("two records");
    w.write(tetrahedron());
    w.write(k7_torus());
  }
  auto f = read_surfcode_file(path);
  CHECK(f.records.size() == 2);
  CHECK_FALSE(f.complete);
  {
    SurfcodeWriter w(path);
    w.write(octahedron());
    w.finish();
  }
  f = read_surfcode_file(path);
  CHECK(f.records.size() == 1);
  CHECK(f.complete);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_surfcode_file(path), Error);
}
