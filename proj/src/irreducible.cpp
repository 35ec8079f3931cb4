#include "surftri/irreducible.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <span>

#include "surftri/parallel.hpp"
#include "surftri/surfcode.hpp"

namespace surftri {

std::string PathwaySpec::name() const {
  return base.name() + (cut == CutKind::TwoSided ? "/two" : "/one");
}

std::vector<PathwaySpec> pathways_for(SurfaceClass target) {
  std::vector<PathwaySpec> out;
  const int eg = target.euler_genus();
  if (eg == 0) return out;
  if (eg >= 2) {
    const int b = eg - 2;
    if (target.orientable) {
      out.push_back({target, SurfaceClass::from_euler_genus(true, b), CutKind::TwoSided, OrientationRelation::Opposite});
    } else {
      if (b % 2 == 0) {
        out.push_back({target, SurfaceClass::from_euler_genus(true, b), CutKind::TwoSided, OrientationRelation::Same});
      }
      if (b >= 1) {
        out.push_back(
            {target, SurfaceClass::from_euler_genus(false, b), CutKind::TwoSided, OrientationRelation::Unoriented});
      }
    }
  }
  if (!target.orientable) {
    const int b = eg - 1;
    if (b % 2 == 0) {
      out.push_back({target, SurfaceClass::from_euler_genus(true, b), CutKind::OneSided, OrientationRelation::Unoriented});
    }
    if (b >= 1) {
      out.push_back({target, SurfaceClass::from_euler_genus(false, b), CutKind::OneSided, OrientationRelation::Unoriented});
    }
  }
  return out;
}

EdgeClass classify_edge(const FramedTriangulation& ft, VertexId a, VertexId b) {
  if (ft.frame.is_frame_edge(a, b)) return EdgeClass::Frame;
  const VertexMask fm = ft.frame.vertices();
  const int on_frame = static_cast<int>((fm >> a) & 1U) + static_cast<int>((fm >> b) & 1U);
  if (on_frame == 0) return EdgeClass::Interior;
  return on_frame == 1 ? EdgeClass::Support : EdgeClass::Crossframe;
}

bool has_crossframe_edge(const FramedTriangulation& ft) {
  const VertexMask fm = ft.frame.vertices();
  for (VertexMask m = fm; m; m &= m - 1) {
    const VertexId a = std::countr_zero(m);
    for (VertexMask k = ft.t.neighbors(a) & fm; k; k &= k - 1) {
      const VertexId b = std::countr_zero(k);
      if (a < b && !ft.frame.is_frame_edge(a, b)) return true;
    }
  }
  return false;
}

namespace {

// Paths between frame pairs are measured without the crosscap hub, which the
// gluing removes.
VertexMask path_neighbors(const FramedTriangulation& ft, VertexId x) {
  const VertexMask hub = ft.frame.kind == FrameKind::Crosscap ? bit(ft.frame.hub) : 0;
  return ft.t.neighbors(x) & ~hub;
}

}  // namespace

bool frame_pairs_far_apart(const FramedTriangulation& ft) {
  for (int i = 0; i < 3; ++i) {
    const VertexId u = ft.frame.u[i], v = ft.frame.v[i];
    if (ft.t.adjacent(u, v) || (path_neighbors(ft, u) & path_neighbors(ft, v))) return false;
  }
  return true;
}

std::optional<Triangulation> glue_pre_irreducible(const FramedTriangulation& ft, const PathwaySpec& p) {
  if (has_crossframe_edge(ft) || !frame_pairs_far_apart(ft)) return std::nullopt;
  Triangulation g;
  try {
    g = inverse_cut_cap(ft.t, ft.frame);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotSimple) return std::nullopt;
    throw;
  }
  if (surface_class(g) != p.target || !is_irreducible(g)) return std::nullopt;
  return g;
}

bool is_pre_irreducible(const FramedTriangulation& ft, const PathwaySpec& p) {
  return glue_pre_irreducible(ft, p).has_value();
}

CanonicalCode framed_code(const FramedTriangulation& ft) {
  CanonOptions opts;
  opts.frame = &ft.frame;
  return canonical_code(ft.t, opts);
}

namespace {

// ---------------------------------------------------------------------------
// Level-synchronous search.  Every split adds one vertex, so a level is a
// vertex count.  A level is held as a set of canonical codes, which is far
// smaller than the triangulations, and nodes are decoded when expanded.
// Children are computed in parallel chunk by chunk and merged in code order,
// so the result does not depend on the worker count.  Only nodes accepted by
// `keep` are retained once their level has been expanded.

template <class Node>
using Keyed = std::pair<CanonicalCode, Node>;

constexpr std::size_t kLevelChunk = 4096;

int size_of(const Triangulation& t) { return t.num_vertices(); }
int size_of(const FramedTriangulation& ft) { return ft.t.num_vertices(); }
CanonicalCode code_of(const Triangulation& t) { return canonical_code(t); }
CanonicalCode code_of(const FramedTriangulation& ft) { return framed_code(ft); }

template <class Node>
Node decode(const CanonicalCode& code);

template <>
Triangulation decode<Triangulation>(const CanonicalCode& code) {
  return decode_canonical_code(code);
}

template <>
FramedTriangulation decode<FramedTriangulation>(const CanonicalCode& code) {
  std::size_t pos = 0;
  FramedTriangulation ft{decode_canonical_code(code, &pos), {}};
  FrameLabels& f = ft.frame;
  f.kind = static_cast<FrameKind>(code.at(pos));
  if (f.kind == FrameKind::Crosscap) {
    f.hub = code.at(pos + 1);
    const auto r = ft.t.rotation(f.hub);
    f.u = {r[0], r[1], r[2]};
    f.v = {r[3], r[4], r[5]};
  } else {
    for (std::size_t i = 0; i < 3; ++i) {
      f.u[i] = code.at(pos + 1 + 2 * i);
      f.v[i] = code.at(pos + 2 + 2 * i);
    }
  }
  return ft;
}

template <class Node>
std::vector<Node> level_search(const std::vector<Node>& roots, const std::function<std::vector<Node>(const Node&)>& expand,
                               const std::function<bool(const Node&)>& keep, int jobs) {
  std::map<int, std::set<CanonicalCode>> levels;
  for (const Node& r : roots) levels[size_of(r)].insert(code_of(r));
  std::vector<Node> visited;
  while (!levels.empty()) {
    auto first = levels.begin();
    const int n = first->first;
    std::vector<CanonicalCode> level(std::make_move_iterator(first->second.begin()),
                                     std::make_move_iterator(first->second.end()));
    levels.erase(first);
    auto& next = levels[n + 1];

    for (std::size_t lo = 0; lo < level.size(); lo += kLevelChunk) {
      const std::size_t count = std::min(kLevelChunk, level.size() - lo);
      std::vector<std::vector<CanonicalCode>> kids(count);
      std::vector<std::optional<Node>> kept(count);
      auto work = [&](std::size_t k) {
        Node node = decode<Node>(level[lo + k]);
        for (const Node& c : expand(node)) kids[k].push_back(code_of(c));
        if (keep(node)) kept[k].emplace(std::move(node));
      };
      if (jobs == 1) {
        for (std::size_t k = 0; k < count; ++k) work(k);
      } else {
        ExceptionSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_jobs(jobs))
        for (std::size_t k = 0; k < count; ++k) err.run([&] { work(k); });
        err.rethrow();
      }
      for (auto& list : kids) {
        for (auto& code : list) next.insert(std::move(code));
      }
      for (auto& node : kept) {
        if (node) visited.push_back(std::move(*node));
      }
    }
    if (next.empty()) levels.erase(n + 1);
  }
  return visited;
}

[[noreturn]] void budget_exceeded(int n, const char* stage) {
  throw Error(ErrorKind::BudgetExceeded, std::string(stage) + ": a triangulation with " + std::to_string(n) +
                                             " vertices still has admissible splits");
}

template <class Node>
std::vector<Keyed<Node>> sorted_unique(std::vector<std::vector<Keyed<Node>>>& parts) {
  std::map<CanonicalCode, Node> m;
  for (auto& part : parts) {
    for (auto& [code, node] : part) m.emplace(std::move(code), std::move(node));
  }
  std::vector<Keyed<Node>> out;
  for (auto& [code, node] : m) out.emplace_back(code, std::move(node));
  return out;
}

template <class F>
void parallel_for(std::size_t count, int jobs, F&& f) {
  if (jobs == 1) {
    for (std::size_t k = 0; k < count; ++k) f(k);
    return;
  }
  ExceptionSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_jobs(jobs))
  for (std::size_t k = 0; k < count; ++k) err.run([&] { f(k); });
  err.rethrow();
}

VertexMask closed_neighbourhood(const Triangulation& t, VertexId v) { return t.neighbors(v) | bit(v); }

bool has_hub_candidate(const Triangulation& t, VertexMask contractible, bool need_degree_six) {
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    if (need_degree_six && t.degree(v) != 6) continue;
    if ((contractible & ~closed_neighbourhood(t, v)) == 0) return true;
  }
  return false;
}

// Frames of t satisfying the stage-1 filter.
std::vector<FramedTriangulation> stage1_frames(const Triangulation& t, const PathwaySpec& p) {
  std::vector<FramedTriangulation> out;
  const VertexMask contractible = contractible_vertices(t);
  if (p.cut == CutKind::OneSided) {
    for (VertexId h = 0; h < t.num_vertices(); ++h) {
      if (t.degree(h) != 6 || (contractible & ~closed_neighbourhood(t, h))) continue;
      const auto r = t.rotation(h);
      FramedTriangulation ft{t, {}};
      ft.frame.kind = FrameKind::Crosscap;
      ft.frame.hub = h;
      ft.frame.u = {r[0], r[1], r[2]};
      ft.frame.v = {r[3], r[4], r[5]};
      out.push_back(std::move(ft));
    }
    return out;
  }
  const auto faces = t.faces();
  auto mask = [](const Face& f) { return bit(f[0]) | bit(f[1]) | bit(f[2]); };
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      const VertexMask mi = mask(faces[i]), mj = mask(faces[j]);
      if ((mi & mj) || (contractible & ~(mi | mj))) continue;
      std::array<int, 3> perm{0, 1, 2};
      do {
        FramedTriangulation ft{t, {}};
        ft.frame.kind = FrameKind::Handle;
        ft.frame.u = faces[i];
        for (int k = 0; k < 3; ++k) ft.frame.v[k] = faces[j][perm[k]];
        if (orientation_relation(t, ft.frame) == p.relation) out.push_back(std::move(ft));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return out;
}

bool has_contractible_interior_edge(const Triangulation& t, VertexMask frame) {
  const int n = t.num_vertices();
  for (VertexId a = 0; a < n; ++a) {
    if (frame & bit(a)) continue;
    for (VertexMask m = t.neighbors(a) & ~frame; m; m &= m - 1) {
      const VertexId b = std::countr_zero(m);
      if (a < b && std::popcount(t.neighbors(a) & t.neighbors(b)) == 2) return true;
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Stage 1

std::vector<FramedTriangulation> stage1(const PathwaySpec& p, const std::vector<Triangulation>& base_irreducibles,
                                        const StageOptions& opts) {
  const bool one_sided = p.cut == CutKind::OneSided;
  const int max_contractible = one_sided ? 7 : 6;
  auto admissible = [&](const Triangulation& child) {
    const VertexMask c = contractible_vertices(child);
    if (std::popcount(c) > max_contractible) return false;
    return !one_sided || has_hub_candidate(child, c, false);
  };
  std::function<std::vector<Triangulation>(const Triangulation&)> expand = [&](const Triangulation& t) {
    std::vector<Triangulation> out;
    for (VertexId a = 0; a < t.num_vertices(); ++a) {
      const int d = t.degree(a);
      for (int i = 0; i < d; ++i) {
        for (int s = 2; s <= d - i; ++s) {
          Triangulation child = split_vertex(t, a, i, s);
          if (!admissible(child)) continue;
          if (t.num_vertices() >= opts.max_vertices) budget_exceeded(t.num_vertices(), "stage 1");
          out.push_back(std::move(child));
        }
      }
    }
    return out;
  };
  const auto all = level_search<Triangulation>(
      base_irreducibles, expand, [&](const Triangulation& t) { return !stage1_frames(t, p).empty(); }, opts.jobs);
  std::vector<std::vector<Keyed<FramedTriangulation>>> parts(all.size());
  parallel_for(all.size(), opts.jobs, [&](std::size_t k) {
    for (auto& ft : stage1_frames(all[k], p)) {
      CanonicalCode code = framed_code(ft);
      parts[k].emplace_back(std::move(code), std::move(ft));
    }
  });
  std::vector<FramedTriangulation> out;
  for (auto& [code, ft] : sorted_unique(parts)) out.push_back(std::move(ft));
  return out;
}

// ---------------------------------------------------------------------------
// Stage 2

std::vector<FramedTriangulation> stage2(const std::vector<FramedTriangulation>& in, const StageOptions& opts) {
  std::function<std::vector<FramedTriangulation>(const FramedTriangulation&)> expand = [&](const FramedTriangulation& ft) {
    std::vector<FramedTriangulation> out;
    const Triangulation& t = ft.t;
    const FrameLabels& f = ft.frame;
    const VertexId fresh = t.num_vertices();
    for (VertexMask m = f.vertices(); m; m &= m - 1) {
      const VertexId a = std::countr_zero(m);
      if (f.kind == FrameKind::Crosscap && a == f.hub) continue;
      // A vertex of a's frame face (handle) or the hub plus a hexagon neighbour.
      VertexId x = -1, y = -1;
      if (f.kind == FrameKind::Handle) {
        const auto& tri = (a == f.u[0] || a == f.u[1] || a == f.u[2]) ? f.u : f.v;
        for (VertexId z : tri) {
          if (z == a) continue;
          (x < 0 ? x : y) = z;
        }
      } else {
        x = f.hub;
        const auto hex = t.rotation(f.hub);
        y = hex[(t.position(f.hub, a) + 1) % hex.size()];
      }
      const auto r = t.rotation(a);
      const int d = static_cast<int>(r.size());
      for (int i = 0; i < d; ++i) {
        for (int s = 2; s <= d - i; ++s) {
          if (f.kind == FrameKind::Crosscap && (r[i] == f.hub || r[i + s - 1] == f.hub)) continue;
          FramedTriangulation child{split_vertex(t, a, i, s), f};
          if (!child.t.has_face(a, x, y)) child.frame.rename(a, fresh);
          if (has_contractible_interior_edge(child.t, child.frame.vertices())) continue;
          if (fresh >= opts.max_vertices) budget_exceeded(fresh, "stage 2");
          out.push_back(std::move(child));
        }
      }
    }
    return out;
  };
  return level_search<FramedTriangulation>(
      in, expand, [](const FramedTriangulation& ft) { return !has_crossframe_edge(ft); }, opts.jobs);
}

// ---------------------------------------------------------------------------
// Stage 3

namespace {

// Adjacency masks are all the short-path conditions look at, so a split can
// be tested on the masks before the child triangulation is built.
struct Adjacency {
  std::array<VertexMask, kMaxVertices> nb{};
  int n = 0;
  VertexMask hub = 0;  // excluded from paths

  Adjacency(const FramedTriangulation& ft) : n(ft.t.num_vertices()) {
    for (VertexId x = 0; x < n; ++x) nb[x] = ft.t.neighbors(x);
    if (ft.frame.kind == FrameKind::Crosscap) hub = bit(ft.frame.hub);
  }
  VertexMask path(VertexId x) const { return nb[x] & ~hub; }
};

// Masks after split_vertex(t, a, i, s); a2 = n is the new vertex.
Adjacency split_adjacency(const Adjacency& base, std::span<const VertexId> ra, VertexId a, int i, int s) {
  Adjacency c = base;
  const int d = static_cast<int>(ra.size());
  const VertexId a2 = c.n++;
  auto v = [&](int k) { return ra[(i + k - 1) % d]; };
  VertexMask arc1 = 0, arc2 = bit(v(1));
  for (int k = 1; k <= s; ++k) arc1 |= bit(v(k));
  for (int k = s; k <= d; ++k) arc2 |= bit(v(k));
  for (int k = s + 1; k <= d; ++k) c.nb[v(k)] = (c.nb[v(k)] & ~bit(a)) | bit(a2);
  c.nb[v(1)] |= bit(a2);
  c.nb[v(s)] |= bit(a2);
  c.nb[a] = arc1 | bit(a2);
  c.nb[a2] = arc2 | bit(a);
  return c;
}

// Is z on a path of length <= 3 from u to v?  z is neither u nor v.
bool vertex_on_short_path(const Adjacency& g, VertexId u, VertexId v, VertexId z) {
  const VertexMask a = g.path(u), b = g.path(v);
  const bool in_a = (a >> z) & 1U, in_b = (b >> z) & 1U;
  if (in_a && in_b) return true;
  if (in_a && (g.path(z) & b & ~bit(u))) return true;
  return in_b && (g.path(z) & a & ~bit(v));
}

// Is edge xy on a path of length <= 3 from u to v?  Neither endpoint is the hub.
bool edge_on_short_path(const Adjacency& g, VertexId u, VertexId v, VertexId x, VertexId y) {
  const VertexMask a = g.path(u), b = g.path(v);
  auto from_end = [&](VertexId end, VertexId other, VertexId p, VertexMask other_side) {
    if (p == other) return false;
    return ((other_side >> p) & 1U) || (g.path(p) & other_side & ~bit(end));
  };
  if (x == u || y == u) return from_end(u, v, x == u ? y : x, b);
  if (x == v || y == v) return from_end(v, u, x == v ? y : x, a);
  return (((a >> x) & 1U) && ((b >> y) & 1U)) || (((a >> y) & 1U) && ((b >> x) & 1U));
}

bool short_path_conditions(const Adjacency& g, const FrameLabels& f) {
  const VertexMask fm = f.vertices();
  VertexMask on_rigid_edge = 0;  // vertices on a noncontractible edge
  for (VertexId x = 0; x < g.n; ++x) {
    for (VertexMask m = g.nb[x]; m; m &= m - 1) {
      const VertexId y = std::countr_zero(m);
      if (x > y) continue;
      if (std::popcount(g.nb[x] & g.nb[y]) != 2) {
        on_rigid_edge |= bit(x) | bit(y);
        continue;
      }
      if (f.is_frame_edge(x, y)) continue;
      bool ok = false;
      for (int i = 0; i < 3 && !ok; ++i) ok = edge_on_short_path(g, f.u[i], f.v[i], x, y);
      if (!ok) return false;
    }
  }
  for (VertexId z = 0; z < g.n; ++z) {
    if ((fm | on_rigid_edge) & bit(z)) continue;
    int hits = 0;
    for (int i = 0; i < 3; ++i) hits += vertex_on_short_path(g, f.u[i], f.v[i], z);
    if (hits < 2) return false;
  }
  return true;
}

}  // namespace

bool short_path_conditions(const FramedTriangulation& ft) { return short_path_conditions(Adjacency(ft), ft.frame); }

std::vector<FramedTriangulation> stage3_candidates(const std::vector<FramedTriangulation>& in, const StageOptions& opts) {
  std::function<std::vector<FramedTriangulation>(const FramedTriangulation&)> expand = [&](const FramedTriangulation& ft) {
    std::vector<FramedTriangulation> out;
    const Triangulation& t = ft.t;
    const VertexMask fm = ft.frame.vertices();
    const Adjacency base(ft);
    for (VertexId a = 0; a < t.num_vertices(); ++a) {
      if (fm & bit(a)) continue;
      const int d = t.degree(a);
      for (int i = 0; i < d; ++i) {
        for (int s = 2; s <= d - i; ++s) {
          if (!short_path_conditions(split_adjacency(base, t.rotation(a), a, i, s), ft.frame)) continue;
          if (t.num_vertices() >= opts.max_vertices) budget_exceeded(t.num_vertices(), "stage 3");
          out.push_back({split_vertex(t, a, i, s), ft.frame});
        }
      }
    }
    return out;
  };
  return level_search<FramedTriangulation>(in, expand, frame_pairs_far_apart, opts.jobs);
}

Stage3Result glue_candidates(const std::vector<FramedTriangulation>& candidates, const PathwaySpec& p) {
  std::vector<std::optional<std::pair<CanonicalCode, Triangulation>>> glued(candidates.size());
  parallel_for(candidates.size(), 0, [&](std::size_t k) {
    if (auto g = glue_pre_irreducible(candidates[k], p)) glued[k].emplace(canonical_code(*g), std::move(*g));
  });
  Stage3Result res;
  res.candidates = candidates.size();
  std::map<CanonicalCode, Triangulation> unique;
  for (auto& g : glued) {
    if (!g) continue;
    ++res.pre_irreducible;
    ++res.multiplicity[g->first];
    unique.emplace(std::move(g->first), std::move(g->second));
  }
  for (auto& [code, t] : unique) res.irreducibles.push_back(std::move(t));
  return res;
}

Stage3Result stage3(const std::vector<FramedTriangulation>& in, const PathwaySpec& p, const StageOptions& opts) {
  return glue_candidates(stage3_candidates(in, opts), p);
}

// ---------------------------------------------------------------------------
// Reduction

Triangulation reduce_to_irreducible(const Triangulation& t) {
  Triangulation cur = t;
  for (;;) {
    const auto edges = contractible_edges(cur);
    if (edges.empty()) return cur;
    cur = contract(cur, edges.front());
  }
}

Triangulation reduce_to_irreducible(const FramedTriangulation& ft) {
  Triangulation cur = ft.t;
  VertexMask fm = ft.frame.vertices();
  for (;;) {
    const auto edges = contractible_edges(cur);
    if (edges.empty()) return cur;
    EdgeRef best{};
    int best_rank = 3;
    for (const EdgeRef& e : edges) {
      const int rank = std::popcount(fm & (bit(e.a) | bit(e.b)));
      if (rank < best_rank) {
        best_rank = rank;
        best = e;
      }
    }
    // Keep the frame endpoint of a support edge.
    if (best_rank == 1 && !(fm & bit(best.a))) std::swap(best.a, best.b);
    const VertexId last = cur.num_vertices() - 1;
    if (fm & bit(best.b)) fm |= bit(best.a);
    fm &= ~bit(best.b);
    if (fm & bit(last)) {
      fm &= ~bit(last);
      fm |= bit(best.b);
    }
    cur = contract(cur, best);
  }
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

std::string dump_path(const std::string& dir, const PathwaySpec& p, int stage) {
  return (std::filesystem::path(dir) /
          (p.target.name() + "_from_" + p.base.name() + (p.cut == CutKind::TwoSided ? "_two" : "_one") + ".stage" +
           std::to_string(stage) + ".sc"))
      .string();
}

std::vector<FramedTriangulation> checkpointed(const std::string& dir, const PathwaySpec& p, int stage,
                                              const std::function<std::vector<FramedTriangulation>()>& run) {
  if (dir.empty()) return run();
  const std::string path = dump_path(dir, p, stage);
  if (std::filesystem::exists(path)) {
    SurfcodeFile file = read_surfcode_file(path);
    if (file.complete) {
      std::vector<FramedTriangulation> out;
      for (auto& rec : file.records) {
        if (!rec.frame) throw Error(ErrorKind::Parse, path + ": record without a frame");
        out.push_back({std::move(rec.t), *rec.frame});
      }
      return out;
    }
  }
  auto out = run();
  std::filesystem::create_directories(dir);
  {
    SurfcodeWriter w(path + ".part");
    w.comment("pathway " + p.name() + " stage " + std::to_string(stage) + " records " + std::to_string(out.size()));
    for (const auto& ft : out) w.write(ft.t, ft.frame);
    w.finish();
  }
  std::filesystem::rename(path + ".part", path);
  return out;
}

}  // namespace

PipelineResult generate_irreducibles(SurfaceClass target, const std::map<SurfaceClass, std::vector<Triangulation>>& bases,
                                     const PipelineOptions& opts) {
  PipelineResult result;
  if (target.euler_genus() == 0) {
    result.irreducibles.push_back(tetrahedron());
    return result;
  }
  std::map<CanonicalCode, Triangulation> unique;
  bool matched = opts.pathway.empty();
  for (const PathwaySpec& p : pathways_for(target)) {
    if (!opts.pathway.empty() && opts.pathway != p.name()) continue;
    matched = true;
    const auto base = bases.find(p.base);
    if (base == bases.end()) throw Error(ErrorKind::NotFound, "no irreducible set for base surface " + p.base.name());
    PathwayReport report{p};
    const auto s1 = checkpointed(opts.stage_dump_dir, p, 1, [&] { return stage1(p, base->second, opts.stage); });
    report.stage1 = s1.size();
    if (opts.stop_after_stage >= 2) {
      const auto s2 = checkpointed(opts.stage_dump_dir, p, 2, [&] { return stage2(s1, opts.stage); });
      report.stage2 = s2.size();
      if (opts.stop_after_stage >= 3) {
        const auto cands = checkpointed(opts.stage_dump_dir, p, 3, [&] { return stage3_candidates(s2, opts.stage); });
        Stage3Result r = glue_candidates(cands, p);
        report.candidates = r.candidates;
        report.pre_irreducible = r.pre_irreducible;
        report.irreducible = r.irreducibles.size();
        for (auto& [code, k] : r.multiplicity) result.multiplicity[code] += k;
        for (auto& t : r.irreducibles) unique.emplace(canonical_code(t), std::move(t));
      }
    }
    result.reports.push_back(report);
  }
  if (!matched) throw Error(ErrorKind::NotFound, "no pathway named " + opts.pathway + " for " + target.name());
  for (auto& [code, t] : unique) result.irreducibles.push_back(std::move(t));
  return result;
}

}  // namespace surftri
