#include <algorithm>
#include <bitset>
#include <map>

#include "surftri/parallel.hpp"
#include "surftri/verify.hpp"

namespace surftri {

namespace {

constexpr int N = kOracleMaxVertices;

// Partial simplicial surface.  The link of each vertex is kept as a graph on
// its neighbours; it must stay a union of paths until it closes into one cycle.
struct State {
  int nv = 3;
  int nf = 0;
  int ne = 0;
  std::array<std::array<std::uint8_t, N>, N> cnt{};                  // faces per edge
  std::array<std::array<std::array<std::int8_t, 2>, N>, N> ladj{};   // link adjacency
  std::array<bool, N> closed{};
  std::bitset<N * N * N> face;
  std::vector<Face> faces;
};

struct Target {
  SurfaceClass surface;
  int n;
  int max_faces;
  int max_edges;
};

int face_index(VertexId a, VertexId b, VertexId c) {
  std::array<VertexId, 3> f{a, b, c};
  std::sort(f.begin(), f.end());
  return (f[0] * N + f[1]) * N + f[2];
}

// Walks the link path of v starting at p; returns {length, reaches q}.
std::pair<int, bool> walk(const State& s, VertexId v, VertexId p, VertexId q) {
  int len = 1;
  bool hit = (p == q);
  VertexId prev = -1, cur = p;
  for (;;) {
    const auto& a = s.ladj[v][cur];
    VertexId next = -1;
    for (int k = 0; k < 2; ++k) {
      if (a[k] >= 0 && a[k] != prev) {
        next = a[k];
        break;
      }
    }
    if (next < 0) break;
    prev = cur;
    cur = next;
    ++len;
    hit = hit || (cur == q);
  }
  return {len, hit};
}

int link_size(const State& s, VertexId v) {
  int k = 0;
  for (int u = 0; u < s.nv; ++u) k += (s.cnt[v][u] > 0);
  return k;
}

void link_add(State& s, VertexId v, VertexId p, VertexId q) {
  auto put = [&](VertexId x, VertexId y) {
    auto& a = s.ladj[v][x];
    if (a[0] < 0) {
      a[0] = static_cast<std::int8_t>(y);
    } else {
      a[1] = static_cast<std::int8_t>(y);
    }
  };
  put(p, q);
  put(q, p);
}

// Adds face (a, b, x) if every local constraint allows it.
bool try_add(State& s, const Target& tg, VertexId a, VertexId b, VertexId x) {
  if (x == s.nv) {
    if (s.nv == tg.n) return false;
  } else if (s.face[face_index(a, b, x)]) {
    return false;
  }
  const std::array<VertexId, 3> f{a, b, x};
  int new_edges = 0;
  for (int k = 0; k < 3; ++k) {
    const VertexId p = f[k], q = f[(k + 1) % 3];
    if (q < s.nv && s.cnt[p][q] >= 2) return false;
    if (q >= s.nv || s.cnt[p][q] == 0) ++new_edges;
  }
  if (s.ne + new_edges > tg.max_edges || s.nf + 1 > tg.max_faces) return false;
  std::array<bool, 3> closes{};
  for (int k = 0; k < 3; ++k) {
    const VertexId v = f[k], p = f[(k + 1) % 3], q = f[(k + 2) % 3];
    if (v < s.nv && s.closed[v]) return false;
    if (v >= s.nv || p >= s.nv || q >= s.nv) continue;
    if (s.cnt[v][p] == 0 || s.cnt[v][q] == 0) continue;
    const auto [len, same] = walk(s, v, p, q);
    if (!same) continue;
    if (len != link_size(s, v)) return false;
    closes[k] = true;
  }
  if (x == s.nv) {
    ++s.nv;
    for (int u = 0; u < N; ++u) s.ladj[x][u] = {-1, -1};
  }
  for (int k = 0; k < 3; ++k) {
    const VertexId p = f[k], q = f[(k + 1) % 3];
    ++s.cnt[p][q];
    ++s.cnt[q][p];
  }
  for (int k = 0; k < 3; ++k) {
    link_add(s, f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
    if (closes[k]) s.closed[f[k]] = true;
  }
  s.ne += new_edges;
  ++s.nf;
  s.face[face_index(a, b, x)] = true;
  s.faces.push_back({a, b, x});
  return true;
}

State initial_state() {
  State s;
  for (auto& row : s.ladj) {
    for (auto& a : row) a = {-1, -1};
  }
  s.nv = 3;
  s.cnt[0][1] = s.cnt[1][0] = s.cnt[1][2] = s.cnt[2][1] = s.cnt[0][2] = s.cnt[2][0] = 1;
  link_add(s, 0, 1, 2);
  link_add(s, 1, 0, 2);
  link_add(s, 2, 0, 1);
  s.ne = 3;
  s.nf = 1;
  s.face[face_index(0, 1, 2)] = true;
  s.faces.push_back({0, 1, 2});
  return s;
}

std::optional<std::pair<VertexId, VertexId>> open_edge(const State& s) {
  for (VertexId a = 0; a < s.nv; ++a) {
    for (VertexId b = a + 1; b < s.nv; ++b) {
      if (s.cnt[a][b] == 1) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

using Found = std::map<CanonicalCode, Triangulation>;

void leaf(const State& s, const Target& tg, Found& out) {
  if (s.nv != tg.n) return;
  Triangulation t = Triangulation::from_faces(s.faces);
  if (surface_class(t) != tg.surface) return;
  auto code = canonical_code(t);
  out.emplace(std::move(code), std::move(t));
}

template <class Visit>
void expand(const State& s, const Target& tg, Visit&& visit) {
  const auto e = open_edge(s);
  if (!e) return;
  for (VertexId x = 0; x <= s.nv; ++x) {
    if (x == e->first || x == e->second || x == N) continue;
    State c = s;
    if (try_add(c, tg, e->first, e->second, x)) visit(std::move(c));
  }
}

void search(const State& s, const Target& tg, Found& out) {
  if (!open_edge(s)) {
    leaf(s, tg, out);
    return;
  }
  expand(s, tg, [&](State&& c) { search(c, tg, out); });
}

}  // namespace

std::vector<Triangulation> oracle_enumerate(SurfaceClass surface, int n, int jobs) {
  if (n < 4 || n > kOracleMaxVertices) {
    throw Error(ErrorKind::InvalidTriangulation, "oracle supports 4 to " + std::to_string(N) + " vertices");
  }
  const int eg = surface.euler_genus();
  const Target tg{surface, n, 2 * (n - 2 + eg), 3 * (n - 2 + eg)};
  // Breadth-first to a few hundred partial surfaces, then depth-first in parallel.
  std::vector<State> frontier{initial_state()};
  Found found;
  for (int depth = 0; depth < 8 && !frontier.empty() && frontier.size() < 512; ++depth) {
    std::vector<State> next;
    for (const State& s : frontier) {
      if (!open_edge(s)) {
        leaf(s, tg, found);
        continue;
      }
      expand(s, tg, [&](State&& c) { next.push_back(std::move(c)); });
    }
    frontier = std::move(next);
  }
  const int threads = resolve_jobs(jobs);
  std::vector<Found> partial(frontier.size());
  ExceptionSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t k = 0; k < frontier.size(); ++k) {
    err.run([&] { search(frontier[k], tg, partial[k]); });
  }
  err.rethrow();
  for (auto& p : partial) found.merge(p);
  std::vector<Triangulation> out;
  out.reserve(found.size());
  for (auto& [code, t] : found) out.push_back(std::move(t));
  return out;
}

}  // namespace surftri
