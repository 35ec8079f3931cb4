#include "surftri/surface_map.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <utility>

namespace surftri {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidTriangulation: return "InvalidTriangulation";
    case ErrorKind::NotContractible: return "NotContractible";
    case ErrorKind::InvalidSplit: return "InvalidSplit";
    case ErrorKind::IllegalFlip: return "IllegalFlip";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::WrongCycleClass: return "WrongCycleClass";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::InvalidFrame: return "InvalidFrame";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MemoryCapExceeded: return "MemoryCapExceeded";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// SurfaceClass

std::string SurfaceClass::name() const {
  return (orientable ? "S" : "N") + std::to_string(genus);
}

SurfaceClass SurfaceClass::parse(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'S' && name[0] != 'N')) {
    throw Error(ErrorKind::Parse, "bad surface name '" + std::string(name) + "'");
  }
  int genus = 0;
  for (char ch : name.substr(1)) {
    if (ch < '0' || ch > '9') throw Error(ErrorKind::Parse, "bad surface name '" + std::string(name) + "'");
    genus = genus * 10 + (ch - '0');
  }
  SurfaceClass s{name[0] == 'S', genus};
  if (!s.orientable && genus == 0) throw Error(ErrorKind::Parse, "N0 is not a surface");
  return s;
}

SurfaceClass SurfaceClass::from_euler_genus(bool orientable, int eg) {
  if (orientable) return {true, eg / 2};
  return {false, eg};
}

// ---------------------------------------------------------------------------
// Triangulation

namespace {

int index_of(const std::vector<VertexId>& v, VertexId x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

// Inserts `x` between the cyclically consecutive entries p and q.
void insert_between(std::vector<VertexId>& r, VertexId p, VertexId q, VertexId x) {
  const int n = static_cast<int>(r.size());
  const int ip = index_of(r, p);
  const int iq = index_of(r, q);
  if (wrap(ip + 1, n) == iq) {
    r.insert(r.begin() + ip + 1, x);
  } else {
    r.insert(r.begin() + iq + 1, x);
  }
}

void replace_in(std::vector<VertexId>& r, VertexId from, VertexId to) {
  *std::find(r.begin(), r.end(), from) = to;
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidTriangulation, msg); }

}  // namespace

int Triangulation::position(VertexId a, VertexId b) const { return index_of(rot_[a], b); }

int Triangulation::signature(VertexId a, VertexId b) const {
  const auto& ra = rot_[a];
  const auto& rb = rot_[b];
  const int k = index_of(ra, b);
  const int j = index_of(rb, a);
  const VertexId prev = ra[wrap(k - 1, static_cast<int>(ra.size()))];
  return rb[wrap(j + 1, static_cast<int>(rb.size()))] == prev ? 1 : -1;
}

bool Triangulation::has_face(VertexId a, VertexId b, VertexId c) const {
  if (!adjacent(a, b) || !adjacent(a, c) || !adjacent(b, c)) return false;
  const auto& ra = rot_[a];
  const int d = static_cast<int>(ra.size());
  const int k = index_of(ra, b);
  return ra[wrap(k + 1, d)] == c || ra[wrap(k - 1, d)] == c;
}

std::vector<Face> Triangulation::faces() const {
  std::vector<Face> out;
  out.reserve(num_faces());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    const auto& r = rot_[u];
    const int d = static_cast<int>(r.size());
    for (int k = 0; k < d; ++k) {
      const VertexId x = r[k];
      const VertexId y = r[wrap(k + 1, d)];
      if (u < x && u < y) out.push_back({u, x, y});
    }
  }
  return out;
}

std::vector<EdgeRef> Triangulation::edges() const {
  std::vector<EdgeRef> out;
  out.reserve(edges_);
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId x : rot_[u]) {
      if (u < x) out.push_back({u, x});
    }
  }
  return out;
}

void Triangulation::rebuild_adjacency() {
  adj_.assign(rot_.size(), 0);
  int half_edges = 0;
  for (std::size_t u = 0; u < rot_.size(); ++u) {
    for (VertexId x : rot_[u]) adj_[u] |= bit(x);
    half_edges += static_cast<int>(rot_[u].size());
  }
  edges_ = half_edges / 2;
}

void Triangulation::normalize_signatures() {
  const int n = num_vertices();
  if (n == 0) return;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> queue{0};
  seen[0] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId x = queue[qi];
    for (VertexId y : rot_[x]) {
      if (seen[y]) continue;
      if (signature(x, y) < 0) std::reverse(rot_[y].begin(), rot_[y].end());
      seen[y] = 1;
      queue.push_back(y);
    }
  }
}

Triangulation Triangulation::adopt(std::vector<std::vector<VertexId>> rotations) {
  Triangulation t;
  t.rot_ = std::move(rotations);
  t.rebuild_adjacency();
  t.normalize_signatures();
  return t;
}

Triangulation Triangulation::from_rotations(std::vector<std::vector<VertexId>> rotations) {
  const int n = static_cast<int>(rotations.size());
  if (n < 4 || n > kMaxVertices) invalid("vertex count " + std::to_string(n) + " out of range");
  for (int u = 0; u < n; ++u) {
    const auto& r = rotations[u];
    if (r.size() < 3) invalid("vertex " + std::to_string(u) + " has degree < 3");
    VertexMask seen = 0;
    for (VertexId x : r) {
      if (x < 0 || x >= n) invalid("neighbour id out of range at vertex " + std::to_string(u));
      if (x == u) invalid("loop at vertex " + std::to_string(u));
      if (seen & bit(x)) invalid("repeated neighbour at vertex " + std::to_string(u));
      seen |= bit(x);
    }
  }
  Triangulation t;
  t.rot_ = std::move(rotations);
  t.rebuild_adjacency();
  t.validate();
  t.normalize_signatures();
  return t;
}

void Triangulation::validate() const {
  const int n = num_vertices();
  if (n < 4 || n > kMaxVertices) invalid("vertex count " + std::to_string(n) + " out of range");
  for (VertexId u = 0; u < n; ++u) {
    const auto& r = rot_[u];
    const int d = static_cast<int>(r.size());
    if (d < 3) invalid("vertex " + std::to_string(u) + " has degree < 3");
    if (std::popcount(adj_[u]) != d) invalid("repeated neighbour at vertex " + std::to_string(u));
    if (adj_[u] & bit(u)) invalid("loop at vertex " + std::to_string(u));
    for (int k = 0; k < d; ++k) {
      const VertexId x = r[k];
      const VertexId y = r[wrap(k + 1, d)];
      if (!adjacent(x, u)) invalid("asymmetric edge " + std::to_string(u) + "-" + std::to_string(x));
      if (!adjacent(x, y)) {
        invalid("rotation of " + std::to_string(u) + " has non-adjacent consecutive entries");
      }
      // The corner (x, u, y) must also appear as a corner at x and at y.
      for (auto [c, o1, o2] : {std::array{x, u, y}, std::array{y, u, x}}) {
        const auto& rc = rot_[c];
        const int dc = static_cast<int>(rc.size());
        const int i1 = index_of(rc, o1);
        const int i2 = index_of(rc, o2);
        if (wrap(i1 + 1, dc) != i2 && wrap(i2 + 1, dc) != i1) {
          invalid("face " + std::to_string(u) + "," + std::to_string(x) + "," + std::to_string(y) +
                  " is not closed");
        }
      }
    }
  }
  VertexMask reached = bit(0);
  VertexMask frontier = bit(0);
  while (frontier) {
    VertexMask next = 0;
    for (VertexMask f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
    frontier = next & ~reached;
    reached |= next;
  }
  if (std::popcount(reached) != n) invalid("graph is disconnected");
  if (3 * num_faces() != 2 * edges_) invalid("3f != 2m");
}

Triangulation Triangulation::from_faces(std::span<const Face> faces) {
  auto not_simple = [](const std::string& msg) { throw Error(ErrorKind::NotSimple, msg); };
  std::map<VertexId, VertexId> compact;
  std::set<Face> seen_faces;
  for (const Face& f : faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) not_simple("degenerate face");
    Face key = f;
    std::sort(key.begin(), key.end());
    if (!seen_faces.insert(key).second) not_simple("repeated face");
    for (VertexId v : f) compact.emplace(v, 0);
  }
  const int n = static_cast<int>(compact.size());
  if (n < 4 || n > kMaxVertices) not_simple("vertex count " + std::to_string(n) + " out of range");
  {
    VertexId next = 0;
    for (auto& [k, v] : compact) v = next++;
  }
  // Per-vertex link adjacency: for each link vertex, its (at most two) link neighbours.
  std::vector<std::map<VertexId, std::vector<VertexId>>> links(n);
  for (const Face& f : faces) {
    const VertexId a = compact[f[0]], b = compact[f[1]], c = compact[f[2]];
    for (auto [u, x, y] : {std::array{a, b, c}, std::array{b, c, a}, std::array{c, a, b}}) {
      links[u][x].push_back(y);
      links[u][y].push_back(x);
    }
  }
  std::vector<std::vector<VertexId>> rot(n);
  for (VertexId u = 0; u < n; ++u) {
    auto& lk = links[u];
    for (auto& [x, nb] : lk) {
      if (nb.size() != 2) not_simple("edge " + std::to_string(u) + "-" + std::to_string(x) + " is not in exactly two faces");
    }
    // Walk the link cycle.
    const VertexId start = lk.begin()->first;
    VertexId prev = -1, cur = start;
    do {
      rot[u].push_back(cur);
      const auto& nb = lk[cur];
      const VertexId next = (nb[0] != prev) ? nb[0] : nb[1];
      prev = cur;
      cur = next;
    } while (cur != start && rot[u].size() <= lk.size());
    if (rot[u].size() != lk.size()) not_simple("link of vertex " + std::to_string(u) + " is not a single cycle");
  }
  try {
    return from_rotations(std::move(rot));
  } catch (const Error& e) {
    throw Error(ErrorKind::NotSimple, e.what());
  }
}

// ---------------------------------------------------------------------------
// Standard triangulations

Triangulation tetrahedron() {
  return Triangulation::from_rotations({{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}});
}

Triangulation octahedron() {
  // Antipodal pairs (0,1), (2,3), (4,5).
  std::vector<Face> faces;
  for (VertexId a : {0, 1}) {
    for (VertexId b : {2, 3}) {
      for (VertexId c : {4, 5}) faces.push_back({a, b, c});
    }
  }
  return Triangulation::from_faces(faces);
}

Triangulation k6_projective_plane() {
  const std::vector<Face> faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                   {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
  return Triangulation::from_faces(faces);
}

Triangulation k7_torus() {
  std::vector<Face> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return Triangulation::from_faces(faces);
}

// ---------------------------------------------------------------------------
// Invariants

int euler_genus(const Triangulation& t) {
  return 2 - (t.num_vertices() - t.num_edges() + t.num_faces());
}

bool is_orientable(const Triangulation& t) {
  const int n = t.num_vertices();
  std::vector<int> dir(n, 0);
  std::vector<VertexId> queue{0};
  dir[0] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId x = queue[qi];
    for (VertexId y : t.rotation(x)) {
      const int want = dir[x] * t.signature(x, y);
      if (dir[y] == 0) {
        dir[y] = want;
        queue.push_back(y);
      } else if (dir[y] != want) {
        return false;
      }
    }
  }
  return true;
}

SurfaceClass surface_class(const Triangulation& t) {
  return SurfaceClass::from_euler_genus(is_orientable(t), euler_genus(t));
}

std::vector<VertexId> link(const Triangulation& t, VertexId v) {
  auto r = t.rotation(v);
  return {r.begin(), r.end()};
}

int count_3cycles_through(const Triangulation& t, EdgeRef e) {
  return std::popcount(t.neighbors(e.a) & t.neighbors(e.b));
}

bool is_k4_sphere(const Triangulation& t) { return t.num_vertices() == 4; }

bool is_contractible(const Triangulation& t, EdgeRef e) {
  if (!t.adjacent(e.a, e.b)) throw Error(ErrorKind::NotFound, "not an edge");
  return !is_k4_sphere(t) && count_3cycles_through(t, e) == 2;
}

bool is_irreducible(const Triangulation& t) { return contractible_vertices(t) == 0; }

VertexMask contractible_vertices(const Triangulation& t) {
  if (is_k4_sphere(t)) return 0;
  VertexMask out = 0;
  for (VertexId u = 0; u < t.num_vertices(); ++u) {
    const VertexMask nu = t.neighbors(u);
    for (VertexMask m = nu & ~((bit(u) << 1) - 1); m; m &= m - 1) {
      const VertexId x = std::countr_zero(m);
      if (std::popcount(nu & t.neighbors(x)) == 2) out |= bit(u) | bit(x);
    }
  }
  return out;
}

std::vector<EdgeRef> contractible_edges(const Triangulation& t) {
  std::vector<EdgeRef> out;
  if (is_k4_sphere(t)) return out;
  for (const EdgeRef& e : t.edges()) {
    if (count_3cycles_through(t, e) == 2) out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local mutations

Triangulation contract(const Triangulation& t, EdgeRef e) {
  const VertexId a = e.a, c = e.b;
  if (a == c || !t.adjacent(a, c) || !is_contractible(t, e)) {
    throw Error(ErrorKind::NotContractible,
                "edge " + std::to_string(a) + "-" + std::to_string(c) + " is not contractible");
  }
  auto rot = t.rotations();
  const auto& ra = rot[a];
  const auto& rc = rot[c];
  const int da = static_cast<int>(ra.size());
  const int dc = static_cast<int>(rc.size());
  const int k = index_of(ra, c);
  const VertexId b = ra[wrap(k - 1, da)];
  const VertexId d = ra[wrap(k + 1, da)];

  // a's rotation without c, running d ... b.
  std::vector<VertexId> merged;
  merged.reserve(da + dc - 4);
  for (int i = 1; i < da; ++i) merged.push_back(ra[wrap(k + i, da)]);
  // c's rotation strictly between b and d, walking away from a.
  const int j = index_of(rc, a);
  const int step = (rc[wrap(j + 1, dc)] == b) ? 1 : -1;
  for (int i = 2; i < dc - 1; ++i) {
    const VertexId x = rc[wrap(j + step * i, dc)];
    merged.push_back(x);
    replace_in(rot[x], c, a);
  }
  rot[a] = std::move(merged);
  rot[b].erase(std::find(rot[b].begin(), rot[b].end(), c));
  rot[d].erase(std::find(rot[d].begin(), rot[d].end(), c));

  // Move the last vertex into c's slot.
  const VertexId last = t.num_vertices() - 1;
  if (c != last) {
    for (VertexId x : rot[last]) replace_in(rot[x], last, c);
    rot[c] = std::move(rot[last]);
  }
  rot.pop_back();
  return Triangulation::adopt(std::move(rot));
}

Triangulation split_vertex(const Triangulation& t, VertexId a, int i, int s) {
  const int d = t.degree(a);
  if (s < 2 || s > d || i < 0 || i >= d) {
    throw Error(ErrorKind::InvalidSplit, "split positions (" + std::to_string(i) + "," + std::to_string(s) +
                                             ") leave a vertex of degree < 3");
  }
  if (t.num_vertices() >= kMaxVertices) throw Error(ErrorKind::BudgetExceeded, "vertex limit reached");
  auto rot = t.rotations();
  const auto ra = rot[a];
  const VertexId a2 = t.num_vertices();
  auto v = [&](int k) { return ra[wrap(i + k - 1, d)]; };  // v(1) .. v(d)

  std::vector<VertexId> r1, r2;
  for (int k = 1; k <= s; ++k) r1.push_back(v(k));
  r1.push_back(a2);
  for (int k = s; k <= d; ++k) r2.push_back(v(k));
  r2.push_back(v(1));
  r2.push_back(a);

  for (int k = s + 1; k <= d; ++k) replace_in(rot[v(k)], a, a2);
  // v1 sees a1 on the v2 side and a2 on the vd side; vs sees a1 on the v(s-1) side.
  {
    auto& r = rot[v(1)];
    insert_between(r, a, v(d), a2);
  }
  {
    auto& r = rot[v(s)];
    const VertexId after = v(s + 1 > d ? 1 : s + 1);
    insert_between(r, a, after, a2);
  }
  // When s == d, v(s+1) == v(1) and the a2 slot in v(1) was just inserted.
  rot[a] = std::move(r1);
  rot.push_back(std::move(r2));
  return Triangulation::adopt(std::move(rot));
}

Triangulation split_vertex_between(const Triangulation& t, VertexId a, VertexId b, VertexId c) {
  const int d = t.degree(a);
  const int i = t.position(a, b);
  const int j = t.position(a, c);
  if (i < 0 || j < 0 || b == c) throw Error(ErrorKind::InvalidSplit, "split endpoints must be distinct neighbours");
  return split_vertex(t, a, i, wrap(j - i, d) + 1);
}

bool is_flippable(const Triangulation& t, EdgeRef e) {
  if (!t.adjacent(e.a, e.b)) return false;
  const auto r = t.rotation(e.a);
  const int d = static_cast<int>(r.size());
  const int k = t.position(e.a, e.b);
  const VertexId b = r[wrap(k - 1, d)];
  const VertexId dd = r[wrap(k + 1, d)];
  return b != dd && !t.adjacent(b, dd);
}

Triangulation diagonal_flip(const Triangulation& t, EdgeRef e) {
  const VertexId a = e.a, c = e.b;
  if (!t.adjacent(a, c)) throw Error(ErrorKind::IllegalFlip, "not an edge");
  const auto r = t.rotation(a);
  const int da = static_cast<int>(r.size());
  const int k = t.position(a, c);
  const VertexId b = r[wrap(k - 1, da)];
  const VertexId d = r[wrap(k + 1, da)];
  if (b == d || t.adjacent(b, d)) {
    throw Error(ErrorKind::IllegalFlip,
                "flip of " + std::to_string(a) + "-" + std::to_string(c) + " would create a repeated edge");
  }
  auto rot = t.rotations();
  rot[a].erase(rot[a].begin() + k);
  rot[c].erase(std::find(rot[c].begin(), rot[c].end(), a));
  insert_between(rot[b], a, c, d);
  insert_between(rot[d], a, c, b);
  return Triangulation::adopt(std::move(rot));
}

Triangulation relabel(const Triangulation& t, std::span<const VertexId> perm) {
  std::vector<std::vector<VertexId>> rot(t.num_vertices());
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    auto& r = rot[perm[v]];
    for (VertexId x : t.rotation(v)) r.push_back(perm[x]);
  }
  return Triangulation::adopt(std::move(rot));
}

Triangulation mirror(const Triangulation& t) {
  auto rot = t.rotations();
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return Triangulation::adopt(std::move(rot));
}

}  // namespace surftri
