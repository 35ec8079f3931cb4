#include "surftri/cycles.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace surftri {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int components() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) c += (find(i) == i);
    return c;
  }
  std::vector<int> parent;
};

void require_cycle(const Triangulation& t, const Cycle3& c) {
  const int n = t.num_vertices();
  for (VertexId x : c) {
    if (x < 0 || x >= n) throw Error(ErrorKind::NotACycle, "vertex out of range");
  }
  if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2] || !t.adjacent(c[0], c[1]) || !t.adjacent(c[1], c[2]) ||
      !t.adjacent(c[0], c[2])) {
    throw Error(ErrorKind::NotACycle, "vertices are not a 3-cycle");
  }
}

// The neighbourhood of a nonfacial 3-cycle w0 w1 w2.  At each w_i the two
// cycle neighbours cut the rotation into two open arcs ("sides").  Each
// (vertex, side) pair is one node of the boundary obtained by cutting; the
// copies of the cycle edges join these six nodes into either two triangles
// (two-sided cycle) or one hexagon (one-sided cycle).
struct CycleNeighbourhood {
  Cycle3 c{};
  // side[i][x] for x a non-cycle neighbour of c[i]; -1 otherwise.
  std::array<std::array<signed char, kMaxVertices>, 3> side{};
  std::array<std::array<int, 2>, 6> nodes{};  // two neighbours per boundary node
  std::array<int, 6> node_degree{};

  static int node(int i, int s) { return 2 * i + s; }

  CycleNeighbourhood(const Triangulation& t, const Cycle3& cyc) : c(cyc) {
    for (auto& s : side) s.fill(-1);
    for (int i = 0; i < 3; ++i) {
      const VertexId w = c[i];
      const VertexId p = c[(i + 1) % 3];
      const VertexId q = c[(i + 2) % 3];
      const auto r = t.rotation(w);
      const int d = static_cast<int>(r.size());
      const int ip = t.position(w, p);
      int s = 0;
      for (int k = 1; k < d; ++k) {
        const VertexId x = r[wrap(ip + k, d)];
        if (x == q) {
          s = 1;
          continue;
        }
        side[i][x] = static_cast<signed char>(s);
      }
    }
    node_degree.fill(0);
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const auto r = t.rotation(c[i]);
      const int d = static_cast<int>(r.size());
      const int pos = t.position(c[i], c[j]);
      for (int dk : {-1, 1}) {
        const VertexId x = r[wrap(pos + dk, d)];
        const int a = node(i, side[i][x]);
        const int b = node(j, side[j][x]);
        nodes[a][node_degree[a]++] = b;
        nodes[b][node_degree[b]++] = a;
      }
    }
  }

  bool one_sided() const {
    UnionFind uf(6);
    for (int a = 0; a < 6; ++a) {
      for (int b : nodes[a]) uf.unite(a, b);
    }
    return uf.components() == 1;
  }

  // Side of the corner of face f at cycle vertex c[i].
  int corner_side(int i, const Face& f) const {
    for (VertexId x : f) {
      if (x != c[0] && x != c[1] && x != c[2]) return side[i][x];
    }
    return -1;
  }
};

bool separates(const Triangulation& t, const Cycle3& c) {
  const auto faces = t.faces();
  auto on_cycle = [&](VertexId a, VertexId b) {
    const bool ia = (a == c[0] || a == c[1] || a == c[2]);
    const bool ib = (b == c[0] || b == c[1] || b == c[2]);
    return ia && ib;
  };
  std::map<std::pair<VertexId, VertexId>, int> first_face;
  UnionFind uf(static_cast<int>(faces.size()));
  for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
    const Face& f = faces[fi];
    for (int k = 0; k < 3; ++k) {
      VertexId a = f[k], b = f[(k + 1) % 3];
      if (on_cycle(a, b)) continue;
      if (a > b) std::swap(a, b);
      auto [it, fresh] = first_face.emplace(std::pair{a, b}, fi);
      if (!fresh) uf.unite(it->second, fi);
    }
  }
  return uf.components() > 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// FrameLabels

const char* to_string(OrientationRelation r) {
  switch (r) {
    case OrientationRelation::Opposite: return "opposite";
    case OrientationRelation::Same: return "same";
    case OrientationRelation::Unoriented: return "unoriented";
  }
  return "?";
}

VertexMask FrameLabels::vertices() const {
  VertexMask m = 0;
  for (VertexId x : u) m |= bit(x);
  for (VertexId x : v) m |= bit(x);
  if (kind == FrameKind::Crosscap) m |= bit(hub);
  return m;
}

bool FrameLabels::is_frame_edge(VertexId a, VertexId b) const {
  auto in = [](const std::array<VertexId, 3>& f, VertexId x) { return x == f[0] || x == f[1] || x == f[2]; };
  if (kind == FrameKind::Handle) return (in(u, a) && in(u, b)) || (in(v, a) && in(v, b));
  const VertexMask hex = vertices() & ~bit(hub);
  if (a == hub) return (hex & bit(b)) != 0;
  if (b == hub) return (hex & bit(a)) != 0;
  const std::array<VertexId, 6> h{u[0], u[1], u[2], v[0], v[1], v[2]};
  for (int k = 0; k < 6; ++k) {
    const VertexId x = h[k], y = h[(k + 1) % 6];
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

void FrameLabels::rename(VertexId from, VertexId to) {
  for (auto& x : u) x = (x == from) ? to : x;
  for (auto& x : v) x = (x == from) ? to : x;
  if (hub == from) hub = to;
}

// ---------------------------------------------------------------------------
// Classification

CycleClass classify_3cycle(const Triangulation& t, Cycle3 c) {
  require_cycle(t, c);
  if (t.has_face(c[0], c[1], c[2])) return {true, true, false};
  const CycleNeighbourhood nb(t, c);
  const bool one_sided = nb.one_sided();
  return {false, one_sided ? false : separates(t, c), one_sided};
}

std::vector<Cycle3> nonfacial_3cycles(const Triangulation& t) {
  std::vector<Cycle3> out;
  const int n = t.num_vertices();
  for (VertexId a = 0; a < n; ++a) {
    const VertexMask above_a = ~((bit(a) << 1) - 1);
    for (VertexMask mb = t.neighbors(a) & above_a; mb; mb &= mb - 1) {
      const VertexId b = std::countr_zero(mb);
      const VertexMask above_b = ~((bit(b) << 1) - 1);
      for (VertexMask mc = t.neighbors(a) & t.neighbors(b) & above_b; mc; mc &= mc - 1) {
        const VertexId c = std::countr_zero(mc);
        if (!t.has_face(a, b, c)) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

std::vector<Cycle3> nonseparating_3cycles(const Triangulation& t) {
  std::vector<Cycle3> out;
  for (const auto& c : nonfacial_3cycles(t)) {
    if (!classify_3cycle(t, c).separating) out.push_back(c);
  }
  return out;
}

TransversePair find_transverse_pair(const Triangulation& t, VertexId v) {
  if (!is_irreducible(t)) throw Error(ErrorKind::NotIrreducible, "triangulation has a contractible edge");
  if (surface_class(t) == SurfaceClass{true, 0}) {
    throw Error(ErrorKind::NotFound, "the sphere has no nonseparating 3-cycles");
  }
  const auto lk = t.rotation(v);
  const int d = static_cast<int>(lk.size());
  auto nonfacial_chord = [&](int i, int k) {
    const int gap = wrap(k - i, d);
    return gap != 0 && gap != 1 && gap != d - 1 && t.adjacent(lk[i], lk[k]);
  };
  auto nonseparating = [&](int i, int k) { return !classify_3cycle(t, {v, lk[i], lk[k]}).separating; };

  // Shortest chord of the link; any vertex strictly inside its short side
  // carries a chord that must leave that side.
  int best_i = -1, best_k = -1, best_len = d;
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      if (!nonfacial_chord(i, k)) continue;
      const int len = wrap(k - i, d);
      if (len < best_len) {
        best_len = len;
        best_i = i;
        best_k = k;
      }
    }
  }
  if (best_i >= 0) {
    for (int step = 1; step < best_len; ++step) {
      const int j = wrap(best_i + step, d);
      for (int l = 0; l < d; ++l) {
        const int off = wrap(l - best_i, d);
        if (off <= best_len) continue;  // must lie on the other path
        if (!nonfacial_chord(j, l)) continue;
        if (nonseparating(best_i, best_k) && nonseparating(j, l)) {
          return {{v, lk[best_i], lk[best_k]}, {v, lk[j], lk[l]}};
        }
      }
    }
  }
  // Exhaustive fallback.
  for (int i = 0; i < d; ++i) {
    for (int k = i + 2; k < d; ++k) {
      if (!nonfacial_chord(i, k) || !nonseparating(i, k)) continue;
      for (int j = i + 1; j < k; ++j) {
        for (int l = 0; l < d; ++l) {
          if ((l > i && l < k) || l == i || l == k) continue;
          if (nonfacial_chord(j, l) && nonseparating(j, l)) {
            return {{v, lk[i], lk[k]}, {v, lk[j], lk[l]}};
          }
        }
      }
    }
  }
  throw Error(ErrorKind::NotFound, "no transverse pair of nonseparating 3-cycles at vertex " + std::to_string(v));
}

// ---------------------------------------------------------------------------
// Cut / cap

namespace {

CutResult do_cut(const Triangulation& t, const Cycle3& c, const CycleNeighbourhood& nb, bool one_sided) {
  const int n = t.num_vertices();
  // Compact ids: surviving vertices keep their order, the six boundary nodes
  // follow, then the hub.
  std::vector<VertexId> id(n, -1);
  VertexId next = 0;
  for (VertexId x = 0; x < n; ++x) {
    if (x != c[0] && x != c[1] && x != c[2]) id[x] = next++;
  }
  const VertexId node_base = next;
  auto node_id = [&](int i, int s) { return node_base + CycleNeighbourhood::node(i, s); };

  std::vector<Face> faces;
  for (const Face& f : t.faces()) {
    Face g{};
    for (int k = 0; k < 3; ++k) {
      const VertexId x = f[k];
      int ci = -1;
      for (int i = 0; i < 3; ++i) {
        if (c[i] == x) ci = i;
      }
      g[k] = (ci < 0) ? id[x] : node_id(ci, nb.corner_side(ci, f));
    }
    faces.push_back(g);
  }

  FrameLabels frame;
  if (!one_sided) {
    // u is the triangle through node (0, 0).
    const int start = CycleNeighbourhood::node(0, 0);
    std::array<int, 3> tri_u{start, nb.nodes[start][0], nb.nodes[start][1]};
    for (int i = 0; i < 3; ++i) {
      int in_u = -1;
      for (int s = 0; s < 2; ++s) {
        const int nd = CycleNeighbourhood::node(i, s);
        if (nd == tri_u[0] || nd == tri_u[1] || nd == tri_u[2]) in_u = s;
      }
      frame.u[i] = node_id(i, in_u);
      frame.v[i] = node_id(i, 1 - in_u);
    }
    frame.kind = FrameKind::Handle;
    faces.push_back({frame.u[0], frame.u[1], frame.u[2]});
    faces.push_back({frame.v[0], frame.v[1], frame.v[2]});
  } else {
    // Walk the hexagon from node (0, 0) towards the copy of c[1].
    std::array<int, 6> hex{};
    hex[0] = CycleNeighbourhood::node(0, 0);
    hex[1] = (nb.nodes[hex[0]][0] / 2 == 1) ? nb.nodes[hex[0]][0] : nb.nodes[hex[0]][1];
    for (int k = 2; k < 6; ++k) {
      const auto& nbr = nb.nodes[hex[k - 1]];
      hex[k] = (nbr[0] == hex[k - 2]) ? nbr[1] : nbr[0];
    }
    frame.kind = FrameKind::Crosscap;
    for (int i = 0; i < 3; ++i) {
      frame.u[i] = node_base + hex[i];
      frame.v[i] = node_base + hex[i + 3];
    }
    frame.hub = node_base + 6;
    const std::array<VertexId, 6> h{frame.u[0], frame.u[1], frame.u[2], frame.v[0], frame.v[1], frame.v[2]};
    for (int k = 0; k < 6; ++k) faces.push_back({frame.hub, h[k], h[(k + 1) % 6]});
  }
  return {Triangulation::from_faces(faces), frame};
}

}  // namespace

CutResult cut_cap_two_sided(const Triangulation& t, Cycle3 c) {
  const CycleClass cls = classify_3cycle(t, c);
  if (cls.facial || cls.separating || cls.one_sided) {
    throw Error(ErrorKind::WrongCycleClass, "two-sided cut needs a nonfacial nonseparating two-sided 3-cycle");
  }
  return do_cut(t, c, CycleNeighbourhood(t, c), false);
}

CutResult cut_cap_one_sided(const Triangulation& t, Cycle3 c) {
  const CycleClass cls = classify_3cycle(t, c);
  if (cls.facial || !cls.one_sided) {
    throw Error(ErrorKind::WrongCycleClass, "one-sided cut needs a one-sided 3-cycle");
  }
  return do_cut(t, c, CycleNeighbourhood(t, c), true);
}

CutResult cut_cap(const Triangulation& t, Cycle3 c) {
  const CycleClass cls = classify_3cycle(t, c);
  return cls.one_sided ? cut_cap_one_sided(t, c) : cut_cap_two_sided(t, c);
}

bool frame_valid(const Triangulation& t, const FrameLabels& f) {
  const int n = t.num_vertices();
  const int expected = (f.kind == FrameKind::Handle) ? 6 : 7;
  for (VertexId x : f.u) {
    if (x < 0 || x >= n) return false;
  }
  for (VertexId x : f.v) {
    if (x < 0 || x >= n) return false;
  }
  if (f.kind == FrameKind::Crosscap && (f.hub < 0 || f.hub >= n)) return false;
  if (std::popcount(f.vertices()) != expected) return false;
  if (f.kind == FrameKind::Handle) {
    return t.has_face(f.u[0], f.u[1], f.u[2]) && t.has_face(f.v[0], f.v[1], f.v[2]);
  }
  if (t.degree(f.hub) != 6) return false;
  const std::array<VertexId, 6> h{f.u[0], f.u[1], f.u[2], f.v[0], f.v[1], f.v[2]};
  const auto r = t.rotation(f.hub);
  const int p = t.position(f.hub, h[0]);
  if (p < 0) return false;
  bool fwd = true, bwd = true;
  for (int k = 0; k < 6; ++k) {
    fwd = fwd && r[wrap(p + k, 6)] == h[k];
    bwd = bwd && r[wrap(p - k, 6)] == h[k];
  }
  return fwd || bwd;
}

OrientationRelation orientation_relation(const Triangulation& t, const FrameLabels& f) {
  if (f.kind != FrameKind::Handle) throw Error(ErrorKind::InvalidFrame, "orientation relation needs a handle frame");
  if (!is_orientable(t)) return OrientationRelation::Unoriented;
  // Rotations are normalised, so on an orientable surface they agree globally.
  auto sense = [&](const std::array<VertexId, 3>& face) {
    const auto r = t.rotation(face[0]);
    const int d = static_cast<int>(r.size());
    return r[wrap(t.position(face[0], face[1]) + 1, d)] == face[2] ? 1 : -1;
  };
  return sense(f.u) == sense(f.v) ? OrientationRelation::Same : OrientationRelation::Opposite;
}

Triangulation inverse_cut_cap(const Triangulation& t, const FrameLabels& f) {
  if (!frame_valid(t, f)) throw Error(ErrorKind::InvalidFrame, "frame is not present in the triangulation");
  std::vector<VertexId> image(t.num_vertices());
  std::iota(image.begin(), image.end(), 0);
  for (int i = 0; i < 3; ++i) image[f.v[i]] = f.u[i];
  auto sorted = [](Face x) {
    std::sort(x.begin(), x.end());
    return x;
  };
  const Face cap_u = sorted({f.u[0], f.u[1], f.u[2]});
  const Face cap_v = sorted({f.v[0], f.v[1], f.v[2]});
  std::vector<Face> faces;
  for (const Face& face : t.faces()) {
    if (f.kind == FrameKind::Handle) {
      const Face s = sorted(face);
      if (s == cap_u || s == cap_v) continue;
    } else if (face[0] == f.hub || face[1] == f.hub || face[2] == f.hub) {
      continue;
    }
    faces.push_back({image[face[0]], image[face[1]], image[face[2]]});
  }
  return Triangulation::from_faces(faces);
}

std::vector<std::pair<FrameLabels, Triangulation>> inverse_cut_cap_all(const Triangulation& t, const FrameLabels& f) {
  std::vector<std::pair<FrameLabels, Triangulation>> out;
  if (f.kind == FrameKind::Crosscap) {
    try {
      out.emplace_back(f, inverse_cut_cap(t, f));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotSimple) throw;
    }
    return out;
  }
  std::array<int, 3> perm{0, 1, 2};
  do {
    FrameLabels g = f;
    for (int i = 0; i < 3; ++i) g.v[i] = f.v[perm[i]];
    try {
      out.emplace_back(g, inverse_cut_cap(t, g));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotSimple) throw;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace surftri
