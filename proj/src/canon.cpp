#include "surftri/canon.hpp"

#include "surftri/error.hpp"

#include <algorithm>
#include <array>

namespace surftri {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

// Scratch state for one breadth-first traversal.  Vertices are labelled in
// order of discovery; each vertex lists its neighbours starting from the
// neighbour it was discovered from, in the direction inherited across that
// edge.  The code is: for every vertex in label order, its degree followed by
// the labels of its neighbours.
struct Traversal {
  std::array<int, kMaxVertices> label{};
  std::array<VertexId, kMaxVertices> order{};
  std::array<int, kMaxVertices> start_pos{};
  std::array<int, kMaxVertices> dir{};
};

enum class Cmp { Less, Equal, Greater };

class CodeWriter {
 public:
  CodeWriter(std::uint8_t* out, const std::uint8_t* best, bool have_best)
      : out_(out), best_(best), state_(have_best ? Cmp::Equal : Cmp::Less) {}

  // Returns false when the candidate is already worse than the best code.
  bool emit(int value) {
    const auto b = static_cast<std::uint8_t>(value);
    if (state_ == Cmp::Equal) {
      if (b > best_[pos_]) return false;
      if (b < best_[pos_]) state_ = Cmp::Less;
    }
    out_[pos_++] = b;
    return true;
  }

  Cmp state() const { return state_; }

 private:
  std::uint8_t* out_;
  const std::uint8_t* best_;
  Cmp state_;
  std::size_t pos_ = 0;
};

// Runs the traversal from (v, w, d).  Returns false if aborted.
bool traverse(const Triangulation& t, const TraversalStart& s, Traversal& tr, CodeWriter* w) {
  const int n = t.num_vertices();
  for (int i = 0; i < n; ++i) tr.label[i] = -1;
  tr.label[s.vertex] = 0;
  tr.order[0] = s.vertex;
  tr.start_pos[s.vertex] = t.position(s.vertex, s.first);
  tr.dir[s.vertex] = s.dir;
  int count = 1;
  for (int qi = 0; qi < n; ++qi) {
    const VertexId x = tr.order[qi];
    const auto r = t.rotation(x);
    const int d = static_cast<int>(r.size());
    const int p = tr.start_pos[x];
    const int dx = tr.dir[x];
    if (w && !w->emit(d)) return false;
    for (int k = 0; k < d; ++k) {
      const VertexId y = r[wrap(p + dx * k, d)];
      if (tr.label[y] < 0) {
        tr.label[y] = count;
        tr.order[count++] = y;
        // At y, walking from x continues to the vertex that preceded y at x.
        const VertexId prev = r[wrap(p + dx * (k - 1), d)];
        const auto ry = t.rotation(y);
        const int dy = static_cast<int>(ry.size());
        const int q = t.position(y, x);
        tr.start_pos[y] = q;
        tr.dir[y] = (ry[wrap(q + 1, dy)] == prev) ? 1 : -1;
      }
      if (w && !w->emit(tr.label[y])) return false;
    }
  }
  return true;
}

std::vector<TraversalStart> candidate_starts(const Triangulation& t, const CanonOptions& opts) {
  std::vector<int> dirs{1, -1};
  if (!opts.identify_reflections && is_orientable(t)) dirs = {1};
  std::vector<TraversalStart> out;
  auto add_vertex = [&](VertexId v, VertexMask firsts) {
    for (VertexId w : t.rotation(v)) {
      if (!(firsts & bit(w))) continue;
      for (int d : dirs) out.push_back({v, w, d});
    }
  };
  if (opts.frame == nullptr) {
    int min_deg = kMaxVertices;
    for (VertexId v = 0; v < t.num_vertices(); ++v) min_deg = std::min(min_deg, t.degree(v));
    for (VertexId v = 0; v < t.num_vertices(); ++v) {
      if (t.degree(v) == min_deg) add_vertex(v, ~VertexMask{0});
    }
  } else if (opts.frame->kind == FrameKind::Crosscap) {
    add_vertex(opts.frame->hub, ~VertexMask{0});
  } else {
    for (const auto& face : {opts.frame->u, opts.frame->v}) {
      const VertexMask fm = bit(face[0]) | bit(face[1]) | bit(face[2]);
      for (VertexId x : face) add_vertex(x, fm & ~bit(x));
    }
  }
  return out;
}

// Frame description under a labelling, invariant under the frame's own symmetries.
std::vector<std::uint8_t> frame_suffix(const FrameLabels& f, const std::array<int, kMaxVertices>& label) {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(f.kind)};
  if (f.kind == FrameKind::Crosscap) {
    out.push_back(static_cast<std::uint8_t>(label[f.hub]));
    return out;
  }
  std::array<std::pair<int, int>, 3> a{}, b{};
  for (int i = 0; i < 3; ++i) {
    a[i] = {label[f.u[i]], label[f.v[i]]};
    b[i] = {label[f.v[i]], label[f.u[i]]};
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto& m = std::min(a, b);
  for (auto [x, y] : m) {
    out.push_back(static_cast<std::uint8_t>(x));
    out.push_back(static_cast<std::uint8_t>(y));
  }
  return out;
}

CanonicalForm compute(const Triangulation& t, const CanonOptions& opts, bool collect_all) {
  const int n = t.num_vertices();
  const std::size_t main_len = static_cast<std::size_t>(n + 2 * t.num_edges());
  CanonicalForm form;
  std::vector<std::uint8_t> cand(main_len);
  Traversal tr;
  bool have_best = false;
  for (const TraversalStart& s : candidate_starts(t, opts)) {
    CodeWriter w(cand.data(), form.code.data(), have_best);
    if (!traverse(t, s, tr, &w)) continue;
    Cmp state = w.state();
    std::vector<std::uint8_t> suffix;
    if (opts.frame) {
      suffix = frame_suffix(*opts.frame, tr.label);
      if (state == Cmp::Equal) {
        const auto cmp = std::lexicographical_compare_three_way(
            suffix.begin(), suffix.end(), form.code.begin() + static_cast<std::ptrdiff_t>(main_len),
            form.code.end());
        if (cmp > 0) continue;
        if (cmp < 0) state = Cmp::Less;
      }
    }
    if (state == Cmp::Less) {
      form.code.assign(cand.begin(), cand.end());
      form.code.insert(form.code.end(), suffix.begin(), suffix.end());
      form.optimal.clear();
      have_best = true;
    }
    if (collect_all || form.optimal.empty()) form.optimal.push_back(s);
  }
  return form;
}

}  // namespace

CanonicalCode canonical_code(const Triangulation& t, const CanonOptions& opts) {
  return compute(t, opts, false).code;
}

CanonicalForm canonical_form(const Triangulation& t, const CanonOptions& opts) { return compute(t, opts, true); }

Triangulation decode_canonical_code(std::span<const std::uint8_t> code, std::size_t* consumed) {
  std::vector<std::vector<VertexId>> rot;
  std::size_t pos = 0;
  int seen = 1;  // labels are assigned in order, so the traversal ends when every seen vertex has a record
  while (static_cast<int>(rot.size()) < seen) {
    if (pos >= code.size()) throw Error(ErrorKind::Parse, "truncated canonical code");
    const int d = code[pos++];
    if (d < 3 || pos + d > code.size()) throw Error(ErrorKind::Parse, "bad degree in canonical code");
    auto& r = rot.emplace_back();
    for (int k = 0; k < d; ++k) {
      const int y = code[pos++];
      if (y >= kMaxVertices) throw Error(ErrorKind::Parse, "label out of range in canonical code");
      seen = std::max(seen, y + 1);
      r.push_back(y);
    }
  }
  if (consumed) *consumed = pos;
  return Triangulation::from_rotations(std::move(rot));
}

std::vector<VertexId> traversal_labels(const Triangulation& t, const TraversalStart& start) {
  Traversal tr;
  traverse(t, start, tr, nullptr);
  return {tr.label.begin(), tr.label.begin() + t.num_vertices()};
}

std::vector<std::vector<VertexId>> automorphisms(const Triangulation& t, const CanonicalForm& form) {
  const int n = t.num_vertices();
  std::vector<std::vector<VertexId>> out;
  const auto base = traversal_labels(t, form.optimal.front());
  std::vector<VertexId> base_inv(n);
  for (VertexId v = 0; v < n; ++v) base_inv[base[v]] = v;
  for (const auto& s : form.optimal) {
    const auto lab = traversal_labels(t, s);
    // v -> base^{-1}(lab(v)) maps the start onto the first optimal start.
    std::vector<VertexId> perm(n);
    for (VertexId v = 0; v < n; ++v) perm[v] = base_inv[lab[v]];
    out.push_back(std::move(perm));
  }
  // Identity first.
  auto it = std::find_if(out.begin(), out.end(), [](const std::vector<VertexId>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != static_cast<VertexId>(i)) return false;
    }
    return true;
  });
  if (it != out.end()) std::iter_swap(out.begin(), it);
  return out;
}

std::vector<std::vector<VertexId>> automorphisms(const Triangulation& t, const CanonOptions& opts) {
  return automorphisms(t, canonical_form(t, opts));
}

namespace {

Triangulation relabel_by_traversal(const Triangulation& t, const TraversalStart& start) {
  Traversal tr;
  traverse(t, start, tr, nullptr);
  const int n = t.num_vertices();
  std::vector<std::vector<VertexId>> rot(n);
  for (int l = 0; l < n; ++l) {
    const VertexId x = tr.order[l];
    const auto r = t.rotation(x);
    const int d = static_cast<int>(r.size());
    auto& out = rot[l];
    out.reserve(d);
    for (int k = 0; k < d; ++k) out.push_back(tr.label[r[wrap(tr.start_pos[x] + tr.dir[x] * k, d)]]);
  }
  return Triangulation::adopt(std::move(rot));
}

}  // namespace

Triangulation canonical_triangulation(const Triangulation& t) {
  const auto form = compute(t, {}, false);
  return relabel_by_traversal(t, form.optimal.front());
}

CanonicalFramed canonical_framed(const Triangulation& t, const FrameLabels& frame) {
  CanonOptions opts;
  opts.frame = &frame;
  const auto form = compute(t, opts, false);
  const auto lab = traversal_labels(t, form.optimal.front());
  FrameLabels f = frame;
  for (auto& x : f.u) x = lab[x];
  for (auto& x : f.v) x = lab[x];
  if (f.hub >= 0) f.hub = lab[f.hub];
  // Pick one representative of the frame's own symmetry class.
  if (f.kind == FrameKind::Handle) {
    std::array<std::pair<VertexId, VertexId>, 3> a{}, b{};
    for (int i = 0; i < 3; ++i) {
      a[i] = {f.u[i], f.v[i]};
      b[i] = {f.v[i], f.u[i]};
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto& m = std::min(a, b);
    for (int i = 0; i < 3; ++i) {
      f.u[i] = m[i].first;
      f.v[i] = m[i].second;
    }
  } else {
    std::array<VertexId, 6> hex{f.u[0], f.u[1], f.u[2], f.v[0], f.v[1], f.v[2]};
    std::array<VertexId, 6> best = hex;
    for (int r = 0; r < 6; ++r) {
      for (int d : {1, -1}) {
        std::array<VertexId, 6> c{};
        for (int k = 0; k < 6; ++k) c[k] = hex[((r + d * k) % 6 + 6) % 6];
        best = std::min(best, c);
      }
    }
    f.u = {best[0], best[1], best[2]};
    f.v = {best[3], best[4], best[5]};
  }
  return {relabel_by_traversal(t, form.optimal.front()), f};
}

}  // namespace surftri
