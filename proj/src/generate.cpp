#include "surftri/generate.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

#include "surftri/parallel.hpp"

namespace surftri {

std::vector<SplitMove> enumerate_splits(const Triangulation& t) {
  std::vector<SplitMove> out;
  for (VertexId a = 0; a < t.num_vertices(); ++a) {
    const int d = t.degree(a);
    for (int i = 0; i < d; ++i) {
      for (int s = 2; s <= d - i; ++s) out.push_back({a, i, s});
    }
  }
  return out;
}

Triangulation apply_split(const Triangulation& t, const SplitMove& m) { return split_vertex(t, m.vertex, m.i, m.s); }

namespace {

using MoveKey = std::tuple<VertexId, VertexId, VertexId>;

MoveKey move_key(VertexId a, VertexId b, VertexId c) { return {a, std::min(b, c), std::max(b, c)}; }

// Smaller is preferred as the reduction edge.
using EdgeKey = std::array<int, 4>;

EdgeKey edge_key(const Triangulation& t, VertexId x, VertexId y) {
  const VertexMask common = t.neighbors(x) & t.neighbors(y);
  const VertexId p = std::countr_zero(common);
  const VertexId q = 63 - std::countl_zero(common);
  const int dx = t.degree(x), dy = t.degree(y), dp = t.degree(p), dq = t.degree(q);
  return {std::min(dx, dy), std::max(dx, dy), std::min(dp, dq), std::max(dp, dq)};
}

std::pair<VertexId, VertexId> sorted_pair(VertexId a, VertexId b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

std::vector<SplitMove> split_orbit_representatives(const Triangulation& t, const CanonicalForm& form) {
  const auto moves = enumerate_splits(t);
  const auto autos = automorphisms(t, form);
  if (autos.size() == 1) return moves;
  std::vector<SplitMove> out;
  for (const SplitMove& m : moves) {
    const auto r = t.rotation(m.vertex);
    const VertexId b = r[m.i], c = r[m.i + m.s - 1];
    const MoveKey key = move_key(m.vertex, b, c);
    bool least = true;
    for (std::size_t k = 1; k < autos.size() && least; ++k) {
      const auto& p = autos[k];
      least = !(move_key(p[m.vertex], p[b], p[c]) < key);
    }
    if (least) out.push_back(m);
  }
  return out;
}

bool is_canonical_extension(const Triangulation& child, EdgeRef e) {
  if (!is_contractible(child, e)) return false;
  const EdgeKey mine = edge_key(child, e.a, e.b);
  std::vector<EdgeRef> best;
  for (const EdgeRef& f : contractible_edges(child)) {
    const EdgeKey k = edge_key(child, f.a, f.b);
    if (k > mine) continue;
    if (k < mine) return false;
    best.push_back(f);
  }
  if (best.size() == 1) return true;
  const CanonicalForm form = canonical_form(child);
  const auto l0 = traversal_labels(child, form.optimal.front());
  std::pair<VertexId, VertexId> target{kMaxVertices, kMaxVertices};
  for (const EdgeRef& f : best) target = std::min(target, sorted_pair(l0[f.a], l0[f.b]));
  for (const TraversalStart& s : form.optimal) {
    const auto l = traversal_labels(child, s);
    if (sorted_pair(l[e.a], l[e.b]) == target) return true;
  }
  return false;
}

namespace {

std::vector<Triangulation> accepted_children(const GenerationSchema& schema, const SchemaOptions& opts,
                                             const Triangulation& t) {
  std::vector<Triangulation> out;
  const CanonicalForm form = canonical_form(t);
  const VertexId fresh = t.num_vertices();
  for (const SplitMove& m : split_orbit_representatives(t, form)) {
    Triangulation child = apply_split(t, m);
    if (schema.rule && !schema.rule(t, child)) continue;
    if (t.num_vertices() >= opts.max_vertices) {
      throw Error(ErrorKind::BudgetExceeded,
                  "vertex budget " + std::to_string(opts.max_vertices) + " reached with admissible splits left");
    }
    if (is_canonical_extension(child, {m.vertex, fresh})) out.push_back(std::move(child));
  }
  return out;
}

void dfs(const GenerationSchema& schema, const SchemaOptions& opts, const Triangulation& t,
         std::vector<Triangulation>& out) {
  if (!schema.filter || schema.filter(t)) out.push_back(t);
  for (const Triangulation& c : accepted_children(schema, opts, t)) dfs(schema, opts, c, out);
}

struct Task {
  Triangulation t;
  bool expand = true;  // false: emit t only, its children are separate tasks
};

constexpr std::size_t kFrontierTarget = 256;

}  // namespace

void run_schema(const GenerationSchema& schema, const SchemaOptions& opts,
                const std::function<void(const Triangulation&)>& sink) {
  if (opts.jobs == 1) {
    std::vector<Triangulation> out;
    for (const Triangulation& b : schema.basis) dfs(schema, opts, b, out);
    for (const auto& t : out) sink(t);
    return;
  }
  const int jobs = resolve_jobs(opts.jobs);
  // Unfold the top of the forest into tasks in depth-first order.  The
  // unfolding depends only on the schema, so output order does not depend on
  // the worker count.
  std::vector<Task> tasks;
  for (const auto& b : schema.basis) tasks.push_back({b, true});
  for (;;) {
    std::size_t open = 0;
    for (const auto& task : tasks) open += task.expand;
    if (open == 0 || open >= kFrontierTarget) break;
    std::vector<std::vector<Triangulation>> kids(tasks.size());
    ExceptionSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      if (tasks[k].expand) err.run([&] { kids[k] = accepted_children(schema, opts, tasks[k].t); });
    }
    err.rethrow();
    std::vector<Task> next;
    bool grew = false;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      if (!tasks[k].expand) {
        next.push_back(std::move(tasks[k]));
        continue;
      }
      next.push_back({std::move(tasks[k].t), false});
      for (auto& c : kids[k]) next.push_back({std::move(c), true});
      grew = grew || !kids[k].empty();
    }
    tasks = std::move(next);
    if (!grew) break;
  }
  std::vector<std::vector<Triangulation>> results(tasks.size());
  ExceptionSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    err.run([&] {
      if (tasks[k].expand) {
        dfs(schema, opts, tasks[k].t, results[k]);
      } else if (!schema.filter || schema.filter(tasks[k].t)) {
        results[k].push_back(tasks[k].t);
      }
    });
  }
  err.rethrow();
  for (const auto& r : results) {
    for (const auto& t : r) sink(t);
  }
}

std::vector<Triangulation> all_triangulations(SurfaceClass surface, int n, std::span<const Triangulation> irreducibles,
                                              int min_degree, int jobs) {
  (void)surface;
  Dedup basis;
  for (const auto& t : irreducibles) {
    if (t.num_vertices() <= n) basis.insert(t);
  }
  GenerationSchema schema;
  schema.basis = basis.values();
  schema.rule = [n](const Triangulation& parent, const Triangulation&) { return parent.num_vertices() < n; };
  schema.filter = [n, min_degree](const Triangulation& t) {
    if (t.num_vertices() != n) return false;
    for (VertexId v = 0; v < n; ++v) {
      if (t.degree(v) < min_degree) return false;
    }
    return true;
  };
  std::vector<Triangulation> out;
  run_schema(schema, {n, jobs}, [&](const Triangulation& t) { out.push_back(t); });
  return out;
}

bool Dedup::insert(const Triangulation& t) { return insert(canonical_code(t), t); }

bool Dedup::insert(CanonicalCode code, const Triangulation& t) { return items_.emplace(std::move(code), t).second; }

std::vector<Triangulation> Dedup::values() const {
  std::vector<Triangulation> out;
  out.reserve(items_.size());
  for (const auto& [code, t] : items_) out.push_back(t);
  return out;
}

}  // namespace surftri
