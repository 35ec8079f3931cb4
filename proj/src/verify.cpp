#include "surftri/verify.hpp"

#include <algorithm>
#include <random>

#include "surftri/cycles.hpp"
#include "surftri/parallel.hpp"

namespace surftri {

namespace {

// Rough heap cost of one stored code.
std::size_t code_bytes(const CanonicalCode& c) { return c.size() + 96; }

std::vector<EdgeRef> flippable_edges(const Triangulation& t) {
  std::vector<EdgeRef> out;
  for (const EdgeRef& e : t.edges()) {
    if (is_flippable(t, e)) out.push_back(e);
  }
  return out;
}

// Breadth-first flip closure.  `stop` may end the search early; returns false then.
template <class Stop>
bool flip_bfs(const Triangulation& start, std::size_t cap, int jobs, FlipClosure& out, Stop&& stop) {
  out.surface = surface_class(start);
  out.n = start.num_vertices();
  if (stop(start)) return false;
  std::size_t bytes = 0;
  auto first = canonical_code(start);
  bytes += code_bytes(first);
  out.classes.insert(std::move(first));
  std::vector<Triangulation> frontier{start};
  while (!frontier.empty()) {
    std::vector<std::vector<std::pair<CanonicalCode, Triangulation>>> found(frontier.size());
    std::vector<std::uint64_t> explored(frontier.size(), 0);
    ExceptionSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_jobs(jobs))
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      err.run([&] {
        for (const EdgeRef& e : flippable_edges(frontier[k])) {
          ++explored[k];
          Triangulation f = diagonal_flip(frontier[k], e);
          auto code = canonical_code(f);
          if (!out.classes.contains(code)) found[k].emplace_back(std::move(code), std::move(f));
        }
      });
    }
    err.rethrow();
    std::vector<Triangulation> next;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      out.edges_explored += explored[k];
      for (auto& [code, f] : found[k]) {
        if (out.classes.contains(code)) continue;
        bytes += code_bytes(code) + sizeof(Triangulation) + 8 * static_cast<std::size_t>(f.num_edges());
        if (bytes > cap) throw Error(ErrorKind::MemoryCapExceeded, "flip closure exceeded the memory cap");
        if (stop(f)) return false;
        out.classes.insert(std::move(code));
        next.push_back(std::move(f));
      }
    }
    frontier = std::move(next);
  }
  return true;
}

}  // namespace

FlipClosure flip_closure(const Triangulation& start, std::size_t memory_cap_bytes, int jobs) {
  FlipClosure out;
  flip_bfs(start, memory_cap_bytes, jobs, out, [](const Triangulation&) { return false; });
  return out;
}

std::map<CanonicalCode, std::uint64_t> random_contract_search(std::span<const Triangulation> seeds,
                                                              const RandomSearchOptions& opts) {
  if (seeds.empty()) throw Error(ErrorKind::NotFound, "random search needs at least one seed triangulation");
  const int threads = resolve_jobs(opts.jobs);
  std::vector<std::map<CanonicalCode, std::uint64_t>> partial(threads);
  ExceptionSlot err;
#pragma omp parallel num_threads(threads)
  {
    auto& hits = partial[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 64)
    for (std::uint64_t k = 0; k < opts.iterations; ++k) {
      err.run([&] {
        std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        std::mt19937_64 rng(seq);
        auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
        Triangulation t = seeds[pick(seeds.size())];
        while (t.num_vertices() < opts.start_n) {
          const VertexId a = static_cast<VertexId>(pick(t.num_vertices()));
          const int d = t.degree(a);
          t = split_vertex(t, a, static_cast<int>(pick(d)), 2 + static_cast<int>(pick(d - 1)));
        }
        const int flips = opts.flips_per_vertex * t.num_vertices();
        for (int f = 0; f < flips; ++f) {
          const VertexId a = static_cast<VertexId>(pick(t.num_vertices()));
          const auto r = t.rotation(a);
          const EdgeRef e{a, r[pick(r.size())]};
          if (is_flippable(t, e)) t = diagonal_flip(t, e);
        }
        for (;;) {
          const auto edges = contractible_edges(t);
          if (edges.empty()) break;
          t = contract(t, edges[pick(edges.size())]);
        }
        ++hits[canonical_code(t)];
      });
    }
  }
  err.rethrow();
  std::map<CanonicalCode, std::uint64_t> out;
  for (auto& p : partial) {
    for (auto& [code, k] : p) out[code] += k;
  }
  return out;
}

int nonseparating_3cycle_orbits(const Triangulation& t) {
  const auto cycles = nonseparating_3cycles(t);
  const auto autos = automorphisms(t);
  int orbits = 0;
  for (const Cycle3& c : cycles) {
    bool least = true;
    for (std::size_t k = 1; k < autos.size() && least; ++k) {
      Cycle3 img{autos[k][c[0]], autos[k][c[1]], autos[k][c[2]]};
      std::sort(img.begin(), img.end());
      least = !(img < c);
    }
    orbits += least;
  }
  return orbits;
}

RedundancyReport redundancy_check(std::span<const Triangulation> irreducibles,
                                  const std::map<CanonicalCode, std::uint64_t>& multiplicity) {
  RedundancyReport rep;
  for (const auto& [code, k] : multiplicity) rep.observed += k;
  for (const Triangulation& t : irreducibles) {
    const auto code = canonical_code(t);
    const auto orbits = static_cast<std::uint64_t>(nonseparating_3cycle_orbits(t));
    rep.expected += orbits;
    const auto it = multiplicity.find(code);
    const std::uint64_t seen = it == multiplicity.end() ? 0 : it->second;
    if (seen != orbits && !rep.first_mismatch) rep.first_mismatch = code;
  }
  rep.ok = rep.expected == rep.observed && !rep.first_mismatch;
  return rep;
}

std::vector<Triangulation> classify_pseudo_minimal(std::span<const Triangulation> irreducibles,
                                                   std::size_t memory_cap_bytes) {
  std::vector<Triangulation> out;
  for (const Triangulation& t : irreducibles) {
    FlipClosure closure;
    const bool all_irreducible = flip_bfs(t, memory_cap_bytes, 0, closure,
                                          [](const Triangulation& x) { return !is_irreducible(x); });
    if (all_irreducible) out.push_back(t);
  }
  return out;
}

}  // namespace surftri
