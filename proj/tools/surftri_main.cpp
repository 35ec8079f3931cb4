// surftri: generate triangulations of surfaces and their irreducible sets.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "surftri/generate.hpp"
#include "surftri/irreducible.hpp"
#include "surftri/surfcode.hpp"
#include "surftri/verify.hpp"

using namespace surftri;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitMemory = 5;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::NotFound: return kExitParse;
    case ErrorKind::BudgetExceeded: return kExitBudget;
    case ErrorKind::Mismatch: return kExitMismatch;
    case ErrorKind::MemoryCapExceeded: return kExitMemory;
    default: return 1;
  }
}

std::vector<Triangulation> load(const std::string& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::Parse, "no such file: " + path);
  std::vector<Triangulation> out;
  for (auto& rec : read_surfcode_file(path).records) out.push_back(std::move(rec.t));
  return out;
}

// Irreducible set of `s` built from K4 through every lower surface.
std::vector<Triangulation> computed_irreducibles(SurfaceClass s, int jobs) {
  std::map<SurfaceClass, std::vector<Triangulation>> bases;
  std::function<const std::vector<Triangulation>&(SurfaceClass)> get = [&](SurfaceClass x) -> const std::vector<Triangulation>& {
    if (auto it = bases.find(x); it != bases.end()) return it->second;
    for (const auto& p : pathways_for(x)) get(p.base);
    PipelineOptions opts;
    opts.stage.jobs = jobs;
    return bases[x] = generate_irreducibles(x, bases, opts).irreducibles;
  };
  return get(s);
}

std::set<CanonicalCode> codes_of(const std::vector<Triangulation>& ts) {
  std::set<CanonicalCode> out;
  for (const auto& t : ts) out.insert(canonical_code(t));
  return out;
}

void write_records(const std::vector<Triangulation>& ts, const std::string& out, bool sorted) {
  std::vector<std::string> lines;
  lines.reserve(ts.size());
  for (const auto& t : ts) lines.push_back(to_surfcode(t));
  if (sorted) std::sort(lines.begin(), lines.end());
  SurfcodeWriter w(out);
  for (const auto& l : lines) w.write_line(l);
  if (!out.empty()) w.finish();
}

int report(bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS " : "FAIL ") << detail << '\n';
  return pass ? 0 : kExitMismatch;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string surface;
  int vertices = 0;
  std::string irreducibles;
  int min_degree = 3;
  bool count_only = false;
  std::string out;
  int jobs = 0;
  bool sorted = false;
};

int run_gen(const GenArgs& a) {
  const SurfaceClass s = SurfaceClass::parse(a.surface);
  const auto irr = load(a.irreducibles);
  for (const auto& t : irr) {
    if (surface_class(t) != s) throw Error(ErrorKind::Parse, a.irreducibles + " holds a triangulation of another surface");
  }
  const auto all = all_triangulations(s, a.vertices, irr, a.min_degree, a.jobs);
  if (a.count_only) {
    std::cout << all.size() << '\n';
  } else {
    write_records(all, a.out, a.sorted);
  }
  return 0;
}

struct IrrArgs {
  std::string target;
  std::string base_dir;
  std::string pathway;
  int max_vertices = 32;
  std::string out;
  std::string stage_dump;
  int jobs = 0;
  int stop_after_stage = 3;
  std::string multiplicity_log;
  bool sorted = false;
};

int run_irr(const IrrArgs& a) {
  const SurfaceClass target = SurfaceClass::parse(a.target);
  std::map<SurfaceClass, std::vector<Triangulation>> bases;
  for (const auto& p : pathways_for(target)) {
    if (bases.contains(p.base)) continue;
    const auto path = (std::filesystem::path(a.base_dir) / (p.base.name() + ".sc")).string();
    if (!std::filesystem::exists(path) && p.base == SurfaceClass{true, 0}) {
      bases[p.base] = {tetrahedron()};
      continue;
    }
    if (!a.pathway.empty() && a.pathway != p.name()) continue;
    bases[p.base] = load(path);
  }
  PipelineOptions opts;
  opts.stage.max_vertices = a.max_vertices;
  opts.stage.jobs = a.jobs;
  opts.pathway = a.pathway;
  opts.stage_dump_dir = a.stage_dump;
  opts.stop_after_stage = a.stop_after_stage;
  const PipelineResult r = generate_irreducibles(target, bases, opts);
  for (const auto& rep : r.reports) {
    std::cerr << "# " << rep.pathway.name() << ": stage1 " << rep.stage1 << ", stage2 " << rep.stage2
              << ", candidates " << rep.candidates << ", pre-irreducible " << rep.pre_irreducible << ", irreducible "
              << rep.irreducible << '\n';
  }
  if (a.stop_after_stage < 3) return 0;
  write_records(r.irreducibles, a.out, a.sorted);
  if (!a.multiplicity_log.empty()) {
    nlohmann::json log;
    log["target"] = target.name();
    log["pathways"] = nlohmann::json::array();
    for (const auto& rep : r.reports) {
      log["pathways"].push_back({{"name", rep.pathway.name()},
                                 {"relation", to_string(rep.pathway.relation)},
                                 {"stage1", rep.stage1},
                                 {"stage2", rep.stage2},
                                 {"candidates", rep.candidates},
                                 {"pre_irreducible", rep.pre_irreducible},
                                 {"irreducible", rep.irreducible}});
    }
    nlohmann::json mult = nlohmann::json::object();
    for (const auto& t : r.irreducibles) {
      const auto it = r.multiplicity.find(canonical_code(t));
      mult[to_surfcode(t)] = it == r.multiplicity.end() ? 0 : it->second;
    }
    log["multiplicity"] = mult;
    std::ofstream f(a.multiplicity_log);
    if (!f) throw Error(ErrorKind::Parse, "cannot write " + a.multiplicity_log);
    f << log.dump(2) << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string surface;
  int vertices = 0;
  std::string against;
  std::string irreducibles;
  std::string log;
  std::uint64_t iterations = 100000;
  std::uint64_t seed = 1;
  int start_vertices = 14;
  std::size_t memory_cap_mb = 4096;
  std::string out;
  int jobs = 0;
};

int run_oracle(const VerifyArgs& a) {
  const SurfaceClass s = SurfaceClass::parse(a.surface);
  const auto found = oracle_enumerate(s, a.vertices, a.jobs);
  std::cout << found.size() << '\n';
  if (!a.out.empty()) write_records(found, a.out, true);
  if (a.against.empty()) return 0;
  const auto theirs = codes_of(load(a.against));
  return report(theirs == codes_of(found), "oracle " + std::to_string(found.size()) + " classes, file " +
                                               std::to_string(theirs.size()) + " classes");
}

int run_flip_closure(const VerifyArgs& a) {
  std::vector<Triangulation> all;
  if (!a.against.empty()) {
    all = load(a.against);
  } else {
    const SurfaceClass s = SurfaceClass::parse(a.surface);
    all = all_triangulations(s, a.vertices, load(a.irreducibles), 3, a.jobs);
  }
  if (all.empty()) throw Error(ErrorKind::Parse, "nothing to start the flip closure from");
  const auto closure = flip_closure(all.front(), a.memory_cap_mb << 20, a.jobs);
  return report(closure.classes == codes_of(all), "closure " + std::to_string(closure.classes.size()) +
                                                      " classes, enumeration " + std::to_string(all.size()) +
                                                      " classes, " + std::to_string(closure.edges_explored) + " flips");
}

int run_random(const VerifyArgs& a) {
  if (a.against.empty() && a.surface.empty()) throw Error(ErrorKind::Parse, "random needs --against or --surface");
  const auto irr = a.against.empty() ? computed_irreducibles(SurfaceClass::parse(a.surface), a.jobs) : load(a.against);
  RandomSearchOptions o;
  o.start_n = a.start_vertices;
  o.iterations = a.iterations;
  o.seed = a.seed;
  o.jobs = a.jobs;
  const auto hits = random_contract_search(irr, o);
  const auto known = codes_of(irr);
  std::size_t unknown = 0, covered = 0;
  for (const auto& [code, k] : hits) {
    if (known.contains(code)) {
      ++covered;
    } else {
      ++unknown;
    }
  }
  std::cout << "# recipe: random irreducible, random splits to " << o.start_n << " vertices, "
            << o.flips_per_vertex << " flip attempts per vertex, random contractions; seed " << o.seed << '\n';
  return report(unknown == 0 && covered == known.size(),
                "coverage " + std::to_string(covered) + "/" + std::to_string(known.size()) + ", unknown codes " +
                    std::to_string(unknown) + ", iterations " + std::to_string(o.iterations));
}

int run_redundancy(const VerifyArgs& a) {
  std::ifstream f(a.log);
  if (!f) throw Error(ErrorKind::Parse, "cannot open " + a.log);
  nlohmann::json log;
  try {
    f >> log;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, a.log + ": " + e.what());
  }
  std::map<CanonicalCode, std::uint64_t> mult;
  std::vector<Triangulation> irr;
  for (const auto& [text, k] : log.at("multiplicity").items()) {
    const Triangulation t = parse_surfcode(text).t;
    mult[canonical_code(t)] += k.get<std::uint64_t>();
    irr.push_back(t);
  }
  if (!a.against.empty()) irr = load(a.against);
  const RedundancyReport rep = redundancy_check(irr, mult);
  std::string detail = "sum of nonseparating 3-cycle orbits " + std::to_string(rep.expected) +
                       ", pre-irreducible framed classes " + std::to_string(rep.observed);
  if (rep.first_mismatch) {
    for (const auto& t : irr) {
      if (canonical_code(t) == *rep.first_mismatch) detail += ", first mismatch " + to_surfcode(t);
    }
  }
  return report(rep.ok, detail);
}

int run_pseudo_minimal(const VerifyArgs& a) {
  const auto irr = load(a.against);
  const auto pm = classify_pseudo_minimal(irr, a.memory_cap_mb << 20);
  std::cout << pm.size() << '\n';
  if (!a.out.empty()) write_records(pm, a.out, true);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangulations of closed surfaces and their irreducible sets"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "all triangulations with a given vertex count");
  g->add_option("--surface", gen.surface, "S0, S1, N1, ...")->required();
  g->add_option("--vertices", gen.vertices)->required()->check(CLI::Range(4, kMaxVertices));
  g->add_option("--irreducibles", gen.irreducibles, "complete irreducible set (surfcode)")->required();
  g->add_option("--min-degree", gen.min_degree)->check(CLI::Range(3, 6));
  g->add_flag("--count-only", gen.count_only);
  g->add_option("--out", gen.out);
  g->add_option("--jobs", gen.jobs);
  g->add_flag("--sorted", gen.sorted);

  IrrArgs irr;
  auto* ir = app.add_subcommand("irr", "irreducible triangulations of a target surface");
  ir->add_option("--target", irr.target)->required();
  ir->add_option("--base-dir", irr.base_dir, "directory with <Surface>.sc irreducible sets")->required();
  ir->add_option("--pathway", irr.pathway, "run one pathway, e.g. S0/two");
  ir->add_option("--max-vertices", irr.max_vertices)->check(CLI::Range(4, kMaxVertices));
  ir->add_option("--out", irr.out);
  ir->add_option("--stage-dump", irr.stage_dump, "write and resume stage outputs here");
  ir->add_option("--jobs", irr.jobs);
  ir->add_option("--stop-after-stage", irr.stop_after_stage)->check(CLI::Range(1, 3));
  ir->add_option("--multiplicity-log", irr.multiplicity_log, "JSON log for verify redundancy");
  ir->add_flag("--sorted", irr.sorted);

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "cross-checks");
  v->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--jobs", va.jobs);
    c->add_option("--memory-cap-mb", va.memory_cap_mb);
    c->add_option("--out", va.out);
  };
  auto* vo = v->add_subcommand("oracle", "face-addition enumeration");
  vo->add_option("--surface", va.surface)->required();
  vo->add_option("--vertices", va.vertices)->required()->check(CLI::Range(4, kOracleMaxVertices));
  vo->add_option("--against", va.against, "compare with this set");
  common(vo);
  auto* vf = v->add_subcommand("flip-closure", "flip closure equals the full enumeration");
  vf->add_option("--against", va.against, "full enumeration; the closure starts at its first record");
  vf->add_option("--surface", va.surface);
  vf->add_option("--vertices", va.vertices);
  vf->add_option("--irreducibles", va.irreducibles, "generate the enumeration from this set");
  common(vf);
  auto* vr = v->add_subcommand("random", "random contraction search");
  vr->add_option("--surface", va.surface, "build the irreducible set from K4 when --against is absent");
  vr->add_option("--against", va.against, "irreducible set");
  vr->add_option("--iterations", va.iterations);
  vr->add_option("--rng-seed", va.seed);
  vr->add_option("--start-vertices", va.start_vertices)->check(CLI::Range(4, kMaxVertices));
  common(vr);
  auto* vd = v->add_subcommand("redundancy", "3-cycle orbits against pre-irreducible counts");
  vd->add_option("--log", va.log, "multiplicity log written by irr")->required();
  vd->add_option("--against", va.against, "irreducible set (defaults to the log's)");
  common(vd);
  auto* vp = v->add_subcommand("pseudo-minimal", "irreducibles flip-equivalent only to irreducibles");
  vp->add_option("--against", va.against, "irreducible set")->required();
  common(vp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (g->parsed()) return run_gen(gen);
    if (ir->parsed()) return run_irr(irr);
    if (vo->parsed()) return run_oracle(va);
    if (vf->parsed()) {
      if (va.against.empty() && (va.irreducibles.empty() || va.surface.empty() || va.vertices == 0)) {
        std::cerr << "flip-closure needs --against or --surface, --vertices and --irreducibles\n";
        return kExitParse;
      }
      return run_flip_closure(va);
    }
    if (vr->parsed()) return run_random(va);
    if (vd->parsed()) return run_redundancy(va);
    if (vp->parsed()) return run_pseudo_minimal(va);
  } catch (const Error& e) {
    std::cerr << "surftri: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return 1;
}
