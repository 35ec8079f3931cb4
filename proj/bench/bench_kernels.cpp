// Serial (jobs = 1) against OpenMP (jobs = 0, all cores) for the main kernels.
#include <benchmark/benchmark.h>

#include "surftri/generate.hpp"
#include "surftri/irreducible.hpp"
#include "surftri/verify.hpp"

using namespace surftri;

namespace {

const std::vector<Triangulation> kK4{tetrahedron()};

int jobs_arg(const benchmark::State& state) { return static_cast<int>(state.range(0)); }

void BM_GenerateSphere10(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(all_triangulations({true, 0}, 10, kK4, 3, jobs_arg(state)));
}

void BM_OracleTorus8(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_enumerate({true, 1}, 8, jobs_arg(state)));
}

void BM_TorusIrreducibles(benchmark::State& state) {
  const PathwaySpec p = pathways_for({true, 1}).front();
  StageOptions opts;
  opts.jobs = jobs_arg(state);
  for (auto _ : state) {
    const auto s1 = stage1(p, kK4, opts);
    const auto s2 = stage2(s1, opts);
    benchmark::DoNotOptimize(stage3(s2, p, opts));
  }
}

void BM_FlipClosureSphere9(benchmark::State& state) {
  const auto start = all_triangulations({true, 0}, 9, kK4, 3, 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(flip_closure(start, kDefaultMemoryCapBytes, jobs_arg(state)));
}

}  // namespace

BENCHMARK(BM_GenerateSphere10)->Arg(1)->Arg(0)->ArgName("jobs")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleTorus8)->Arg(1)->Arg(0)->ArgName("jobs")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorusIrreducibles)->Arg(1)->Arg(0)->ArgName("jobs")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlipClosureSphere9)->Arg(1)->Arg(0)->ArgName("jobs")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
