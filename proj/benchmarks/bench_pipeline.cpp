#include <benchmark/benchmark.h>

#include "morita/annular.hpp"
#include "morita/catalog.hpp"
#include "morita/dualdata.hpp"
#include "morita/invertibility.hpp"
#include "morita/repdecomp.hpp"
#include "morita/vecg.hpp"

using namespace morita;

namespace {

ModuleData module_for(int which) {
  switch (which) {
    case 0: return gen_vecg(symmetric_group(3));
    case 1: return regular_module(fibonacci_category());
    default: return regular_module(gen_vecg(cyclic_group(2)).base);
  }
}

const char* name_for(int which) { return which == 0 ? "S3" : which == 1 ? "Fib" : "Z2/Z2"; }

void BM_BuildAlgebra(benchmark::State& state) {
  const ModuleData mod = module_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    AnnularAlgebra alg(mod);
    benchmark::DoNotOptimize(alg.dim());
  }
  state.SetLabel(name_for(static_cast<int>(state.range(0))));
}

void BM_Decompose(benchmark::State& state) {
  const AnnularAlgebra alg(module_for(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(alg).size());
  state.SetLabel(name_for(static_cast<int>(state.range(0))));
}

void BM_AssembleDual(benchmark::State& state) {
  const ModuleData mod = module_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_dual(mod).f3.size());
  state.SetLabel(name_for(static_cast<int>(state.range(0))));
}

void BM_CheckMpo(benchmark::State& state) {
  const BimoduleData d = assemble_dual(module_for(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(check_mpo_injectivity(d).identity.max_residual);
  state.SetLabel(name_for(static_cast<int>(state.range(0))));
}

// larger groups, to see how the decomposition scales with |G|
void BM_VecGDual(benchmark::State& state) {
  const ModuleData mod = gen_vecg(symmetric_group(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_dual(mod).f3.size());
}

}  // namespace

BENCHMARK(BM_BuildAlgebra)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decompose)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleDual)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckMpo)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VecGDual)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
