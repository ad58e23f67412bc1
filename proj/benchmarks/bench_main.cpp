#include <benchmark/benchmark.h>

#include "profmod/catalog.hpp"
#include "profmod/homology.hpp"
#include "profmod/mackey.hpp"

using namespace profmod;

static void BM_HowellForm(benchmark::State& state) {
  const ChainRing ring(2, 3);
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mat a = random_matrix(ring, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(howell_form(a));
}
BENCHMARK(BM_HowellForm)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_MackeyRegular(benchmark::State& state) {
  const ChainRing f2(2);
  auto g = builtin_group(state.range(0) == 0 ? "S3" : "A4");
  auto subs = all_subgroups(g);
  const Subgroup& h = subs[1];
  const Subgroup& k = subs[subs.size() / 2];
  const GModule m = GModule::regular(f2, h.group());
  for (auto _ : state) benchmark::DoNotOptimize(mackey_verify(f2, h, k, m).passed());
}
BENCHMARK(BM_MackeyRegular)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_PdTrivial(benchmark::State& state) {
  const ChainRing f2(2);
  auto g = builtin_group(state.range(0) == 0 ? "C2" : state.range(0) == 1 ? "V4" : "D8");
  const GModule t = GModule::trivial(f2, g);
  for (auto _ : state) benchmark::DoNotOptimize(pd_bounded(t, 4));
}
BENCHMARK(BM_PdTrivial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
