#include <benchmark/benchmark.h>

#include "hmrc/construct.hpp"
#include "hmrc/derive.hpp"
#include "hmrc/verify.hpp"

namespace {

using namespace hmrc;

CodeParams hl(unsigned k, unsigned r1, unsigned r2, unsigned h1, unsigned h2, unsigned delta) {
  return CodeParams{Family::HL, k, r1, r2, h1, h2, delta};
}

const CodeParams kExample = hl(5, 3, 2, 1, 1, 2);

void BM_TopMultiply(benchmark::State& state) {
  const TowerPtr tower = FieldTower::create(5, 1, 5, static_cast<unsigned>(state.range(0)));
  Element a = tower->from_rank(Level::Top, 7);
  const Element b = tower->from_rank(Level::Top, 3001);
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_TopMultiply)->Arg(5)->Arg(10)->Arg(25);

void BM_Rank(benchmark::State& state) {
  const CodeInstance inst = construct(kExample, ChoiceOptions{true, false, 5});
  for (auto _ : state) benchmark::DoNotOptimize(rank(inst.H));
}
BENCHMARK(BM_Rank);

void BM_Construct(benchmark::State& state) {
  const bool single = state.range(0) != 0;
  for (auto _ : state) {
    auto inst = construct(kExample, ChoiceOptions{single, false, single ? std::optional<std::uint64_t>{5} : std::nullopt});
    benchmark::DoNotOptimize(inst.H.rows());
  }
}
BENCHMARK(BM_Construct)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_IsMr(benchmark::State& state) {
  const CodeInstance inst = construct(kExample, ChoiceOptions{true, false, 5});
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(is_mr(inst, workers).pass);
}
BENCHMARK(BM_IsMr)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MinDistance(benchmark::State& state) {
  const CodeInstance inst = construct(kExample, ChoiceOptions{true, false, 5});
  for (auto _ : state) benchmark::DoNotOptimize(min_distance(inst));
}
BENCHMARK(BM_MinDistance)->Unit(benchmark::kMillisecond);

void BM_DeriveHdl(benchmark::State& state) {
  const CodeInstance source = construct(hl(2, 2, 2, 2, 2, 1));
  for (auto _ : state) benchmark::DoNotOptimize(hdl_from_hl(source, 1).instance.H.cols());
}
BENCHMARK(BM_DeriveHdl)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
