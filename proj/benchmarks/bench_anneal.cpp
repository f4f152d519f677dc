#include <benchmark/benchmark.h>

#include "qgap/anneal.hpp"

using namespace qgap;

namespace {

void BM_AnnealSweeps(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const LadderParams p{L, 5.0, 1.0, 0.0};
  const AnnealSchedule sched{3.0, 0.05, 1000, AnnealSchedule::Shape::geometric};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const AnnealOutcome out = anneal(p, sched, seed++);
    benchmark::DoNotOptimize(out.final_energy);
  }
  state.SetItemsProcessed(state.iterations() * 1000 * 2 * L);
}

void BM_TransferMatrixGround(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const LadderParams p{L, 5.0, 1.0, 0.0};
  for (auto _ : state) {
    const auto res = classical_ground_energy(p);
    benchmark::DoNotOptimize(res.energy);
  }
}

} // namespace

BENCHMARK(BM_AnnealSweeps)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransferMatrixGround)->Arg(64)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);
