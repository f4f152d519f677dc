#include <benchmark/benchmark.h>

#include <map>

#include "qgap/fermion.hpp"
#include "qgap/models.hpp"
#include "qgap/spectral.hpp"

using namespace qgap;

namespace {

void BM_LanczosGroundPair(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  static std::map<int, LadderSectorStructure> cache;
  if (!cache.count(L)) cache[L] = build_ladder_sector_structure(L, 0);
  const SparseHamiltonian H = assemble_ladder(cache[L], LadderParams{L, 5.0, 1.0, 1.85});
  for (auto _ : state) {
    const auto spec = lowest_eigenpairs(H, 2);
    benchmark::DoNotOptimize(spec.energies[0]);
  }
}

void BM_DenseSpectrum(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const SparseHamiltonian H = build_chain(ChainParams{L, 1.0, 0.0, 0.8}, BasisChoice::full());
  for (auto _ : state) {
    const auto spec = dense_spectrum(H, false);
    benchmark::DoNotOptimize(spec.energies[0]);
  }
}

void BM_PfaffianSign(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto form = build_majorana_form(1.0, 0.4, L, -1);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian_sign(form.h));
}

} // namespace

BENCHMARK(BM_LanczosGroundPair)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseSpectrum)->Arg(8)->Arg(10)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PfaffianSign)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
