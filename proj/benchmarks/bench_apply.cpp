#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "qgap/models.hpp"
#include "qgap/util.hpp"

using namespace qgap;

namespace {

Eigen::VectorXd random_vector(std::size_t n) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  CounterRng rng(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 2.0 * rng.uniform() - 1.0;
  return v;
}

void BM_LadderSectorApply(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  static std::map<int, LadderSectorStructure> cache;
  if (!cache.count(L)) cache[L] = build_ladder_sector_structure(L, 0);
  const SparseHamiltonian H = assemble_ladder(cache[L], LadderParams{L, 5.0, 1.0, 1.8});
  Eigen::VectorXd x = random_vector(H.dimension), y(x.size());
  for (auto _ : state) {
    H.apply(std::span<const double>(x.data(), H.dimension), std::span<double>(y.data(), H.dimension));
    benchmark::DoNotOptimize(y.data());
    std::swap(x, y);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(H.offdiag_entries()));
}

void BM_FullBasisApply(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const SparseHamiltonian H = build_chain(ChainParams{L, 1.0, 0.1, 0.8}, BasisChoice::full());
  Eigen::VectorXd x = random_vector(H.dimension), y(x.size());
  for (auto _ : state) {
    H.apply(std::span<const double>(x.data(), H.dimension), std::span<double>(y.data(), H.dimension));
    benchmark::DoNotOptimize(y.data());
    std::swap(x, y);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(H.offdiag_entries()));
}

void BM_SectorStructureBuild(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto s = build_ladder_sector_structure(L, 0);
    benchmark::DoNotOptimize(s.sector.dimension());
  }
}

} // namespace

BENCHMARK(BM_LadderSectorApply)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullBasisApply)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SectorStructureBuild)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
