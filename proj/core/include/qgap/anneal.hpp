#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgap/analysis.hpp"
#include "qgap/models.hpp"

namespace qgap {

struct AnnealSchedule {
  enum class Shape { geometric, linear };
  double T_initial = 3.0;
  double T_final = 0.05;
  int n_sweeps = 10000;
  Shape shape = Shape::geometric;

  double temperature(int sweep) const;
};

struct AnnealCheckpoint {
  int sweep = 0;
  double energy = 0;
  int defect_count = 0; // unsatisfied K-terms in excess of the one-per-square floor
};

struct AnnealOutcome {
  std::optional<int> first_passage_sweep; // first sweep reaching the exact ground energy
  double final_energy = 0;
  std::vector<AnnealCheckpoint> trajectory;
  std::uint64_t seed = 0;
};

/// Metropolis acceptance, min(1, e^{-dE/T}).
bool metropolis_accept(double delta_e, double temperature, double uniform01);

struct AnnealerOptions {
  int checkpoint_every = 0; // 0: ~64 checkpoints over the schedule
  std::optional<std::vector<std::int8_t>> initial_state; // +1/-1 per site; default seeded random
};

/// Single-spin-flip Metropolis annealing of the classical ladder (Gamma = 0).
/// One sweep proposes 2L flips at uniformly random sites. The RNG is
/// counter-based and keyed by (seed, sweep), so trajectories are reproducible
/// and independent across replicas.
AnnealOutcome anneal(const LadderParams& p, const AnnealSchedule& schedule, std::uint64_t seed,
                     const AnnealerOptions& opt = {});

struct ScalingRow {
  int L = 0;
  int n_seeds = 0;
  int n_success = 0;
  double median_sweeps = 0; // over successful replicas
  double q25 = 0, q75 = 0;
  bool included_in_fit = true; // false when success rate < 50%
};

struct ScalingStudyResult {
  std::vector<ScalingRow> rows;
  FitResult fit;                 // power law: median ~ A L^p  (rate = -p ... see note)
  double exponent = 0;           // fitted exponent of median vs L
  double exponent_err_bootstrap = 0;
  std::vector<AnnealOutcome> outcomes; // all replicas, ordered by (L, seed)
};

/// Median first passage vs L with a power-law fit and bootstrap error bars
/// (1000 resamples of the per-L first-passage samples).
ScalingStudyResult scaling_study(const LadderParams& base, std::span<const int> Ls,
                                 const AnnealSchedule& schedule, int n_seeds,
                                 std::uint64_t global_seed = 1);

} // namespace qgap
