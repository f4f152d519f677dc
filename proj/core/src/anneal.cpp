#include "qgap/anneal.hpp"

#include <algorithm>
#include <cmath>

#include "qgap/errors.hpp"
#include "qgap/util.hpp"

namespace qgap {

double AnnealSchedule::temperature(int sweep) const {
  if (n_sweeps <= 1) return T_initial;
  const double f = static_cast<double>(sweep) / (n_sweeps - 1);
  if (shape == Shape::geometric) return T_initial * std::pow(T_final / T_initial, f);
  return T_initial + (T_final - T_initial) * f;
}

bool metropolis_accept(double delta_e, double temperature, double uniform01) {
  if (delta_e <= 0) return true;
  if (temperature <= 0) return false;
  return uniform01 < std::exp(-delta_e / temperature);
}

namespace {

struct LadderState {
  int L;
  double K, U;
  std::vector<std::int8_t> s; // site 2r = top of rung r, 2r+1 = bottom

  int top(int r) const { return s[static_cast<std::size_t>(2 * ((r + L) % L))]; }
  int bot(int r) const { return s[static_cast<std::size_t>(2 * ((r + L) % L) + 1)]; }

  double energy() const {
    double e = 0;
    for (int r = 0; r < L; ++r) {
      e += -K * top(r) * bot(r) - K * bot(r) * bot(r + 1) + K * top(r) * top(r + 1) - K * top(r) +
           0.5 * U * bot(r);
    }
    return e;
  }

  // unsatisfied K-terms in excess of the one-per-square floor
  int defect_count() const {
    int unsat = 0;
    for (int r = 0; r < L; ++r) {
      if (top(r) * bot(r) < 0) ++unsat;       // rung bond
      if (bot(r) * bot(r + 1) < 0) ++unsat;   // bottom bond
      if (top(r) * top(r + 1) > 0) ++unsat;   // top bond (antiferromagnetic)
      if (top(r) < 0) ++unsat;                // top field
    }
    return unsat - L;
  }

  double flip_delta(int site) const {
    const int r = site / 2;
    if ((site & 1) == 0) {
      const double f = -K * bot(r) + K * (top(r - 1) + top(r + 1)) - K;
      return -2.0 * top(r) * f;
    }
    const double f = -K * top(r) - K * (bot(r - 1) + bot(r + 1)) + 0.5 * U;
    return -2.0 * bot(r) * f;
  }
};

} // namespace

AnnealOutcome anneal(const LadderParams& p, const AnnealSchedule& schedule, std::uint64_t seed,
                     const AnnealerOptions& opt) {
  if (p.Gamma != 0.0) throw UsageError("anneal: classical dynamics requires Gamma = 0");
  if (p.L < 2 || p.L > 4096) throw UsageError("anneal: 2 <= L <= 4096");
  if (!(schedule.T_initial > schedule.T_final) || !(schedule.T_final > 0))
    throw UsageError("anneal: need T_initial > T_final > 0");
  if (schedule.n_sweeps < 1) throw UsageError("anneal: n_sweeps >= 1");

  const int n_spins = 2 * p.L;
  LadderState state{p.L, p.K, p.U, {}};
  if (opt.initial_state) {
    if (static_cast<int>(opt.initial_state->size()) != n_spins)
      throw UsageError("anneal: initial state size mismatch");
    state.s = *opt.initial_state;
  } else {
    state.s.resize(static_cast<std::size_t>(n_spins));
    CounterRng init_rng(seed, 0x1717, 0);
    for (auto& v : state.s) v = init_rng.uniform() < 0.5 ? -1 : +1;
  }

  const double e_ground = classical_ground_energy(LadderParams{p.L, p.K, p.U, 0.0}).energy;
  const double tol = 1e-9 * (1.0 + std::abs(e_ground));

  AnnealOutcome out;
  out.seed = seed;
  double energy = state.energy();
  if (std::abs(energy - e_ground) <= tol) out.first_passage_sweep = 0;

  const int checkpoint_every =
      opt.checkpoint_every > 0 ? opt.checkpoint_every : std::max(1, schedule.n_sweeps / 64);

  for (int sweep = 1; sweep <= schedule.n_sweeps; ++sweep) {
    const double T = schedule.temperature(sweep - 1);
    CounterRng rng(seed, 0xA11EA1, static_cast<std::uint64_t>(sweep));
    for (int prop = 0; prop < n_spins; ++prop) {
      const int site = static_cast<int>(rng.below(static_cast<std::uint32_t>(n_spins)));
      const double dE = state.flip_delta(site);
      if (metropolis_accept(dE, T, rng.uniform())) {
        state.s[static_cast<std::size_t>(site)] = static_cast<std::int8_t>(-state.s[static_cast<std::size_t>(site)]);
        energy += dE;
        if (!out.first_passage_sweep && std::abs(energy - e_ground) <= tol)
          out.first_passage_sweep = sweep;
      }
    }
    if (sweep % checkpoint_every == 0 || sweep == schedule.n_sweeps) {
      const double recomputed = state.energy();
      if (std::abs(recomputed - energy) > 1e-9 * (1.0 + std::abs(recomputed)))
        throw NumericalError("anneal: incremental energy drifted from recomputation");
      energy = recomputed;
      out.trajectory.push_back(AnnealCheckpoint{sweep, energy, state.defect_count()});
    }
  }
  out.final_energy = state.energy();
  return out;
}

ScalingStudyResult scaling_study(const LadderParams& base, std::span<const int> Ls,
                                 const AnnealSchedule& schedule, int n_seeds,
                                 std::uint64_t global_seed) {
  if (n_seeds < 2) throw UsageError("scaling_study: n_seeds >= 2");
  ScalingStudyResult out;
  out.outcomes.resize(Ls.size() * static_cast<std::size_t>(n_seeds));

  for (std::size_t li = 0; li < Ls.size(); ++li) {
    const int L = Ls[li];
    LadderParams p = base;
    p.L = L;
    p.Gamma = 0.0;
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < n_seeds; ++rep) {
      try {
        const std::uint64_t seed =
            splitmix64(global_seed ^ splitmix64((static_cast<std::uint64_t>(L) << 32) |
                                                static_cast<std::uint64_t>(rep)));
        out.outcomes[li * static_cast<std::size_t>(n_seeds) + static_cast<std::size_t>(rep)] =
            anneal(p, schedule, seed);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }

  auto quantile = [](std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    if (v.empty()) return 0.0;
    const double pos = q * (static_cast<double>(v.size()) - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };

  std::vector<std::vector<double>> passages_per_L(Ls.size());
  for (std::size_t li = 0; li < Ls.size(); ++li) {
    ScalingRow row;
    row.L = Ls[li];
    row.n_seeds = n_seeds;
    auto& samples = passages_per_L[li];
    for (int rep = 0; rep < n_seeds; ++rep) {
      const auto& o = out.outcomes[li * static_cast<std::size_t>(n_seeds) + static_cast<std::size_t>(rep)];
      if (o.first_passage_sweep) {
        samples.push_back(static_cast<double>(*o.first_passage_sweep));
        ++row.n_success;
      }
    }
    row.included_in_fit = row.n_success * 2 >= n_seeds;
    if (!samples.empty()) {
      row.median_sweeps = quantile(samples, 0.5);
      row.q25 = quantile(samples, 0.25);
      row.q75 = quantile(samples, 0.75);
    }
    out.rows.push_back(row);
  }

  std::vector<std::pair<double, double>> pts;
  for (const auto& row : out.rows)
    if (row.included_in_fit && row.median_sweeps > 0)
      pts.emplace_back(static_cast<double>(row.L), row.median_sweeps);
  out.fit = fit_gap_scaling(pts, FitModel::power);
  out.exponent = -out.fit.rate; // median grows as L^exponent

  // bootstrap over replicas, 1000 resamples
  const int n_boot = 1000;
  std::vector<double> exps;
  exps.reserve(n_boot);
  CounterRng boot_rng(global_seed, 0xB005, 7);
  for (int b = 0; b < n_boot; ++b) {
    std::vector<std::pair<double, double>> bpts;
    for (std::size_t li = 0; li < Ls.size(); ++li) {
      const auto& samples = passages_per_L[li];
      if (!out.rows[li].included_in_fit || samples.empty()) continue;
      std::vector<double> resampled(samples.size());
      for (auto& v : resampled)
        v = samples[boot_rng.below(static_cast<std::uint32_t>(samples.size()))];
      bpts.emplace_back(static_cast<double>(Ls[li]), quantile(resampled, 0.5));
    }
    if (bpts.size() >= 4) exps.push_back(-fit_gap_scaling(bpts, FitModel::power).rate);
  }
  if (!exps.empty()) {
    double mean = 0;
    for (double e : exps) mean += e;
    mean /= static_cast<double>(exps.size());
    double var = 0;
    for (double e : exps) var += (e - mean) * (e - mean);
    out.exponent_err_bootstrap = std::sqrt(var / std::max<std::size_t>(1, exps.size() - 1));
  }
  return out;
}

} // namespace qgap
