#include "qgap/basis.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qgap/errors.hpp"

namespace qgap {

std::vector<std::uint32_t> enumerate_basis(int n_sites) {
  if (n_sites < 1) throw UsageError("enumerate_basis: n_sites must be positive");
  if (n_sites > 28)
    throw CapacityError("enumerate_basis: n_sites > 28 exceeds full-basis capacity");
  std::vector<std::uint32_t> out(std::size_t{1} << n_sites);
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = static_cast<std::uint32_t>(s);
  return out;
}

std::uint32_t translate(std::uint32_t bits, Geometry g, int L, int steps) {
  const int cb = cell_bits(g);
  const int n = cb * L;
  const std::uint32_t mask = (n >= 32 ? ~0u : (1u << n) - 1u);
  int sh = ((steps % L) + L) % L * cb; // rotate left by sh bits
  if (sh == 0) return bits & mask;
  return ((bits << sh) | (bits >> (n - sh))) & mask;
}

OrbitInfo canonicalize(std::uint32_t bits, Geometry g, int L) {
  const int cb = cell_bits(g);
  const int n = cb * L;
  const std::uint32_t mask = (n >= 32 ? ~0u : (1u << n) - 1u);
  const std::uint32_t start = bits & mask;
  std::uint32_t best = start;
  std::uint32_t cur = start;
  int best_shift = 0;
  int period = L;
  for (int j = 1; j < L; ++j) {
    cur = ((cur << cb) | (cur >> (n - cb))) & mask;
    if (cur == start && period == L) period = j;
    if (cur < best) {
      best = cur;
      best_shift = j;
    }
  }
  // rep was reached by rotating the input best_shift times, so rotating the
  // rep by (L - best_shift) recovers the input.
  return OrbitInfo{best, (L - best_shift) % L, period};
}

std::ptrdiff_t MomentumSector::index_of(std::uint32_t representative) const {
  auto it = std::lower_bound(representatives.begin(), representatives.end(), representative);
  if (it == representatives.end() || *it != representative) return -1;
  return it - representatives.begin();
}

MomentumSector build_momentum_sector(Geometry g, int L, int k_index) {
  if (L < 1) throw UsageError("build_momentum_sector: L must be positive");
  if (k_index < 0 || k_index >= L) throw UsageError("build_momentum_sector: need 0 <= k_index < L");
  const int n = cell_bits(g) * L;
  if (n > 28) throw CapacityError("build_momentum_sector: more than 28 sites");

  const std::uint64_t n_states = std::uint64_t{1} << n;

#ifdef _OPENMP
  const int n_workers = std::max(1, omp_get_max_threads());
#else
  const int n_workers = 1;
#endif
  std::vector<std::vector<std::uint32_t>> reps_part(n_workers);
  std::vector<std::vector<std::uint8_t>> periods_part(n_workers);

  // Workers scan disjoint ascending ranges; concatenating in worker order
  // keeps the representative list ascending without a final sort.
#pragma omp parallel num_threads(n_workers)
  {
#ifdef _OPENMP
    const int t = omp_get_thread_num();
#else
    const int t = 0;
#endif
    const std::uint64_t lo = n_states * static_cast<std::uint64_t>(t) / n_workers;
    const std::uint64_t hi = n_states * static_cast<std::uint64_t>(t + 1) / n_workers;
    auto& reps = reps_part[t];
    auto& periods = periods_part[t];
    for (std::uint64_t s = lo; s < hi; ++s) {
      const auto bits = static_cast<std::uint32_t>(s);
      OrbitInfo orb = canonicalize(bits, g, L);
      if (orb.representative != bits) continue;
      if ((static_cast<long long>(k_index) * orb.period) % L != 0) continue;
      reps.push_back(bits);
      periods.push_back(static_cast<std::uint8_t>(orb.period));
    }
  }

  MomentumSector sec;
  sec.geometry = g;
  sec.L = L;
  sec.k_index = k_index;
  std::size_t total = 0;
  for (const auto& part : reps_part) total += part.size();
  sec.representatives.reserve(total);
  sec.periods.reserve(total);
  for (int t = 0; t < n_workers; ++t) {
    sec.representatives.insert(sec.representatives.end(), reps_part[t].begin(), reps_part[t].end());
    sec.periods.insert(sec.periods.end(), periods_part[t].begin(), periods_part[t].end());
  }
  sec.norms.resize(sec.representatives.size());
  for (std::size_t i = 0; i < sec.norms.size(); ++i)
    sec.norms[i] = static_cast<double>(L) / std::sqrt(static_cast<double>(sec.periods[i]));
  return sec;
}

} // namespace qgap
