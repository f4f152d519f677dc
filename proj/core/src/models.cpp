#include "qgap/models.hpp"

#include <cmath>
#include <complex>
#include <numeric>

#include "qgap/errors.hpp"

namespace qgap {

namespace {

void check_chain(const ChainParams& p) {
  if (p.L < 2) throw UsageError("chain: L >= 2 required");
  if (!std::isfinite(p.J) || !std::isfinite(p.h) || !std::isfinite(p.Gamma) || p.Gamma < 0)
    throw UsageError("chain: parameters must be finite, Gamma >= 0");
}

void check_ladder(const LadderParams& p) {
  if (p.L < 2) throw UsageError("ladder: L >= 2 required");
  if (!(p.K > 0) || !(p.U > 0)) throw UsageError("ladder: K > 0 and U > 0 required");
  if (!std::isfinite(p.Gamma) || p.Gamma < 0) throw UsageError("ladder: Gamma >= 0 required");
}

double chain_diag(std::uint32_t s, const ChainParams& p) {
  double e = 0.0;
  for (int i = 0; i < p.L; ++i) {
    const int si = spin_at(s, i);
    e += p.J * si * spin_at(s, (i + 1) % p.L);
    e -= ((i & 1) ? -p.h : p.h) * si; // h_i = (-1)^i h, site 0 carries +h
  }
  return e;
}

// Integer diagonal coefficients: energy = K * bond_units + (U/2) * field_units.
std::pair<int, int> ladder_diag_units(std::uint32_t s, int L) {
  int bond = 0, field = 0;
  for (int r = 0; r < L; ++r) {
    const int r1 = (r + 1) % L;
    const int st = spin_at(s, 2 * r), sb = spin_at(s, 2 * r + 1);
    const int st1 = spin_at(s, 2 * r1), sb1 = spin_at(s, 2 * r1 + 1);
    bond += -st * sb - sb * sb1 + st * st1 - st;
    field += sb;
  }
  return {bond, field};
}

// Real Bloch phase at k_index in {0, L/2}: +1 or (-1)^shift.
double real_phase(int k_index, int L, int shift) {
  if (k_index == 0) return 1.0;
  if (2 * k_index == L) return (shift & 1) ? -1.0 : 1.0;
  throw UsageError("real momentum blocks exist only at k=0 and k=L/2");
}

// Stored flip pattern of a momentum sector under single-site flips.
std::shared_ptr<const CsrOffDiag> build_sector_flips(const MomentumSector& sec, Geometry g) {
  const int n_sites = site_count(g, sec.L);
  const auto dim = sec.dimension();
  auto csr = std::make_shared<CsrOffDiag>();
  csr->row_ptr.assign(dim + 1, 0);

  std::vector<std::uint32_t> counts(dim, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(dim); ++a) {
    const std::uint32_t rep = sec.representatives[static_cast<std::size_t>(a)];
    std::uint32_t c = 0;
    for (int i = 0; i < n_sites; ++i) {
      const OrbitInfo orb = canonicalize(rep ^ (1u << i), sec.geometry, sec.L);
      if ((static_cast<long long>(sec.k_index) * orb.period) % sec.L == 0) ++c;
    }
    counts[static_cast<std::size_t>(a)] = c;
  }
  for (std::size_t a = 0; a < dim; ++a) csr->row_ptr[a + 1] = csr->row_ptr[a] + counts[a];
  csr->cols.resize(csr->row_ptr[dim]);
  csr->weights.resize(csr->row_ptr[dim]);

#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(dim); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const std::uint32_t rep = sec.representatives[ua];
    const double pa = sec.periods[ua];
    std::uint64_t e = csr->row_ptr[ua];
    for (int i = 0; i < n_sites; ++i) {
      const OrbitInfo orb = canonicalize(rep ^ (1u << i), sec.geometry, sec.L);
      if ((static_cast<long long>(sec.k_index) * orb.period) % sec.L != 0) continue;
      const std::ptrdiff_t b = sec.index_of(orb.representative);
      const double pb = sec.periods[static_cast<std::size_t>(b)];
      csr->cols[e] = static_cast<std::uint32_t>(b);
      csr->weights[e] = real_phase(sec.k_index, sec.L, orb.shift) * std::sqrt(pa / pb);
      ++e;
    }
  }
  return csr;
}

template <typename DiagFn>
Eigen::MatrixXcd momentum_block(const MomentumSector& sec, Geometry g, double Gamma, DiagFn diag) {
  const auto dim = sec.dimension();
  if (dim > 4096) throw CapacityError("momentum_block: dimension exceeds 4096");
  const int n_sites = site_count(g, sec.L);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  const double k = 2.0 * M_PI * sec.k_index / sec.L;
  for (std::size_t a = 0; a < dim; ++a) {
    const std::uint32_t rep = sec.representatives[a];
    H(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = diag(rep);
    for (int i = 0; i < n_sites; ++i) {
      const OrbitInfo orb = canonicalize(rep ^ (1u << i), g, sec.L);
      if ((static_cast<long long>(sec.k_index) * orb.period) % sec.L != 0) continue;
      const std::ptrdiff_t b = sec.index_of(orb.representative);
      const double ratio = std::sqrt(static_cast<double>(sec.periods[a]) /
                                     sec.periods[static_cast<std::size_t>(b)]);
      // column a, row b: <b(k)|H|a(k)> = sum_t c_t e^{i k l_t} sqrt(p_a/p_b)
      H(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) +=
          -Gamma * std::polar(ratio, k * orb.shift);
    }
  }
  return H;
}

} // namespace

SparseHamiltonian build_chain(const ChainParams& p, const BasisChoice& basis) {
  check_chain(p);
  SparseHamiltonian H;
  if (basis.kind == BasisChoice::Kind::full) {
    if (p.L > 24) throw CapacityError("build_chain: full basis limited to L <= 24");
    const std::size_t dim = std::size_t{1} << p.L;
    H.dimension = dim;
    H.diagonal.resize(dim);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(dim); ++s)
      H.diagonal[static_cast<std::size_t>(s)] = chain_diag(static_cast<std::uint32_t>(s), p);
    H.offdiag = FlipOffDiag{p.L};
    H.offdiag_scale = -p.Gamma;
    H.basis_tag = BasisTag{BasisTag::Kind::full, 0, 0};
    return H;
  }

  if (p.h != 0.0)
    throw UsageError(
        "build_chain: the staggered field breaks one-site translation symmetry; "
        "momentum projection requires h = 0");
  MomentumSector sec = build_momentum_sector(Geometry::chain, p.L, basis.k_index);
  const auto dim = sec.dimension();
  H.dimension = dim;
  H.diagonal.resize(dim);
  for (std::size_t a = 0; a < dim; ++a) H.diagonal[a] = chain_diag(sec.representatives[a], p);
  H.offdiag = build_sector_flips(sec, Geometry::chain); // throws unless k real
  H.offdiag_scale = -p.Gamma;
  H.basis_tag = BasisTag{BasisTag::Kind::momentum, basis.k_index, 0};
  return H;
}

double ladder_classical_energy(std::uint32_t bits, const LadderParams& p) {
  auto [bond, field] = ladder_diag_units(bits, p.L);
  return p.K * bond + 0.5 * p.U * field;
}

LadderSectorStructure build_ladder_sector_structure(int L, int k_index) {
  if (L < 2 || L > 13) throw CapacityError("ladder momentum basis limited to 2 <= L <= 13");
  LadderSectorStructure s;
  s.sector = build_momentum_sector(Geometry::ladder, L, k_index);
  const auto dim = s.sector.dimension();
  s.bond_units.resize(dim);
  s.field_units.resize(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(dim); ++a) {
    auto [bond, field] = ladder_diag_units(s.sector.representatives[static_cast<std::size_t>(a)], L);
    s.bond_units[static_cast<std::size_t>(a)] = static_cast<std::int16_t>(bond);
    s.field_units[static_cast<std::size_t>(a)] = static_cast<std::int16_t>(field);
  }
  s.flips = build_sector_flips(s.sector, Geometry::ladder);
  return s;
}

SparseHamiltonian assemble_ladder(const LadderSectorStructure& s, const LadderParams& p) {
  check_ladder(p);
  if (p.L != s.sector.L) throw UsageError("assemble_ladder: L mismatch with structure");
  SparseHamiltonian H;
  const auto dim = s.sector.dimension();
  H.dimension = dim;
  H.diagonal.resize(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(dim); ++a)
    H.diagonal[static_cast<std::size_t>(a)] =
        p.K * s.bond_units[static_cast<std::size_t>(a)] +
        0.5 * p.U * s.field_units[static_cast<std::size_t>(a)];
  H.offdiag = s.flips;
  H.offdiag_scale = -p.Gamma;
  H.basis_tag = BasisTag{BasisTag::Kind::momentum, s.sector.k_index, 0};
  return H;
}

SparseHamiltonian build_ladder(const LadderParams& p, const BasisChoice& basis) {
  check_ladder(p);
  if (basis.kind == BasisChoice::Kind::full) {
    if (p.L > 12) throw CapacityError("build_ladder: full basis limited to L <= 12");
    SparseHamiltonian H;
    const std::size_t dim = std::size_t{1} << (2 * p.L);
    H.dimension = dim;
    H.diagonal.resize(dim);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(dim); ++s)
      H.diagonal[static_cast<std::size_t>(s)] =
          ladder_classical_energy(static_cast<std::uint32_t>(s), p);
    H.offdiag = FlipOffDiag{2 * p.L};
    H.offdiag_scale = -p.Gamma;
    H.basis_tag = BasisTag{BasisTag::Kind::full, 0, 0};
    return H;
  }
  return assemble_ladder(build_ladder_sector_structure(p.L, basis.k_index), p);
}

Eigen::MatrixXcd chain_momentum_block(const ChainParams& p, int k_index) {
  check_chain(p);
  if (p.h != 0.0) throw UsageError("chain_momentum_block: requires h = 0");
  MomentumSector sec = build_momentum_sector(Geometry::chain, p.L, k_index);
  return momentum_block(sec, Geometry::chain, p.Gamma,
                        [&](std::uint32_t s) { return chain_diag(s, p); });
}

Eigen::MatrixXcd ladder_momentum_block(const LadderParams& p, int k_index) {
  check_ladder(p);
  MomentumSector sec = build_momentum_sector(Geometry::ladder, p.L, k_index);
  return momentum_block(sec, Geometry::ladder, p.Gamma,
                        [&](std::uint32_t s) { return ladder_classical_energy(s, p); });
}

ClassicalGroundResult classical_ground_energy(const LadderParams& p) {
  check_ladder(p);
  if (p.Gamma != 0.0) throw UsageError("classical_ground_energy: requires Gamma = 0");
  if (p.L > 4096) throw CapacityError("classical_ground_energy: L <= 4096");
  const int L = p.L;

  // Rung states 0..3: bit 0 = top spin up, bit 1 = bottom spin up.
  auto sgn = [](int state, int bit) { return (state >> bit) & 1 ? +1.0 : -1.0; };
  std::array<std::array<double, 4>, 4> M{};
  std::array<double, 4> local{};
  for (int s = 0; s < 4; ++s) {
    const double st = sgn(s, 0), sb = sgn(s, 1);
    local[static_cast<std::size_t>(s)] = -p.K * st * sb - p.K * st + 0.5 * p.U * sb;
  }
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      M[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] =
          local[static_cast<std::size_t>(s)] + p.K * sgn(s, 0) * sgn(t, 0) -
          p.K * sgn(s, 1) * sgn(t, 1);

  // forward DP per start state; also count minimizers in the (min,+,count) semiring
  ClassicalGroundResult out;
  out.energy = std::numeric_limits<double>::infinity();
  double total_count = 0;
  std::array<std::array<double, 4>, 4> closed{};
  int best_start = 0;

  std::vector<std::array<double, 4>> f(static_cast<std::size_t>(L) + 1);
  std::vector<std::array<double, 4>> best_f; // for cycle reconstruction
  for (int s0 = 0; s0 < 4; ++s0) {
    std::vector<std::array<double, 4>> cnt(static_cast<std::size_t>(L) + 1);
    for (int s = 0; s < 4; ++s) {
      f[0][static_cast<std::size_t>(s)] = (s == s0) ? 0.0 : std::numeric_limits<double>::infinity();
      cnt[0][static_cast<std::size_t>(s)] = (s == s0) ? 1.0 : 0.0;
    }
    for (int r = 0; r < L; ++r) {
      for (int t = 0; t < 4; ++t) {
        double best = std::numeric_limits<double>::infinity();
        double c = 0;
        for (int s = 0; s < 4; ++s) {
          const double v = f[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] +
                           M[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
          if (v < best) {
            best = v;
            c = cnt[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
          } else if (v == best) {
            c += cnt[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
          }
        }
        f[static_cast<std::size_t>(r) + 1][static_cast<std::size_t>(t)] = best;
        cnt[static_cast<std::size_t>(r) + 1][static_cast<std::size_t>(t)] = c;
      }
    }
    for (int t = 0; t < 4; ++t)
      closed[static_cast<std::size_t>(s0)][static_cast<std::size_t>(t)] =
          f[static_cast<std::size_t>(L)][static_cast<std::size_t>(t)];
    const double e = f[static_cast<std::size_t>(L)][static_cast<std::size_t>(s0)];
    if (e < out.energy) {
      out.energy = e;
      total_count = cnt[static_cast<std::size_t>(L)][static_cast<std::size_t>(s0)];
      best_start = s0;
      best_f = f;
    } else if (e == out.energy) {
      total_count += cnt[static_cast<std::size_t>(L)][static_cast<std::size_t>(s0)];
    }
  }
  out.degeneracy = total_count;
  out.closed_walk_energy = closed;

  // reconstruct one minimizing cycle from best_start
  out.optimal_cycle.assign(static_cast<std::size_t>(L), 0);
  int cur = best_start;
  for (int r = L; r > 0; --r) {
    out.optimal_cycle[static_cast<std::size_t>(r - 1)] = static_cast<std::uint8_t>(cur);
    if (r == 1) break;
    for (int s = 0; s < 4; ++s) {
      const double v = best_f[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(s)] +
                       M[static_cast<std::size_t>(s)][static_cast<std::size_t>(cur)];
      if (v == best_f[static_cast<std::size_t>(r)][static_cast<std::size_t>(cur)]) {
        cur = s;
        break;
      }
    }
  }
  return out;
}

double staggered_magnetization(std::span<const double> state, int L) {
  if (L < 1 || state.size() != (std::size_t{1} << L))
    throw UsageError("staggered_magnetization: state is not a full chain basis vector");
  double norm2 = 0.0;
  for (double v : state) norm2 += v * v;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-8)
    throw UsageError("staggered_magnetization: state not normalized");
  double m = 0.0;
  for (std::size_t s = 0; s < state.size(); ++s) {
    if (state[s] == 0.0) continue;
    int acc = 0;
    for (int i = 0; i < L; ++i) {
      const int si = spin_at(static_cast<std::uint32_t>(s), i);
      acc += (i & 1) ? -si : si;
    }
    m += state[s] * state[s] * acc;
  }
  return m / L;
}

} // namespace qgap
