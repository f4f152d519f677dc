#include "qgap/dimer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qgap/errors.hpp"
#include "qgap/spectral.hpp"

namespace qgap {

namespace {

// Column-transfer enumeration. The cut state between columns r and r+1 is
// (T_p, B_p); vertex constraints at column r+1 force
//   T_{r+1} = 1 - T_r - v_{r+1},  B_{r+1} = 1 - B_r - v_{r+1}
// and periodic closure matches the initial cut.
void extend(int L, int r, int t_prev, int b_prev, int t0, int b0, DimerCovering cur,
            std::vector<DimerCovering>& out) {
  if (r == L) {
    if (t_prev == t0 && b_prev == b0) {
      cur.winding = ((cur.top_mask & 1u) != 0) - ((cur.bottom_mask & 1u) != 0);
      out.push_back(cur);
    }
    return;
  }
  for (int v = 0; v <= 1; ++v) {
    const int t = 1 - t_prev - v;
    const int b = 1 - b_prev - v;
    if (t < 0 || b < 0) continue;
    DimerCovering next = cur;
    if (v) next.rung_mask |= 1u << r;
    if (t) next.top_mask |= 1u << r;
    if (b) next.bottom_mask |= 1u << r;
    extend(L, r + 1, t, b, t0, b0, next, out);
  }
}

struct FlipStructure {
  std::shared_ptr<CsrOffDiag> csr;
  std::vector<double> diag_units; // energy in units of U
};

// covering after flipping plaquette p; valid only if flippable at p.
DimerCovering flipped(const DimerCovering& c, int p) {
  const int q = (p + 1) % c.L;
  DimerCovering d = c;
  const std::uint32_t vp = 1u << p, vq = 1u << q, cp = 1u << p;
  if ((c.rung_mask & vp) && (c.rung_mask & vq)) {
    d.rung_mask &= ~(vp | vq);
    d.top_mask |= cp;
    d.bottom_mask |= cp;
  } else {
    d.rung_mask |= vp | vq;
    d.top_mask &= ~cp;
    d.bottom_mask &= ~cp;
  }
  return d;
}

bool flippable(const DimerCovering& c, int p) {
  const int q = (p + 1) % c.L;
  const bool two_rungs = (c.rung_mask >> p & 1u) && (c.rung_mask >> q & 1u);
  const bool doubled = (c.top_mask >> p & 1u) && (c.bottom_mask >> p & 1u);
  return (two_rungs || doubled) && p != q;
}

} // namespace

std::vector<DimerCovering> enumerate_coverings(int L) {
  if (L < 2) throw UsageError("enumerate_coverings: L >= 2 required");
  if (L > 24) throw CapacityError("enumerate_coverings: L <= 24");
  std::vector<DimerCovering> out;
  for (int t0 = 0; t0 <= 1; ++t0)
    for (int b0 = 0; b0 <= 1; ++b0)
      extend(L, 0, t0, b0, t0, b0, DimerCovering{L, 0, 0, 0, 0}, out);
  auto key = [](const DimerCovering& c) {
    return std::tuple(c.rung_mask, c.top_mask, c.bottom_mask);
  };
  // each covering is generated exactly once (its closure cut is unique)
  std::sort(out.begin(), out.end(),
            [&](const DimerCovering& a, const DimerCovering& b) { return key(a) < key(b); });
  return out;
}

DimerSectorBasis dimer_sector(int L, int winding) {
  if (winding < -1 || winding > 1) throw UsageError("dimer_sector: winding in {-1,0,1}");
  if (winding != 0 && (L & 1))
    throw UsageError("dimer_sector: odd ladders are topologically trivial (w = 0 only)");
  DimerSectorBasis basis{L, winding, {}};
  for (const auto& c : enumerate_coverings(L))
    if (c.winding == winding) basis.states.push_back(c);
  return basis;
}

SparseHamiltonian build_dimer_hamiltonian(int L, double U, double Gamma, int winding) {
  DimerSectorBasis basis = dimer_sector(L, winding);
  const auto n = basis.states.size();

  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& c = basis.states[i];
    index[{c.rung_mask, c.top_mask, c.bottom_mask}] = i;
  }

  SparseHamiltonian H;
  H.dimension = n;
  H.diagonal.resize(n);
  auto csr = std::make_shared<CsrOffDiag>();
  csr->row_ptr.assign(n + 1, 0);

  std::vector<std::vector<std::uint32_t>> row_cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = basis.states[i];
    const int verticals = __builtin_popcount(c.rung_mask);
    const int doubled = __builtin_popcount(c.top_mask & c.bottom_mask);
    H.diagonal[i] = U * verticals + 2.0 * U * doubled;
    for (int p = 0; p < L; ++p) {
      if (!flippable(c, p)) continue;
      const DimerCovering d = flipped(c, p);
      auto it = index.find({d.rung_mask, d.top_mask, d.bottom_mask});
      if (it == index.end())
        throw NumericalError("dimer flip left the winding sector"); // structurally impossible
      row_cols[i].push_back(it->second);
    }
  }
  for (std::size_t i = 0; i < n; ++i) csr->row_ptr[i + 1] = csr->row_ptr[i] + row_cols[i].size();
  csr->cols.reserve(csr->row_ptr[n]);
  csr->weights.assign(csr->row_ptr[n], 1.0);
  for (const auto& rc : row_cols) csr->cols.insert(csr->cols.end(), rc.begin(), rc.end());

  H.offdiag = std::shared_ptr<const CsrOffDiag>(csr);
  H.offdiag_scale = -Gamma;
  H.basis_tag = BasisTag{BasisTag::Kind::dimer_sector, 0, winding};
  return H;
}

double compute_b(int L) {
  if (L < 2 || (L & 1)) throw UsageError("compute_b: even L >= 2 required");
  // w=0 block is U*L*I - Gamma*F; b_L = lambda_max(F)/L regardless of U, Gamma.
  SparseHamiltonian H = build_dimer_hamiltonian(L, 1.0, 1.0, 0);
  if (H.dimension > 4096) throw CapacityError("compute_b: w=0 sector too large for dense ED");
  SpectrumResult spec = dense_spectrum(H, false);
  const double e0 = spec.energies.front();
  return (1.0 * L - e0) / (1.0 * L);
}

LevelCrossing locate_level_crossing(int L, double U, double gamma_lo, double gamma_hi) {
  if (!(U > 0)) throw UsageError("locate_level_crossing: U > 0");
  if (L < 2 || (L & 1)) throw UsageError("locate_level_crossing: even L >= 2 required");
  const double b = compute_b(L);

  // E0(w=0; Gamma) = U*L - b_L*Gamma*L, strictly decreasing in Gamma.
  auto e0 = [&](double gamma) {
    SparseHamiltonian H = build_dimer_hamiltonian(L, U, gamma, 0);
    return dense_spectrum(H, false).energies.front();
  };
  double flo = e0(gamma_lo), fhi = e0(gamma_hi);
  if (!(flo > 0.0 && fhi < 0.0))
    throw NumericalError("locate_level_crossing: no sign change in bracket [" +
                         std::to_string(gamma_lo) + ", " + std::to_string(gamma_hi) +
                         "]; E0 = " + std::to_string(flo) + " .. " + std::to_string(fhi));
  for (int it = 0; it < 200 && (gamma_hi - gamma_lo) > 1e-14 * gamma_hi; ++it) {
    const double mid = 0.5 * (gamma_lo + gamma_hi);
    if (e0(mid) > 0.0)
      gamma_lo = mid;
    else
      gamma_hi = mid;
  }
  LevelCrossing out;
  out.gamma_c = 0.5 * (gamma_lo + gamma_hi);
  out.slope_below = 0.0; // staggered states sit at E = 0 for Gamma < Gamma_c
  out.slope_above = -b;  // resonating sector takes over with slope -b_L per site
  return out;
}

} // namespace qgap
