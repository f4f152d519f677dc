#pragma once

#include <vector>

#include "qgap/operator.hpp"

namespace qgap {

/// Hardcore dimer covering of the periodic two-leg ladder, encoded by three
/// bitmasks over plaquette columns:
///   rung_mask bit r    - vertical dimer on rung r
///   top_mask bit p     - horizontal dimer on the top link crossing cut p
///   bottom_mask bit p  - same for the bottom link
/// Winding w = (-1)^p (top_p - bottom_p), evaluated at cut 0; it is the same
/// for every cut and vanishes identically for odd L.
struct DimerCovering {
  int L = 0;
  std::uint32_t rung_mask = 0;
  std::uint32_t top_mask = 0;
  std::uint32_t bottom_mask = 0;
  int winding = 0;

  friend bool operator==(const DimerCovering&, const DimerCovering&) = default;
};

/// All coverings, sorted by (rung, top, bottom) masks. L <= 24.
std::vector<DimerCovering> enumerate_coverings(int L);

struct DimerSectorBasis {
  int L = 0;
  int winding = 0;
  std::vector<DimerCovering> states;
};

DimerSectorBasis dimer_sector(int L, int winding);

/// H = U * (#vertical dimers) + 2U * (#doubled plaquettes)  [diagonal]
///     - Gamma * (single-plaquette flips || <-> =)           [off-diagonal]
/// Every w=0 covering has diagonal energy exactly U*L; staggered coverings
/// have 0. Flips conserve the winding, so the block is built per sector.
SparseHamiltonian build_dimer_hamiltonian(int L, double U, double Gamma, int winding);

/// Resonance-band density b_L = (U*L - E0(w=0)) / (Gamma*L); independent of
/// both U and Gamma because the w=0 block is U*L*I - Gamma*F.
double compute_b(int L);

struct LevelCrossing {
  double gamma_c = 0;
  double slope_below = 0; // d(e0/L)/dGamma below the crossing
  double slope_above = 0; // and above: -b_L
};

/// Gamma at which the w=0 ground energy crosses the staggered E=0 states,
/// located by bisection on the given bracket.
LevelCrossing locate_level_crossing(int L, double U, double gamma_lo = 1e-3,
                                    double gamma_hi = 64.0);

} // namespace qgap
