#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <span>
#include <vector>

#include "qgap/basis.hpp"
#include "qgap/operator.hpp"

namespace qgap {

/// Antiferromagnetic chain in a staggered longitudinal field:
///   H = J sum_i sz_i sz_{i+1} - h sum_i (-1)^i sz_i - Gamma sum_i sx_i
/// periodic, site 0 carries +h.
struct ChainParams {
  int L = 2;
  double J = 1.0;
  double h = 0.0;
  double Gamma = 0.0;
};

/// Fully frustrated two-leg Ising ladder in a field:
///   H = -sum_<ij> K_ij sz_i sz_j - K sum_top sz_i + (U/2) sum_bottom sz_i
///       - Gamma sum_i sx_i
/// Bond gauge: rung and bottom-row bonds K_ij = +K, top-row bonds
/// K_ij = -K (antiferromagnetic). Periodic in the leg direction.
struct LadderParams {
  int L = 2;
  double K = 1.0;
  double U = 1.0;
  double Gamma = 0.0;
};

struct BasisChoice {
  enum class Kind { full, momentum } kind = Kind::full;
  int k_index = 0;
  static BasisChoice full() { return {}; }
  static BasisChoice momentum(int k) { return {Kind::momentum, k}; }
};

SparseHamiltonian build_chain(const ChainParams& p, const BasisChoice& basis);
SparseHamiltonian build_ladder(const LadderParams& p, const BasisChoice& basis);

/// Classical energy of a ladder configuration (Gamma plays no role).
double ladder_classical_energy(std::uint32_t bits, const LadderParams& p);

/// Gamma-independent pieces of a momentum-sector ladder block. Building the
/// flip pattern over ~1.4M representatives at L=12 is the expensive step;
/// reuse it across a Gamma sweep via assemble_ladder.
struct LadderSectorStructure {
  LadderSectorStructure() = default;
  MomentumSector sector;
  std::shared_ptr<const CsrOffDiag> flips;
  std::vector<std::int16_t> bond_units;   // diagonal coefficient of K
  std::vector<std::int16_t> field_units;  // diagonal coefficient of U/2
};

LadderSectorStructure build_ladder_sector_structure(int L, int k_index = 0);
SparseHamiltonian assemble_ladder(const LadderSectorStructure& s, const LadderParams& p);

/// Dense Hermitian momentum blocks at generic k (completeness checks; small L).
Eigen::MatrixXcd chain_momentum_block(const ChainParams& p, int k_index);
Eigen::MatrixXcd ladder_momentum_block(const LadderParams& p, int k_index);

/// Exact classical ground state of the ladder at Gamma = 0 by a 4-state
/// min-plus transfer matrix with periodic closure.
struct ClassicalGroundResult {
  double energy = 0;
  double degeneracy = 0;                  // minimizing-cycle count (counting semiring)
  std::vector<std::uint8_t> optimal_cycle; // one minimizing rung-state cycle, values 0..3
  std::array<std::array<double, 4>, 4> closed_walk_energy{}; // per (start, start)
};

ClassicalGroundResult classical_ground_energy(const LadderParams& p);

/// (1/L) sum_i (-1)^i <sz_i> in a normalized full-basis chain state.
double staggered_magnetization(std::span<const double> state, int L);

} // namespace qgap
