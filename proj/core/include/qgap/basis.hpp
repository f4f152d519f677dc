#pragma once

#include <cstdint>
#include <vector>

namespace qgap {

/// Lattice geometry. The translation unit cell is one site on the chain and
/// one rung (two sites) on the ladder.
enum class Geometry { chain, ladder };

/// A spin-1/2 product state over n_sites two-level sites, bit-encoded.
/// sigma^z_i = +1 when bit i is set, -1 otherwise.
///
/// Bit layout: chain site i <-> bit i. Ladder is rung-major: top spin of
/// rung r <-> bit 2r, bottom spin <-> bit 2r+1, so one-rung translation is
/// a 2-bit rotate.
struct SpinConfiguration {
  std::uint32_t bits = 0;
  int n_sites = 0;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;
};

inline int cell_bits(Geometry g) { return g == Geometry::chain ? 1 : 2; }
inline int site_count(Geometry g, int L) { return g == Geometry::chain ? L : 2 * L; }

/// sigma^z value at a site, +1/-1.
inline int spin_at(std::uint32_t bits, int site) { return (bits >> site) & 1u ? +1 : -1; }

/// All 2^n_sites configurations in ascending bits order. n_sites <= 28.
std::vector<std::uint32_t> enumerate_basis(int n_sites);

/// Cyclic shift by `steps` unit cells (negative steps shift backwards).
std::uint32_t translate(std::uint32_t bits, Geometry g, int L, int steps);

/// Global spin flip (bitwise complement on n_sites bits).
inline std::uint32_t flip_all(std::uint32_t bits, int n_sites) {
  return ~bits & ((n_sites >= 32 ? 0u : (1u << n_sites)) - 1u);
}

/// Diagonal Ising parity (-1)^popcount = prod_i sigma^z_i.
inline int parity_sign(std::uint32_t bits) { return __builtin_popcount(bits) & 1 ? -1 : +1; }

struct OrbitInfo {
  std::uint32_t representative; // numerically smallest state in the orbit
  int shift;                    // translate(representative, shift) == original
  int period;                   // smallest p > 0 with T^p s = s; divides L
};

/// Canonical form of a state under the L-cell translation group.
OrbitInfo canonicalize(std::uint32_t bits, Geometry g, int L);

/// One momentum block of the translation symmetry, k = 2*pi*k_index/L.
/// Representatives are the canonical orbit members whose period is
/// compatible with k (k*period = 0 mod L); norms are the Bloch-sum
/// normalization factors L/sqrt(period).
struct MomentumSector {
  Geometry geometry{};
  int L = 0;
  int k_index = 0;
  std::vector<std::uint32_t> representatives; // ascending
  std::vector<std::uint8_t> periods;
  std::vector<double> norms;

  std::size_t dimension() const { return representatives.size(); }

  /// Index of a representative, or -1 if not in this sector.
  std::ptrdiff_t index_of(std::uint32_t representative) const;
};

MomentumSector build_momentum_sector(Geometry g, int L, int k_index);

} // namespace qgap
