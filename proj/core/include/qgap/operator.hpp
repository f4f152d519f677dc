#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qgap {

/// Basis a Hamiltonian block lives in.
struct BasisTag {
  enum class Kind { full, momentum, dimer_sector } kind = Kind::full;
  int k_index = 0; // momentum blocks
  int winding = 0; // dimer sectors

  std::string str() const;
  friend bool operator==(const BasisTag&, const BasisTag&) = default;
};

/// Off-diagonal structure of a full product basis under single-site flips:
/// row s couples to s ^ (1<<i) with structural weight 1 for every site i.
/// Nothing is stored; apply works by index arithmetic.
struct FlipOffDiag {
  int n_sites = 0;
};

/// Explicit sparse pattern, CSR-like. Weights are the Gamma-independent
/// structural amplitudes (Bloch factors sqrt(p_a/p_b), flip multiplicities).
struct CsrOffDiag {
  std::vector<std::uint64_t> row_ptr; // size dim+1
  std::vector<std::uint32_t> cols;
  std::vector<double> weights;
};

/// Symmetric real sparse operator with matrix-free apply.
///
/// H = diag(diagonal) + offdiag_scale * W, where W is the structural
/// off-diagonal pattern. Spin models set offdiag_scale = -Gamma, which lets
/// a Gamma sweep share one stored pattern.
class SparseHamiltonian {
public:
  std::size_t dimension = 0;
  std::vector<double> diagonal;
  double offdiag_scale = 1.0;
  std::variant<FlipOffDiag, std::shared_ptr<const CsrOffDiag>> offdiag{FlipOffDiag{}};
  BasisTag basis_tag;

  /// y = H x. Parallel over rows; deterministic (each row written once).
  void apply(std::span<const double> x, std::span<double> y) const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  /// Dense realization; guarded to dimension <= 4096.
  Eigen::MatrixXd to_dense() const;

  /// Deterministic fingerprint of (dimension, tag, diagonal, scale); seeds
  /// the eigensolver start vector.
  std::uint64_t structure_hash() const;

  std::size_t offdiag_entries() const;
};

} // namespace qgap
