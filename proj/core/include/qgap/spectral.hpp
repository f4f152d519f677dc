#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qgap/operator.hpp"

namespace qgap {

struct SpectrumResult {
  std::vector<double> energies;          // ascending
  std::optional<Eigen::MatrixXd> vectors; // dim x n, normalized, matching order
  std::vector<double> residuals;         // ||H v - E v|| for the pairs that carry vectors
  BasisTag basis_tag;
};

/// Full real-symmetric eigendecomposition. dimension <= 4096.
SpectrumResult dense_spectrum(const SparseHamiltonian& H, bool want_vectors = true);

/// Eigenvalues of a dense Hermitian block (generic momentum sectors).
std::vector<double> dense_eigenvalues(const Eigen::MatrixXcd& H);

struct LanczosOptions {
  int max_iterations = 2000; // total matvec budget across restarts
  int max_basis = 128;       // stored Lanczos vectors before a thick restart
  double tol_rel = 1e-10;    // residual tolerance relative to ||H|| estimate
  const Eigen::VectorXd* warm_start = nullptr;
  bool want_vectors = true;
  std::uint64_t seed_salt = 0;
};

/// m lowest eigenpairs by thick-restart Lanczos with full reorthogonalization.
/// Start vector is a seeded pseudo-random vector keyed by the operator's
/// structure hash, so repeated runs are bit-reproducible.
SpectrumResult lowest_eigenpairs(const SparseHamiltonian& H, int m, const LanczosOptions& opt = {});

/// Power-iteration estimate of the spectral radius (30 iterations).
double operator_norm_estimate(const SparseHamiltonian& H, int iterations = 30);

struct GapReport {
  double e0 = 0, e1 = 0;
  double gap_raw = 0;      // e1 - e0
  double gap_distinct = 0; // gap to first level above e0 + degeneracy_tol; +inf if none seen
  int degeneracy_count = 0;
};

GapReport extract_gap(const SpectrumResult& spec, double degeneracy_tol = 1e-9);

} // namespace qgap
