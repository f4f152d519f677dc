#include "qgap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgap/errors.hpp"
#include "qgap/util.hpp"

namespace qgap {

namespace {

Eigen::VectorXd seeded_vector(std::uint64_t key, std::size_t dim) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  CounterRng rng(key, dim);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 2.0 * rng.uniform() - 1.0;
  v.normalize();
  return v;
}

// y -= V(:,0..k-1) (V(:,0..k-1)^T y), two passes. Column dots are sequential
// per column and columns are independent, so results do not depend on the
// thread count.
void orthogonalize_against(const Eigen::MatrixXd& V, int k, Eigen::VectorXd& y) {
  if (k == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::VectorXd c(k);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < k; ++j) c[j] = V.col(j).dot(y);
    const std::int64_t n = y.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      double acc = y[i];
      for (int j = 0; j < k; ++j) acc -= V(i, j) * c[j];
      y[i] = acc;
    }
  }
}

} // namespace

SpectrumResult dense_spectrum(const SparseHamiltonian& H, bool want_vectors) {
  if (H.dimension > 4096)
    throw CapacityError("dense_spectrum: dimension " + std::to_string(H.dimension) +
                        " exceeds 4096");
  Eigen::MatrixXd M = H.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      M, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense_spectrum: eigensolver failed");

  SpectrumResult out;
  out.basis_tag = H.basis_tag;
  out.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  if (want_vectors) {
    out.vectors = es.eigenvectors();
    const int nres = static_cast<int>(std::min<std::size_t>(H.dimension, 16));
    out.residuals.resize(static_cast<std::size_t>(nres));
    for (int i = 0; i < nres; ++i) {
      Eigen::VectorXd r = H.apply(out.vectors->col(i).eval()) -
                          out.energies[static_cast<std::size_t>(i)] * out.vectors->col(i);
      out.residuals[static_cast<std::size_t>(i)] = r.norm();
    }
  }
  return out;
}

std::vector<double> dense_eigenvalues(const Eigen::MatrixXcd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense_eigenvalues: eigensolver failed");
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

double operator_norm_estimate(const SparseHamiltonian& H, int iterations) {
  Eigen::VectorXd v = seeded_vector(H.structure_hash() ^ 0x705fde23c5b4a1ULL, H.dimension);
  double norm = 1.0;
  Eigen::VectorXd w(v.size());
  for (int it = 0; it < iterations; ++it) {
    H.apply(std::span<const double>(v.data(), H.dimension), std::span<double>(w.data(), H.dimension));
    norm = std::sqrt(blocked_norm2(std::span<const double>(w.data(), H.dimension)));
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return norm;
}

SpectrumResult lowest_eigenpairs(const SparseHamiltonian& H, int m, const LanczosOptions& opt) {
  const std::size_t dim = H.dimension;
  if (m < 1 || m > 16) throw UsageError("lowest_eigenpairs: need 1 <= m <= 16");
  if (dim < static_cast<std::size_t>(m))
    throw UsageError("lowest_eigenpairs: dimension smaller than m");

  // Small blocks go dense; same contract, simpler path.
  if (dim <= 256) {
    SpectrumResult full = dense_spectrum(H, true);
    SpectrumResult out;
    out.basis_tag = full.basis_tag;
    out.energies.assign(full.energies.begin(), full.energies.begin() + m);
    if (opt.want_vectors) out.vectors = full.vectors->leftCols(m).eval();
    const auto nres = std::min<std::size_t>(full.residuals.size(), static_cast<std::size_t>(m));
    out.residuals.assign(full.residuals.begin(), full.residuals.begin() + nres);
    return out;
  }

  const double norm_est = std::max(operator_norm_estimate(H), 1e-300);
  const double tol = opt.tol_rel * norm_est;

  const int max_basis = static_cast<int>(
      std::min<std::size_t>(dim, static_cast<std::size_t>(std::max(opt.max_basis, 3 * m + 8))));
  const int keep = std::min(max_basis - 2, std::max(2 * m, m + 6));

  Eigen::MatrixXd V(static_cast<Eigen::Index>(dim), max_basis);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(max_basis, max_basis);

  if (opt.warm_start && opt.warm_start->size() == static_cast<Eigen::Index>(dim) &&
      opt.warm_start->norm() > 0) {
    V.col(0) = opt.warm_start->normalized();
  } else {
    V.col(0) = seeded_vector(H.structure_hash() ^ splitmix64(opt.seed_salt), dim);
  }

  int nbasis = 1;
  int matvecs = 0;
  Eigen::VectorXd w(static_cast<Eigen::Index>(dim));
  std::vector<double> best_residuals(static_cast<std::size_t>(m),
                                     std::numeric_limits<double>::infinity());

  while (matvecs < opt.max_iterations) {
    const int j = nbasis - 1;
    H.apply(std::span<const double>(V.col(j).data(), dim), std::span<double>(w.data(), dim));
    ++matvecs;
    T(j, j) = blocked_dot(std::span<const double>(V.col(j).data(), dim),
                          std::span<const double>(w.data(), dim));
    orthogonalize_against(V, nbasis, w);
    double beta = std::sqrt(blocked_norm2(std::span<const double>(w.data(), dim)));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.topLeftCorner(nbasis, nbasis));
    const auto& theta = es.eigenvalues();
    const auto& Y = es.eigenvectors();

    bool converged = nbasis >= m;
    for (int i = 0; i < m && converged; ++i)
      converged = std::abs(beta * Y(nbasis - 1, i)) <= tol;
    if (nbasis >= m)
      for (int i = 0; i < m; ++i)
        best_residuals[static_cast<std::size_t>(i)] = std::min(
            best_residuals[static_cast<std::size_t>(i)], std::abs(beta * Y(nbasis - 1, i)));

    if (converged || static_cast<std::size_t>(nbasis) == dim) {
      SpectrumResult out;
      out.basis_tag = H.basis_tag;
      out.energies.resize(static_cast<std::size_t>(m));
      Eigen::MatrixXd X(static_cast<Eigen::Index>(dim), m);
      for (int i = 0; i < m; ++i) {
        out.energies[static_cast<std::size_t>(i)] = theta[i];
        X.col(i) = V.leftCols(nbasis) * Y.col(i);
        X.col(i).normalize();
      }
      out.residuals.resize(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd r = H.apply(X.col(i).eval()) - theta[i] * X.col(i);
        out.residuals[static_cast<std::size_t>(i)] = r.norm();
      }
      if (opt.want_vectors) out.vectors = std::move(X);
      return out;
    }

    if (beta <= 1e-13 * norm_est) {
      // Invariant subspace before convergence: continue the search in a
      // fresh direction with no coupling to the exhausted chain.
      w = seeded_vector(H.structure_hash() ^ splitmix64(0xabcdu + static_cast<unsigned>(matvecs)),
                        dim);
      orthogonalize_against(V, nbasis, w);
      const double nw = std::sqrt(blocked_norm2(std::span<const double>(w.data(), dim)));
      if (nw <= 1e-13) throw NumericalError("lowest_eigenpairs: basis exhausted");
      w /= nw;
      beta = 0.0;
    } else {
      w /= beta;
    }

    if (nbasis < max_basis) {
      T(j + 1, j) = beta;
      T(j, j + 1) = beta;
      V.col(nbasis) = w;
      ++nbasis;
      continue;
    }

    // Thick restart: keep the lowest Ritz vectors, append the residual
    // direction; T becomes diag(theta) plus an arrowhead coupling row.
    Eigen::MatrixXd kept(static_cast<Eigen::Index>(dim), keep);
    for (int i = 0; i < keep; ++i) kept.col(i) = (V.leftCols(nbasis) * Y.col(i)).normalized();
    Eigen::VectorXd s(keep);
    for (int i = 0; i < keep; ++i) s[i] = beta * Y(nbasis - 1, i);

    V.leftCols(keep) = kept;
    V.col(keep) = w;
    T.setZero();
    for (int i = 0; i < keep; ++i) T(i, i) = theta[i];
    for (int i = 0; i < keep; ++i) {
      T(i, keep) = s[i];
      T(keep, i) = s[i];
    }
    nbasis = keep + 1;
  }

  throw ConvergenceError("lowest_eigenpairs: no convergence within iteration budget",
                         best_residuals);
}

GapReport extract_gap(const SpectrumResult& spec, double degeneracy_tol) {
  if (spec.energies.size() < 2)
    throw UsageError("extract_gap: need at least two converged energies");
  GapReport g;
  g.e0 = spec.energies[0];
  g.e1 = spec.energies[1];
  g.gap_raw = g.e1 - g.e0;
  g.degeneracy_count = 0;
  g.gap_distinct = std::numeric_limits<double>::infinity();
  for (double e : spec.energies) {
    if (e <= g.e0 + degeneracy_tol) {
      ++g.degeneracy_count;
    } else {
      g.gap_distinct = e - g.e0;
      break;
    }
  }
  return g;
}

} // namespace qgap
