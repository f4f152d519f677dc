#include "qgap/operator.hpp"

#include <cassert>

#include "qgap/errors.hpp"
#include "qgap/util.hpp"

namespace qgap {

std::string BasisTag::str() const {
  switch (kind) {
    case Kind::full: return "full";
    case Kind::momentum: return "k=" + std::to_string(k_index);
    case Kind::dimer_sector: return "w=" + std::to_string(winding);
  }
  return "?";
}

void SparseHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
  assert(x.size() == dimension && y.size() == dimension);
  const double* xv = x.data();
  double* yv = y.data();
  const std::int64_t n = static_cast<std::int64_t>(dimension);

  if (const auto* flip = std::get_if<FlipOffDiag>(&offdiag)) {
    const int ns = flip->n_sites;
    const double g = offdiag_scale;
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < n; ++s) {
      double acc = diagonal[static_cast<std::size_t>(s)] * xv[s];
      const auto us = static_cast<std::uint64_t>(s);
      for (int i = 0; i < ns; ++i) acc += g * xv[us ^ (std::uint64_t{1} << i)];
      yv[s] = acc;
    }
    return;
  }

  const auto& csr = *std::get<std::shared_ptr<const CsrOffDiag>>(offdiag);
  const double g = offdiag_scale;
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    double acc = diagonal[static_cast<std::size_t>(r)] * xv[r];
    const std::uint64_t lo = csr.row_ptr[static_cast<std::size_t>(r)];
    const std::uint64_t hi = csr.row_ptr[static_cast<std::size_t>(r) + 1];
    for (std::uint64_t e = lo; e < hi; ++e) acc += g * csr.weights[e] * xv[csr.cols[e]];
    yv[r] = acc;
  }
}

Eigen::VectorXd SparseHamiltonian::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(x.size());
  apply(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
        std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
  return y;
}

Eigen::MatrixXd SparseHamiltonian::to_dense() const {
  if (dimension > 4096)
    throw CapacityError("to_dense: dimension " + std::to_string(dimension) + " exceeds 4096");
  const auto n = static_cast<Eigen::Index>(dimension);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) M(i, i) = diagonal[static_cast<std::size_t>(i)];
  if (const auto* flip = std::get_if<FlipOffDiag>(&offdiag)) {
    for (Eigen::Index s = 0; s < n; ++s)
      for (int i = 0; i < flip->n_sites; ++i)
        M(s, static_cast<Eigen::Index>(static_cast<std::uint64_t>(s) ^ (std::uint64_t{1} << i))) +=
            offdiag_scale;
  } else {
    const auto& csr = *std::get<std::shared_ptr<const CsrOffDiag>>(offdiag);
    for (Eigen::Index r = 0; r < n; ++r)
      for (std::uint64_t e = csr.row_ptr[static_cast<std::size_t>(r)];
           e < csr.row_ptr[static_cast<std::size_t>(r) + 1]; ++e)
        M(r, static_cast<Eigen::Index>(csr.cols[e])) += offdiag_scale * csr.weights[e];
  }
  return M;
}

std::uint64_t SparseHamiltonian::structure_hash() const {
  std::uint64_t h = fnv1a(&dimension, sizeof dimension);
  h = fnv1a(basis_tag.str(), h);
  h = fnv1a(&offdiag_scale, sizeof offdiag_scale, h);
  h = fnv1a(std::span<const double>(diagonal), h);
  return h;
}

std::size_t SparseHamiltonian::offdiag_entries() const {
  if (const auto* flip = std::get_if<FlipOffDiag>(&offdiag))
    return dimension * static_cast<std::size_t>(flip->n_sites);
  return std::get<std::shared_ptr<const CsrOffDiag>>(offdiag)->cols.size();
}

} // namespace qgap
