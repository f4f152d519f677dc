#include <doctest.h>

#include <Eigen/Dense>

#include "qgap/errors.hpp"
#include "qgap/models.hpp"
#include "qgap/operator.hpp"
#include "qgap/util.hpp"

using namespace qgap;

namespace {

Eigen::VectorXd random_vector(std::size_t n, std::uint64_t seed) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  CounterRng rng(seed);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 2.0 * rng.uniform() - 1.0;
  return v;
}

} // namespace

TEST_SUITE("operator") {
  TEST_CASE("apply is symmetric and linear (flip and CSR structures)") {
    const ChainParams chain{6, 1.0, 0.3, 0.7};
    const LadderParams ladder{5, 2.0, 1.0, 0.9};
    const SparseHamiltonian ops[] = {
        build_chain(chain, BasisChoice::full()),
        build_ladder(ladder, BasisChoice::full()),
        build_chain(ChainParams{6, 1.0, 0.0, 0.7}, BasisChoice::momentum(0)),
        build_chain(ChainParams{6, 1.0, 0.0, 0.7}, BasisChoice::momentum(3)),
        build_ladder(ladder, BasisChoice::momentum(0)),
    };
    for (const auto& H : ops) {
      const auto n = H.dimension;
      const Eigen::VectorXd u = random_vector(n, 11), v = random_vector(n, 22);
      const Eigen::VectorXd Hu = H.apply(u), Hv = H.apply(v);
      CHECK(std::abs(u.dot(Hv) - Hu.dot(v)) <= 1e-12 * (1.0 + Hu.norm() * v.norm()));
      const Eigen::VectorXd lhs = H.apply((2.5 * u - 0.5 * v).eval());
      CHECK((lhs - (2.5 * Hu - 0.5 * Hv)).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }
  }

  TEST_CASE("to_dense agrees with matrix-free apply") {
    const SparseHamiltonian H = build_chain(ChainParams{5, 1.2, 0.4, 0.6}, BasisChoice::full());
    const Eigen::MatrixXd M = H.to_dense();
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    const Eigen::VectorXd v = random_vector(H.dimension, 7);
    CHECK((M * v - H.apply(v)).norm() <= 1e-12 * (1.0 + v.norm()));
  }

  TEST_CASE("dense realization capacity guard") {
    const SparseHamiltonian H = build_chain(ChainParams{13, 1.0, 0.0, 0.5}, BasisChoice::full());
    CHECK_THROWS_AS(H.to_dense(), CapacityError);
  }

  TEST_CASE("structure hash is reproducible and parameter-sensitive") {
    const SparseHamiltonian a = build_chain(ChainParams{6, 1.0, 0.0, 0.5}, BasisChoice::full());
    const SparseHamiltonian b = build_chain(ChainParams{6, 1.0, 0.0, 0.5}, BasisChoice::full());
    const SparseHamiltonian c = build_chain(ChainParams{6, 1.0, 0.0, 0.6}, BasisChoice::full());
    CHECK(a.structure_hash() == b.structure_hash());
    CHECK(a.structure_hash() != c.structure_hash());
  }
}
