#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "qgap/dimer.hpp"
#include "qgap/errors.hpp"
#include "qgap/models.hpp"
#include "qgap/spectral.hpp"
#include "qgap/util.hpp"

using namespace qgap;

namespace {

// Independent re-derivation of the ladder energy for the gauge checks:
// rung and bottom bonds ferromagnetic (+K), top bonds antiferromagnetic,
// field -K on top sites and +U/2 on bottom sites. Allows U = 0.
double oracle_ladder_energy(std::uint32_t s, int L, double K, double U) {
  auto sp = [&](int b) { return (s >> b) & 1u ? +1.0 : -1.0; };
  double e = 0;
  for (int r = 0; r < L; ++r) {
    const int r1 = (r + 1) % L;
    e += -K * sp(2 * r) * sp(2 * r + 1);
    e += -K * sp(2 * r + 1) * sp(2 * r1 + 1);
    e += +K * sp(2 * r) * sp(2 * r1);
    e += -K * sp(2 * r);
    e += 0.5 * U * sp(2 * r + 1);
  }
  return e;
}

int oracle_unsatisfied_k_terms(std::uint32_t s, int L) {
  auto sp = [&](int b) { return (s >> b) & 1 ? +1 : -1; };
  int unsat = 0;
  for (int r = 0; r < L; ++r) {
    const int r1 = (r + 1) % L;
    if (sp(2 * r) * sp(2 * r + 1) < 0) ++unsat;       // rung bond
    if (sp(2 * r + 1) * sp(2 * r1 + 1) < 0) ++unsat;  // bottom bond
    if (sp(2 * r) * sp(2 * r1) > 0) ++unsat;          // top bond, antiferromagnetic
    if (sp(2 * r) < 0) ++unsat;                       // top field
  }
  return unsat;
}

Eigen::VectorXd random_vector(std::size_t n, std::uint64_t seed) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  CounterRng rng(seed);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 2.0 * rng.uniform() - 1.0;
  return v;
}

} // namespace

TEST_SUITE("models") {
  TEST_CASE("chain: Neel ground states at Gamma=0") {
    const auto even = dense_spectrum(build_chain(ChainParams{4, 1.0, 0.0, 0.0}, BasisChoice::full()));
    CHECK(even.energies[0] == doctest::Approx(-4.0));
    CHECK(even.energies[1] == doctest::Approx(-4.0));
    CHECK(even.energies[2] > -4.0 + 1e-9);

    // odd L: 2L degenerate ground states with energy -J(L-1) + J
    const auto odd = dense_spectrum(build_chain(ChainParams{5, 1.0, 0.0, 0.0}, BasisChoice::full()));
    for (int i = 0; i < 10; ++i) CHECK(odd.energies[static_cast<std::size_t>(i)] == doctest::Approx(-3.0));
    CHECK(odd.energies[10] > -3.0 + 1e-9);
  }

  TEST_CASE("chain: momentum projection rejects staggered field") {
    CHECK_THROWS_AS((void)build_chain(ChainParams{6, 1.0, 0.2, 0.5}, BasisChoice::momentum(0)),
                    UsageError);
  }

  TEST_CASE("chain: spectrum invariant under h -> -h") {
    for (const int L : {5, 8}) {
      const auto plus =
          dense_spectrum(build_chain(ChainParams{L, 1.0, 0.23, 0.37}, BasisChoice::full()), false);
      const auto minus =
          dense_spectrum(build_chain(ChainParams{L, 1.0, -0.23, 0.37}, BasisChoice::full()), false);
      for (std::size_t i = 0; i < plus.energies.size(); ++i)
        CHECK(plus.energies[i] == doctest::Approx(minus.energies[i]).epsilon(1e-10));
    }
  }

  TEST_CASE("chain at h=0 commutes with global spin flip") {
    const SparseHamiltonian H = build_chain(ChainParams{6, 1.0, 0.0, 0.8}, BasisChoice::full());
    const Eigen::VectorXd v = random_vector(H.dimension, 3);
    Eigen::VectorXd Pv(v.size()), HPv(v.size()), PHv(v.size());
    for (std::uint32_t s = 0; s < H.dimension; ++s) Pv[flip_all(s, 6)] = v[s];
    HPv = H.apply(Pv);
    const Eigen::VectorXd Hv = H.apply(v);
    for (std::uint32_t s = 0; s < H.dimension; ++s) PHv[flip_all(s, 6)] = Hv[s];
    CHECK((HPv - PHv).norm() <= 1e-12 * (1.0 + Hv.norm()));
  }

  TEST_CASE("ladder commutes with one-rung translation (full basis)") {
    for (const int L : {4, 6, 8}) {
      const SparseHamiltonian H =
          build_ladder(LadderParams{L, 3.0, 1.0, 0.9}, BasisChoice::full());
      const Eigen::VectorXd v = random_vector(H.dimension, 17);
      Eigen::VectorXd Tv(v.size()), THv(v.size());
      const Eigen::VectorXd Hv = H.apply(v);
      for (std::uint32_t s = 0; s < H.dimension; ++s) {
        const std::uint32_t t = translate(s, Geometry::ladder, L, 1);
        Tv[t] = v[s];
        THv[t] = Hv[s];
      }
      const Eigen::VectorXd HTv = H.apply(Tv);
      CHECK((HTv - THv).norm() <= 1e-12 * (1.0 + Hv.norm()));
    }
  }

  TEST_CASE("ladder at Gamma=0 is diagonal") {
    const SparseHamiltonian H = build_ladder(LadderParams{4, 8.0, 1.0, 0.0}, BasisChoice::full());
    CHECK(H.offdiag_scale == 0.0);
    const Eigen::VectorXd v = random_vector(H.dimension, 9);
    Eigen::VectorXd expected(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      expected[i] = H.diagonal[static_cast<std::size_t>(i)] * v[i];
    CHECK((H.apply(v) - expected).norm() == 0.0);
  }

  TEST_CASE("classical ground energy: transfer matrix equals exhaustive scan") {
    // spot examples
    for (const int L : {4, 5}) {
      const LadderParams p{L, 8.0, 1.0, 0.0};
      double emin = 1e300;
      for (std::uint32_t s = 0; s < (1u << (2 * L)); ++s)
        emin = std::min(emin, ladder_classical_energy(s, p));
      CHECK(classical_ground_energy(p).energy == doctest::Approx(emin).epsilon(1e-12));
    }
    // grid of couplings, both parities, L <= 6
    for (const int L : {3, 4, 5, 6}) {
      for (const double K : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (const double U : {0.25, 0.5, 1.0, 2.0, 4.0}) {
          const LadderParams p{L, K, U, 0.0};
          double emin = 1e300;
          double count = 0;
          for (std::uint32_t s = 0; s < (1u << (2 * L)); ++s) {
            const double e = ladder_classical_energy(s, p);
            if (e < emin - 1e-9) {
              emin = e;
              count = 1;
            } else if (std::abs(e - emin) <= 1e-9) {
              ++count;
            }
          }
          const auto res = classical_ground_energy(p);
          CHECK(res.energy == doctest::Approx(emin).epsilon(1e-12));
          CHECK(res.degeneracy == doctest::Approx(count));
        }
      }
    }
  }

  TEST_CASE("classical minimizer cycle reproduces the ground energy") {
    const LadderParams p{7, 3.0, 1.0, 0.0};
    const auto res = classical_ground_energy(p);
    std::uint32_t bits = 0;
    for (int r = 0; r < p.L; ++r) {
      if (res.optimal_cycle[static_cast<std::size_t>(r)] & 1) bits |= 1u << (2 * r);
      if (res.optimal_cycle[static_cast<std::size_t>(r)] & 2) bits |= 1u << (2 * r + 1);
    }
    CHECK(ladder_classical_energy(bits, p) == doctest::Approx(res.energy).epsilon(1e-12));
  }

  TEST_CASE("classical energy is extensive for the staggered minimizer") {
    const auto e4 = classical_ground_energy(LadderParams{4, 8.0, 1.0, 0.0}).energy;
    const auto e8 = classical_ground_energy(LadderParams{8, 8.0, 1.0, 0.0}).energy;
    CHECK(e8 == doctest::Approx(2.0 * e4).epsilon(1e-12));
  }

  TEST_CASE("gauge signature: dimer correspondence of the frustrated ladder") {
    // (a) exactly one K-term per square frustrated in every classical ground
    //     state at U=0 and the ground energy is -2KL;
    // (c) the U=0 ground degeneracy equals the dimer covering count.
    for (const int L : {3, 4, 5, 6}) {
      const double K = 1.0;
      double emin = 1e300;
      std::vector<std::uint32_t> ground;
      for (std::uint32_t s = 0; s < (1u << (2 * L)); ++s) {
        const double e = oracle_ladder_energy(s, L, K, 0.0);
        if (e < emin - 1e-9) {
          emin = e;
          ground.assign(1, s);
        } else if (std::abs(e - emin) <= 1e-9) {
          ground.push_back(s);
        }
      }
      CHECK(emin == doctest::Approx(-2.0 * K * L));
      for (const auto s : ground) CHECK(oracle_unsatisfied_k_terms(s, L) == L);
      CHECK(ground.size() == enumerate_coverings(L).size());
    }

    // (b) at U > 0 the two ground states are staggered: bottom row all down,
    //     Neel top row
    for (const int L : {4, 6}) {
      const LadderParams p{L, 8.0, 1.0, 0.0};
      double emin = 1e300;
      std::vector<std::uint32_t> ground;
      for (std::uint32_t s = 0; s < (1u << (2 * L)); ++s) {
        const double e = ladder_classical_energy(s, p);
        if (e < emin - 1e-9) {
          emin = e;
          ground.assign(1, s);
        } else if (std::abs(e - emin) <= 1e-9) {
          ground.push_back(s);
        }
      }
      REQUIRE(ground.size() == 2);
      for (const auto s : ground) {
        for (int r = 0; r < L; ++r) CHECK(spin_at(s, 2 * r + 1) == -1);
        for (int r = 0; r < L; ++r) CHECK(spin_at(s, 2 * r) == -spin_at(s, 2 * ((r + 1) % L)));
      }
    }
  }

  TEST_CASE("ladder k=0 block: dimension and symmetry at L=12") {
    const LadderSectorStructure st = build_ladder_sector_structure(12, 0);
    CHECK(st.sector.dimension() == 1398500); // Burnside count over 2^24 states
    const SparseHamiltonian H = assemble_ladder(st, LadderParams{12, 5.0, 1.0, 1.8});
    const Eigen::VectorXd u = random_vector(H.dimension, 1), v = random_vector(H.dimension, 2);
    const double asym = std::abs(u.dot(H.apply(v)) - H.apply(u).dot(v));
    CHECK(asym <= 1e-12 * (1.0 + H.apply(u).norm() * v.norm()));
  }

  TEST_CASE("staggered magnetization") {
    const int L = 4;
    std::vector<double> neel(16, 0.0);
    neel[0b0101] = 1.0; // site 0 up, site 1 down, ...
    CHECK(staggered_magnetization(neel, L) == doctest::Approx(1.0));

    std::vector<double> polarized(16, 0.0);
    polarized[0b1111] = 1.0;
    CHECK(staggered_magnetization(polarized, L) == doctest::Approx(0.0));

    std::vector<double> unnormalized(16, 0.1);
    CHECK_THROWS_AS((void)staggered_magnetization(unnormalized, L), UsageError);

    // ED ground states at h = +/-0.1 carry opposite staggered moments
    SpectrumResult up = dense_spectrum(build_chain(ChainParams{8, 1.0, 0.1, 0.5}, BasisChoice::full()));
    SpectrumResult dn = dense_spectrum(build_chain(ChainParams{8, 1.0, -0.1, 0.5}, BasisChoice::full()));
    const Eigen::VectorXd vu = up.vectors->col(0), vd = dn.vectors->col(0);
    const double mu = staggered_magnetization({vu.data(), static_cast<std::size_t>(vu.size())}, 8);
    const double md = staggered_magnetization({vd.data(), static_cast<std::size_t>(vd.size())}, 8);
    CHECK(mu == doctest::Approx(-md).epsilon(1e-8));
    CHECK(std::abs(mu) > 0.5);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)build_chain(ChainParams{1, 1, 0, 0}, BasisChoice::full()), UsageError);
    CHECK_THROWS_AS((void)build_ladder(LadderParams{4, -1.0, 1.0, 0.0}, BasisChoice::full()),
                    UsageError);
    CHECK_THROWS_AS((void)build_ladder(LadderParams{13, 5.0, 1.0, 0.0}, BasisChoice::full()),
                    CapacityError);
    CHECK_THROWS_AS((void)classical_ground_energy(LadderParams{4, 1.0, 1.0, 0.5}), UsageError);
  }
}
