#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qgap/errors.hpp"
#include "qgap/fermion.hpp"
#include "qgap/models.hpp"
#include "qgap/spectral.hpp"
#include "qgap/util.hpp"

using namespace qgap;

namespace {

// Combinatorial Pfaffian by recursive expansion along the first row;
// exponential, fine as an oracle up to 8x8.
double pfaffian_expansion(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  if (n == 0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j < n; ++j) {
    Eigen::MatrixXd minor(n - 2, n - 2);
    int ri = 0;
    for (int r = 1; r < n; ++r) {
      if (r == j) continue;
      int ci = 0;
      for (int c = 1; c < n; ++c) {
        if (c == j) continue;
        minor(ri, ci) = A(r, c);
        ++ci;
      }
      ++ri;
    }
    sum += ((j % 2) ? 1.0 : -1.0) * A(0, j) * pfaffian_expansion(minor);
  }
  return sum;
}

// The x-coupled chain of the free-fermion solution has the same spectrum as
// the z-coupled chain with the opposite coupling sign.
SpectrumResult chain_ed(double J_fermion_convention, double Gamma, int L) {
  return dense_spectrum(
      build_chain(ChainParams{L, -J_fermion_convention, 0.0, Gamma}, BasisChoice::full()), false);
}

} // namespace

TEST_SUITE("fermion") {
  TEST_CASE("dispersion values") {
    CHECK(dispersion(1.0, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(dispersion(1.0, 0.0, 1.234) == doctest::Approx(1.0));
    CHECK(dispersion(1.0, 0.5, M_PI) == doctest::Approx(1.5));
    CHECK(dispersion_domain_wall(1.0, 0.5, 0.0) == doctest::Approx(1.5));
  }

  TEST_CASE("sector momenta") {
    const auto plus = sector_momenta(2, +1);
    CHECK(plus[0] == doctest::Approx(M_PI / 2));
    CHECK(plus[1] == doctest::Approx(3 * M_PI / 2));
    const auto minus = sector_momenta(2, -1);
    CHECK(minus[0] == doctest::Approx(0.0));
    CHECK(minus[1] == doctest::Approx(M_PI));
    for (int L = 2; L <= 12; ++L) {
      const auto p = sector_momenta(L, +1), m = sector_momenta(L, -1);
      for (double kp : p)
        for (double km : m) CHECK(std::abs(kp - km) > 1e-9);
    }
  }

  TEST_CASE("Majorana form is exactly antisymmetric") {
    for (const int P : {+1, -1}) {
      const auto form = build_majorana_form(0.8, 0.3, 6, P);
      CHECK((form.h + form.h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  TEST_CASE("pfaffian: block form and random oracle") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
    A(0, 1) = 2.0; A(1, 0) = -2.0;
    A(2, 3) = -3.0; A(3, 2) = 3.0;
    CHECK(pfaffian(A) == doctest::Approx(-6.0).epsilon(1e-12));

    CounterRng rng(99);
    for (const int n : {4, 6, 8}) {
      Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          B(i, j) = 2.0 * rng.uniform() - 1.0;
          B(j, i) = -B(i, j);
        }
      const double exact = pfaffian_expansion(B);
      CHECK(pfaffian(B) == doctest::Approx(exact).epsilon(1e-9));
      CHECK(pfaffian(B) * pfaffian(B) == doctest::Approx(B.determinant()).epsilon(1e-8));
    }
  }

  TEST_CASE("pfaffian squared equals determinant on sector forms") {
    for (const int L : {3, 4, 5}) {
      for (const int P : {+1, -1}) {
        const auto form = build_majorana_form(0.7, 0.4, L, P);
        const double pf = pfaffian(form.h);
        CHECK(pf * pf == doctest::Approx(form.h.determinant()).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("vacuum parity at the exactly solvable points") {
    for (int L = 2; L <= 14; ++L) {
      // paramagnet: +1 in both sectors
      CHECK(vacuum_parity(0.0, 1.0, L, +1) == +1);
      CHECK(vacuum_parity(0.0, 1.0, L, -1) == +1);
      // ferromagnet: vacuum parity equals the sector parity
      CHECK(vacuum_parity(1.0, 0.0, L, +1) == +1);
      CHECK(vacuum_parity(1.0, 0.0, L, -1) == -1);
      // antiferromagnet: extra factor (-1)^L
      const int extra = (L % 2 == 0) ? +1 : -1;
      CHECK(vacuum_parity(-1.0, 0.0, L, +1) == +extra);
      CHECK(vacuum_parity(-1.0, 0.0, L, -1) == -extra);
    }
  }

  TEST_CASE("parity sign is ambiguous at criticality") {
    CHECK_THROWS_AS((void)vacuum_parity(1.0, 1.0, 6, -1), NumericalError);
  }

  TEST_CASE("two lowest levels match chain ED (both signs, three fields)") {
    for (int L = 4; L <= 8; ++L) {
      for (const double J : {1.0, -1.0}) {
        for (const double G : {0.2, 0.5, 0.9}) {
          const auto ed = chain_ed(J, G, L);
          const auto ff = many_body_spectrum(J, G, L);
          CHECK(ff.ground == doctest::Approx(ed.energies[0]).epsilon(1e-10));
          CHECK(ff.first_excited == doctest::Approx(ed.energies[1]).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("AFM odd chain: small-gap level pair matches ED closely") {
    const auto ed = chain_ed(-1.0, 0.1, 5);
    const auto ff = many_body_spectrum(-1.0, 0.1, 5);
    CHECK(std::abs(ff.ground - ed.energies[0]) <= 1e-10);
    CHECK(std::abs(ff.first_excited - ed.energies[1]) <= 1e-10);
    CHECK(ff.gap == doctest::Approx(ed.energies[1] - ed.energies[0]).epsilon(1e-8));
  }

  TEST_CASE("even-L splitting is super-polynomially small") {
    const auto ff8 = many_body_spectrum(1.0, 0.5, 8);
    const auto ff12 = many_body_spectrum(1.0, 0.5, 12);
    CHECK(ff12.gap < 1e-3);
    CHECK(ff8.gap / ff12.gap > 5.0);
  }

  TEST_CASE("vacuum energy is concave in Gamma") {
    for (const int P : {+1, -1}) {
      const double d = 1e-3;
      for (const double G : {0.3, 0.6, 0.9, 1.5}) {
        const double em = solve_sector(1.0, G - d, 8, P).vacuum_energy;
        const double e0 = solve_sector(1.0, G, 8, P).vacuum_energy;
        const double ep = solve_sector(1.0, G + d, 8, P).vacuum_energy;
        CHECK((ep - 2 * e0 + em) / (d * d) <= 1e-6);
      }
    }
  }
}
