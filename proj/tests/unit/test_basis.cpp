#include <doctest.h>

#include <numeric>
#include <set>

#include "qgap/basis.hpp"
#include "qgap/errors.hpp"
#include "qgap/util.hpp"

using namespace qgap;

namespace {

// Independent orbit count: Burnside over the cyclic group of L cell shifts,
// fixed points of shift j are states of period dividing gcd(j, L).
std::uint64_t burnside_orbit_count(int L, int cell_bits) {
  std::uint64_t total = 0;
  for (int j = 0; j < L; ++j) {
    const int d = std::gcd(j, L);
    total += std::uint64_t{1} << (cell_bits * d);
  }
  return total / static_cast<std::uint64_t>(L);
}

} // namespace

TEST_SUITE("spin_basis") {
  TEST_CASE("enumerate_basis small and capacity") {
    CHECK(enumerate_basis(1) == std::vector<std::uint32_t>{0, 1});
    const auto b3 = enumerate_basis(3);
    REQUIRE(b3.size() == 8);
    for (std::uint32_t s = 0; s < 8; ++s) CHECK(b3[s] == s);
    CHECK(enumerate_basis(24).size() == 16777216);
    CHECK_THROWS_AS(enumerate_basis(29), CapacityError);
  }

  TEST_CASE("translate examples") {
    CHECK(translate(0b0001, Geometry::chain, 4, 1) == 0b0010);
    CHECK(translate(0b010110, Geometry::ladder, 3, 3) == 0b010110); // full period
    CHECK(translate(0b01, Geometry::chain, 2, -1) == 0b10);
  }

  TEST_CASE("translate is a bijection; orbit sizes divide L") {
    const int L = 6;
    std::set<std::uint32_t> image;
    for (std::uint32_t s = 0; s < (1u << L); ++s) image.insert(translate(s, Geometry::chain, L, 1));
    CHECK(image.size() == (1u << L));
    for (std::uint32_t s = 0; s < (1u << L); ++s) {
      const OrbitInfo orb = canonicalize(s, Geometry::chain, L);
      CHECK(L % orb.period == 0);
      CHECK(translate(orb.representative, Geometry::chain, L, orb.shift) == s);
    }
  }

  TEST_CASE("parity flip and diagonal sign") {
    CHECK(flip_all(0b00, 2) == 0b11);
    CHECK(parity_sign(0b1) == -1);
    CHECK(parity_sign(0b0) == +1);
    CounterRng rng(42);
    for (int t = 0; t < 50; ++t) {
      const auto s = static_cast<std::uint32_t>(rng.next_u64() & 0xffffu);
      CHECK(flip_all(flip_all(s, 16), 16) == s);
    }
  }

  TEST_CASE("canonical representative is idempotent and minimal") {
    for (std::uint32_t s = 0; s < (1u << 12); ++s) {
      const OrbitInfo orb = canonicalize(s, Geometry::ladder, 6);
      CHECK(canonicalize(orb.representative, Geometry::ladder, 6).representative ==
            orb.representative);
      CHECK(orb.representative <= s);
    }
  }

  TEST_CASE("momentum sector: chain L=2 hand enumeration") {
    const MomentumSector sec = build_momentum_sector(Geometry::chain, 2, 0);
    CHECK(sec.dimension() == 3); // orbits {00}, {01,10}, {11}
    CHECK(sec.representatives == std::vector<std::uint32_t>{0b00, 0b01, 0b11});
  }

  TEST_CASE("momentum sector dimensions sum to 2^n") {
    for (const auto [g, L] : {std::pair{Geometry::chain, 4}, {Geometry::chain, 7},
                              {Geometry::chain, 16}, {Geometry::ladder, 5}}) {
      std::size_t total = 0;
      for (int k = 0; k < L; ++k) total += build_momentum_sector(g, L, k).dimension();
      CHECK(total == (std::size_t{1} << (cell_bits(g) * L)));
    }
  }

  TEST_CASE("k=0 dimension equals orbit count (brute force L<=6, Burnside L=12)") {
    for (int L = 2; L <= 6; ++L) {
      // brute-force orbit enumeration
      std::set<std::uint32_t> orbits;
      for (std::uint32_t s = 0; s < (1u << (2 * L)); ++s)
        orbits.insert(canonicalize(s, Geometry::ladder, L).representative);
      CHECK(build_momentum_sector(Geometry::ladder, L, 0).dimension() == orbits.size());
      CHECK(orbits.size() == burnside_orbit_count(L, 2));
    }
    CHECK(build_momentum_sector(Geometry::ladder, 12, 0).dimension() ==
          burnside_orbit_count(12, 2));
  }

  TEST_CASE("norms positive; excluded orbits have incompatible period") {
    const MomentumSector sec = build_momentum_sector(Geometry::chain, 6, 1);
    for (std::size_t i = 0; i < sec.dimension(); ++i) {
      CHECK(sec.norms[i] > 0);
      CHECK((sec.k_index * sec.periods[i]) % sec.L == 0);
    }
    // k=1 excludes every orbit with period < L
    for (std::size_t i = 0; i < sec.dimension(); ++i) CHECK(sec.periods[i] == 6);
  }

  TEST_CASE("index_of finds representatives") {
    const MomentumSector sec = build_momentum_sector(Geometry::chain, 8, 0);
    for (std::size_t i = 0; i < sec.dimension(); ++i)
      CHECK(sec.index_of(sec.representatives[i]) == static_cast<std::ptrdiff_t>(i));
    CHECK(sec.index_of(0xdeadbeef) == -1);
  }
}
