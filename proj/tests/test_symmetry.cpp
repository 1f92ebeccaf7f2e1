#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "circmem/enumerate.hpp"
#include "circmem/prng.hpp"
#include "circmem/symmetry.hpp"

using namespace circmem;

namespace {

GeneratorRow random_row(std::mt19937_64& gen, int n, int lo, int hi) {
  std::vector<std::int32_t> w(static_cast<std::size_t>(n), 0);
  for (int k = 1; k < n; ++k)
    w[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(rng::uniform_int(gen, lo, hi));
  return GeneratorRow(w);
}

}  // namespace

TEST_CASE("rotate is a right cyclic shift", "[symmetry]") {
  CHECK(rotate(BipolarState::parse("++--"), 1) == BipolarState::parse("-++-"));
  const BipolarState s = BipolarState::parse("+-++-");
  CHECK(rotate(s, 0) == s);
  CHECK(rotate(rotate(s, 2), 5 - 2) == s);
  CHECK(rotate(s, -1) == rotate(s, 4));
  CHECK(rotate(s, 7) == rotate(s, 2));
}

TEST_CASE("complement flips every spin", "[symmetry]") {
  CHECK(complement(BipolarState::parse("++--")) == BipolarState::parse("--++"));
  const BipolarState s = BipolarState::parse("-+-++");
  CHECK(complement(complement(s)) == s);
  CHECK(complement(BipolarState::all_plus(6)) == BipolarState::all_minus(6));
}

TEST_CASE("canonical_rotation picks the minimum packed rotation", "[symmetry]") {
  CHECK(canonical_rotation(BipolarState::parse("-++-")) == BipolarState::parse("++--"));
  CHECK(canonical_rotation(BipolarState::all_plus(5)) == BipolarState::all_plus(5));
  CHECK(canonical_rotation(BipolarState::parse("+-+-")) == BipolarState::parse("+-+-"));
}

TEST_CASE("group_orbits partitions the 4x4 memory set", "[symmetry]") {
  const FixedPointSet set = enumerate_gray(build_circulant({0, 2, -5, 3})).set;
  REQUIRE(set.states == std::vector<std::uint64_t>{0, 3, 6, 9, 12});

  SECTION("rotation only: the shift family and the uniform state") {
    const OrbitPartition orbits = group_orbits(set, SymmetryGroup::RotationOnly);
    REQUIRE(orbits.size() == 2);
    CHECK(orbits.classes[0] == std::vector<std::uint64_t>{0});
    CHECK(orbits.classes[1] == std::vector<std::uint64_t>{3, 6, 9, 12});
  }

  SECTION("complement only: two pairs and a singleton") {
    const OrbitPartition orbits = group_orbits(set, SymmetryGroup::ComplementOnly);
    REQUIRE(orbits.size() == 3);
    CHECK(orbits.classes[0] == std::vector<std::uint64_t>{0});
    CHECK(orbits.classes[1] == std::vector<std::uint64_t>{3, 12});
    CHECK(orbits.classes[2] == std::vector<std::uint64_t>{6, 9});
  }

  SECTION("both generators merge everything but the uniform state") {
    const OrbitPartition orbits = group_orbits(set, SymmetryGroup::RotationAndComplement);
    REQUIRE(orbits.size() == 2);
  }

  SECTION("empty input") {
    CHECK(group_orbits(FixedPointSet{4, {}}, SymmetryGroup::RotationOnly).size() == 0);
  }
}

TEST_CASE("group_orbits rejects mixed sizes", "[symmetry]") {
  const std::vector<BipolarState> mixed = {BipolarState::all_plus(4), BipolarState::all_plus(5)};
  CHECK_THROWS_MATCHES(group_orbits(mixed, SymmetryGroup::RotationOnly), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == ErrorCode::MixedSizes; }));
}

TEST_CASE("unique_memory_count merges complement pairs", "[symmetry]") {
  CHECK(unique_memory_count(enumerate_gray(build_circulant({0, 2, -5, 3})).set) == 3);
  CHECK(unique_memory_count(enumerate_gray(build_circulant({0, -2, 3, 3, -2})).set) == 6);
  CHECK(unique_memory_count(enumerate_gray(build_circulant({0, -2, -1, 3, 3, 1, -2})).set) == 8);
  CHECK(unique_memory_count(FixedPointSet{4, {}}) == 0);
}

TEST_CASE("rotation acts as a group", "[symmetry][property]") {
  std::mt19937_64 gen(0x9077);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform_below(gen, 12));
    const BipolarState s(n, rng::uniform_below(gen, std::uint64_t{1} << n));
    const int a = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(n)));
    REQUIRE(rotate(s, a + b) == rotate(rotate(s, a), b));
  }
}

TEST_CASE("canonical_rotation is idempotent and orbit-constant", "[symmetry][property]") {
  std::mt19937_64 gen(0xCA20);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform_below(gen, 12));
    const BipolarState s(n, rng::uniform_below(gen, std::uint64_t{1} << n));
    const BipolarState canon = canonical_rotation(s);
    REQUIRE(canonical_rotation(canon) == canon);
    for (int k = 0; k < n; ++k) REQUIRE(canonical_rotation(rotate(s, k)) == canon);
    REQUIRE(canon.packed() <= s.packed());
  }
}

TEST_CASE("rotation classes on enumerated sets are full orbits", "[symmetry][property]") {
  std::mt19937_64 gen(0x0437);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform_below(gen, 12));
    const FixedPointSet set = enumerate_gray(CirculantMatrix(random_row(gen, n, -10, 10))).set;
    const OrbitPartition orbits = group_orbits(set, SymmetryGroup::RotationOnly);

    std::size_t covered = 0;
    for (const auto& cls : orbits.classes) {
      REQUIRE(n % static_cast<int>(cls.size()) == 0);  // class sizes divide n
      for (std::uint64_t s : cls)
        for (int k = 1; k < n; ++k) {
          const std::uint64_t r = detail::rotate_packed(s, k, n);
          REQUIRE(std::binary_search(cls.begin(), cls.end(), r));
        }
      covered += cls.size();
    }
    REQUIRE(covered == set.size());
  }
}

TEST_CASE("unique count equals set size minus contained complement pairs", "[symmetry][property]") {
  std::mt19937_64 gen(0x5109);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform_below(gen, 12));
    const FixedPointSet set = enumerate_gray(CirculantMatrix(random_row(gen, n, -10, 10))).set;
    std::uint64_t pairs = 0;
    for (std::uint64_t a : set.states)
      for (std::uint64_t b : set.states)
        if (a < b && detail::complement_packed(a, n) == b) ++pairs;
    REQUIRE(unique_memory_count(set) == set.size() - pairs);
    REQUIRE(unique_memory_count(set) ==
            group_orbits(set, SymmetryGroup::ComplementOnly).size());
  }
}
