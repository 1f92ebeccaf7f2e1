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

TEST_CASE("enumerate_naive finds the exact 4x4 memory sets", "[enumeration]") {
  const auto class1 = enumerate_naive(build_circulant({0, 2, -5, 3}));
  CHECK(class1.set.states == std::vector<std::uint64_t>{0, 3, 6, 9, 12});
  CHECK(class1.stats.states_examined == 16);
  CHECK(class1.stats.fixed_found == 5);

  const auto class2 = enumerate_naive(build_circulant({0, 2, -5, 4}));
  CHECK(class2.set.states == std::vector<std::uint64_t>{0, 3, 6, 9, 12, 15});

  // zero 2x2 matrix: every field is zero, only all-plus maps to itself
  const auto zero = enumerate_naive(build_circulant({0, 0}));
  CHECK(zero.set.states == std::vector<std::uint64_t>{0});
}

TEST_CASE("enumerate_gray matches recorded counts", "[enumeration]") {
  CHECK(enumerate_gray(build_circulant({0, -2, 3, 3, -2})).set.size() == 7);
  CHECK(enumerate_gray(build_circulant({0, -2, -1, 4, 5, 1, -2, -4})).set.size() == 16);
}

TEST_CASE("gray scan equals the naive reference", "[enumeration][property]") {
  std::mt19937_64 gen(0x6E4A);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform_below(gen, 12));
    const CirculantMatrix m(random_row(gen, n, -12, 12));
    const auto naive = enumerate_naive(m);
    const auto gray = enumerate_gray(m);
    REQUIRE(naive.set == gray.set);
    REQUIRE(naive.stats.states_examined == gray.stats.states_examined);
  }
}

TEST_CASE("partitioned scan is partition-count invariant", "[enumeration]") {
  SECTION("degenerate partition equals the single scan") {
    const CirculantMatrix m = build_circulant({0, -2, -1, 4, 4, 1, -2, -4});
    CHECK(enumerate_partitioned(m, 1).set == enumerate_gray(m).set);
  }

  SECTION("10x10 reference matrix") {
    const CirculantMatrix m = build_circulant({0, -4, -1, -2, 3, 11, 2, -1, -3, -4});
    const auto single = enumerate_partitioned(m, 1);
    const auto eight = enumerate_partitioned(m, 8);
    CHECK(single.set == eight.set);
    CHECK(eight.set.size() == 34);
    CHECK(eight.stats.partitions == 8);
    CHECK(eight.stats.states_examined == 1024);
  }

  SECTION("non-power-of-two partitions") {
    const CirculantMatrix m =
        build_circulant({0, -5, -4, -1, -2, 3, 17, 2, -1, -3, 4, -5});
    CHECK(enumerate_partitioned(m, 3).set == enumerate_partitioned(m, 1).set);
  }

  SECTION("more partitions than states") {
    const CirculantMatrix m = build_circulant({0});
    CHECK(enumerate_partitioned(m, 8).set.states == std::vector<std::uint64_t>{0});
  }
}

TEST_CASE("partitioned results are deterministic across runs and counts", "[enumeration][property]") {
  std::mt19937_64 gen(0xDE7E);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform_below(gen, 12));
    const CirculantMatrix m(random_row(gen, n, -9, 9));
    const auto reference = enumerate_gray(m);
    for (int partitions : {2, 3, 5, 8}) {
      REQUIRE(enumerate_partitioned(m, partitions).set == reference.set);
      REQUIRE(enumerate_partitioned(m, partitions).set == reference.set);  // second run, same bytes
    }
  }
}

TEST_CASE("fixed-point sets are closed under rotation", "[enumeration][property]") {
  std::mt19937_64 gen(0x0537);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform_below(gen, 12));
    const auto result = enumerate_gray(CirculantMatrix(random_row(gen, n, -15, 15)));
    REQUIRE(result.stats.fixed_found == result.set.size());
    REQUIRE(result.set.size() <= (std::uint64_t{1} << n));
    for (std::uint64_t s : result.set.states)
      for (int k = 1; k < n; ++k) REQUIRE(result.set.contains(detail::rotate_packed(s, k, n)));
  }
}

TEST_CASE("checkpoint verification path runs clean on a larger scan", "[enumeration]") {
  std::mt19937_64 gen(0x17AB);
  const CirculantMatrix m(random_row(gen, 17, -40, 40));
  const auto gray = enumerate_gray(m);  // crosses two 2^16 checkpoints
  CHECK(gray.stats.states_examined == (std::uint64_t{1} << 17));
  CHECK(enumerate_partitioned(m, 4).set == gray.set);
}

TEST_CASE("size caps are enforced", "[enumeration]") {
  const CirculantMatrix big23(GeneratorRow(std::vector<std::int32_t>(23, 0)));
  CHECK_THROWS_MATCHES(enumerate_naive(big23), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == ErrorCode::SizeTooLarge; }));

  const CirculantMatrix big29(GeneratorRow(std::vector<std::int32_t>(29, 0)));
  CHECK_THROWS_MATCHES(enumerate_gray(big29), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == ErrorCode::SizeTooLarge; }));
  CHECK_THROWS_AS(enumerate_partitioned(big29, 4), Error);

  // the override flag lifts the gray cap (exercised at a small size)
  CHECK(enumerate_gray(build_circulant({0, 1, 2}), /*force_large=*/true).set.size() >= 1);

  CHECK_THROWS_MATCHES(enumerate_partitioned(build_circulant({0, 1}), 0), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == ErrorCode::InvalidArgument; }));
}
