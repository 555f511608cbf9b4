#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "castlab/rng.hpp"
#include "test_util.hpp"

using castlab::SplitMix64;

TEST_CASE("reference outputs") {
  const std::array<std::array<std::uint64_t, 3>, 3> expected{{
      {0xE220A8397B1DCDAFull, 0x6E789E6AA1B965F4ull, 0x06C45D188009454Full},
      {0x910A2DEC89025CC1ull, 0xBEEB8DA1658EEC67ull, 0xF893A2EEFB32555Eull},
      {0x975835DE1C9756CEull, 0xBFC846100BFC1E42ull, 0x987BBCBFDD7E532Full},
  }};
  for (std::uint64_t seed = 0; seed < expected.size(); ++seed) {
    SplitMix64 rng(seed);
    for (std::uint64_t want : expected[seed]) CHECK(rng.next_u64() == want);
  }
}

TEST_CASE("derived streams") {
  static_assert(castlab::derive_stream(7, 3).state() == 0x28CEB6E1EDDAD0C2ull);
  CHECK(castlab::derive_stream(1, 0) == castlab::derive_stream(1, 0));
  CHECK(castlab::derive_stream(1, 0) != castlab::derive_stream(1, 1));
  CHECK(castlab::derive_stream(1, 5) != castlab::derive_stream(2, 5));
}

TEST_CASE("below stays in range and rejects zero") {
  SplitMix64 rng(3);
  CHECK_THROWS_KIND(rng.below(0), castlab::ErrorKind::ZeroBound);
  for (int i = 0; i < 100; ++i) CHECK(rng.below(1) == 0);
  for (int i = 0; i < 10000; ++i) CHECK(rng.below(7) < 7);
  const std::uint64_t big = (std::uint64_t{1} << 63) + 1;
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(big) < big);
}

TEST_CASE("below is close to uniform") {
  constexpr int kBins = 10;
  constexpr int kDraws = 200000;
  SplitMix64 rng(4);
  std::array<int, kBins> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[rng.below(kBins)];
  const double expected = double{kDraws} / kBins;
  const double sd = std::sqrt(expected * (1.0 - 1.0 / kBins));
  for (int c : counts) CHECK(std::abs(c - expected) < 5 * sd);
}

TEST_CASE("bound 64 over 10^5 draws") {
  SplitMix64 rng(6);
  std::array<int, 64> counts{};
  for (int i = 0; i < 100000; ++i) ++counts[rng.below(64)];
  const double expected = 100000.0 / 64;
  const double sd = std::sqrt(expected * (1.0 - 1.0 / 64));
  for (int c : counts) CHECK(std::abs(c - expected) < 5 * sd);
  for (int i = 0; i < 1000; ++i) CHECK((rng.below(std::uint64_t{1} << 32) >> 32) == 0);
}

TEST_CASE("usable as a standard URBG") {
  SplitMix64 a(9);
  SplitMix64 b(9);
  std::uniform_int_distribution<int> dist(0, 99);
  for (int i = 0; i < 100; ++i) CHECK(dist(a) == dist(b));
  CHECK(a == b);
}
