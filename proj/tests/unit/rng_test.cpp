#include "doctest.h"
#include "varinf/rng.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using varinf::Rng;

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(varinf::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(varinf::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(varinf::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("mt19937_64 engine matches the standard's 10000th value") {
  Rng rng(5489u);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  CHECK(x == 9981545732273789042ULL);
}

TEST_CASE("streams are deterministic and independent") {
  auto a = Rng::derive(42, "ynqf/select");
  auto b = Rng::derive(42, "ynqf/select");
  auto c = Rng::derive(42, "ynqf/present");
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
}

TEST_CASE("below stays in range and unit in [0,1)") {
  Rng rng(7);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) {
    const auto v = rng.below(6);
    REQUIRE(v < 6);
    ++counts[v];
    const double u = rng.unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  for (int n : counts) CHECK(std::abs(n - 10000) < 500);
}

TEST_CASE("shuffle is a permutation") {
  Rng rng(1);
  std::vector<int> v(20);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(std::span<int>(v));
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(20);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(sorted == expected);
  CHECK(v != expected);
}
