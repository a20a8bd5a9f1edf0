#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace varinf {

// 64-bit FNV-1a. Used for stream derivation and question ids.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t splitmix64(std::uint64_t x);

// Portable seeded generator.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard for a given 64-bit seed. Standard distributions are not portable,
// so every derived quantity is computed here:
//   below(n):  rejection sampling on the raw 64-bit output; draws x until
//              x < 2^64 - (2^64 mod n), returns x mod n.
//   unit():    (x >> 11) * 2^-53, a double in [0, 1).
//   shuffle(): Fisher-Yates from the last position down, j = below(i + 1).
// Independent streams come from derive(seed, tag):
//   splitmix64(seed ^ fnv1a64(tag)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derive(std::uint64_t seed, std::string_view tag) {
    return Rng(splitmix64(seed ^ fnv1a64(tag)));
  }

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n);
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace varinf
