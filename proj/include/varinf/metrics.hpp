#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <set>
#include <vector>

namespace varinf {

struct BinaryConfusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  // 2tp / (2tp + fp + fn); 0 when the denominator is 0.
  double f1() const;
  void add(bool gold, bool pred);
  bool operator==(const BinaryConfusion&) const = default;
};

// Positive class is "predominant" / "Sí". Throws UsageError on length mismatch.
BinaryConfusion confusion(const std::vector<bool>& gold, const std::vector<bool>& pred);
double f1_binary(const std::vector<bool>& gold, const std::vector<bool>& pred);

// Jaccard from set sizes s = |A|, t = |B| and overlap x = |A ∩ B|.
double jaccard_from_counts(std::size_t s, std::size_t t, std::size_t x);

// E[|A ∩ B|] = s t / N under the hypergeometric null; 0 <= s, t <= N.
double expected_intersection(std::size_t n, std::size_t s, std::size_t t);

// First-order approximation st / (N(s + t) - st) of E[J]. Not the exact
// expectation; see exact_expected_jaccard_oracle.
double expected_jaccard(std::size_t n, std::size_t s, std::size_t t);

// (J - E[J]) / (1 - E[J]) without clipping.
double adjusted_jaccard_unclipped_from_counts(std::size_t n, std::size_t s, std::size_t t, std::size_t x);
// Clipped to [0, 1]. Returns 1 when 1 - E[J] < 1e-12 (only s = t = N).
double adjusted_jaccard_from_counts(std::size_t n, std::size_t s, std::size_t t, std::size_t x);

inline constexpr std::size_t kOracleMaxUniverse = 12;

// Exact E[J] and E[X] by enumerating all C(N,s) C(N,t) subset pairs.
// Test instrument; throws UsageError when N > 12. The intersection oracle
// also accepts empty sets.
double exact_expected_jaccard_oracle(std::size_t n, std::size_t s, std::size_t t);
double exact_expected_intersection_oracle(std::size_t n, std::size_t s, std::size_t t);

template <class T>
std::size_t intersection_size(const std::set<T>& a, const std::set<T>& b) {
  std::size_t x = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++x, ++ia, ++ib;
    }
  }
  return x;
}

// |A ∩ B| / |A ∪ B|; 1 when both are empty.
template <class T>
double jaccard(const std::set<T>& a, const std::set<T>& b) {
  return jaccard_from_counts(a.size(), b.size(), intersection_size(a, b));
}

// Chance-corrected Jaccard over an N-element universe, clipped at 0.
// Throws UsageError for an empty set or N < max(|A|, |B|).
template <class T>
double adjusted_jaccard(const std::set<T>& a, const std::set<T>& b, std::size_t n) {
  return adjusted_jaccard_from_counts(n, a.size(), b.size(), intersection_size(a, b));
}

template <class T>
double adjusted_jaccard_unclipped(const std::set<T>& a, const std::set<T>& b, std::size_t n) {
  return adjusted_jaccard_unclipped_from_counts(n, a.size(), b.size(), intersection_size(a, b));
}

}  // namespace varinf
