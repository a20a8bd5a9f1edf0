#include "varinf/metrics.hpp"

#include <bit>
#include <cstdint>
#include <string>

#include "varinf/error.hpp"

namespace varinf {
namespace {

constexpr double kDegenerate = 1e-12;

void check_sizes(std::size_t n, std::size_t s, std::size_t t) {
  if (s < 1 || t < 1 || s > n || t > n) {
    throw UsageError("set sizes must satisfy 1 <= s, t <= N (N=" + std::to_string(n) + ", s=" + std::to_string(s) +
                     ", t=" + std::to_string(t) + ")");
  }
}

// E[X] is defined for empty sets too.
void check_counts(std::size_t n, std::size_t s, std::size_t t) {
  if (n < 1 || s > n || t > n) {
    throw UsageError("set sizes must satisfy 0 <= s, t <= N, N >= 1 (N=" + std::to_string(n) +
                     ", s=" + std::to_string(s) + ", t=" + std::to_string(t) + ")");
  }
}

template <class F>
void for_each_subset_pair(std::size_t n, std::size_t s, std::size_t t, F&& f) {
  const std::uint32_t end = 1u << n;
  for (std::uint32_t a = 0; a < end; ++a) {
    if (static_cast<std::size_t>(std::popcount(a)) != s) continue;
    for (std::uint32_t b = 0; b < end; ++b) {
      if (static_cast<std::size_t>(std::popcount(b)) != t) continue;
      f(static_cast<std::size_t>(std::popcount(a & b)));
    }
  }
}

}  // namespace

double BinaryConfusion::f1() const {
  const auto denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

void BinaryConfusion::add(bool gold, bool pred) {
  if (gold && pred) {
    ++tp;
  } else if (!gold && pred) {
    ++fp;
  } else if (gold && !pred) {
    ++fn;
  } else {
    ++tn;
  }
}

BinaryConfusion confusion(const std::vector<bool>& gold, const std::vector<bool>& pred) {
  if (gold.size() != pred.size()) {
    throw UsageError("f1: gold has " + std::to_string(gold.size()) + " labels, prediction has " +
                     std::to_string(pred.size()));
  }
  BinaryConfusion c;
  for (std::size_t i = 0; i < gold.size(); ++i) c.add(gold[i], pred[i]);
  return c;
}

double f1_binary(const std::vector<bool>& gold, const std::vector<bool>& pred) { return confusion(gold, pred).f1(); }

double jaccard_from_counts(std::size_t s, std::size_t t, std::size_t x) {
  if (x > s || x > t) throw UsageError("jaccard: overlap exceeds a set size");
  const auto uni = s + t - x;
  return uni == 0 ? 1.0 : static_cast<double>(x) / static_cast<double>(uni);
}

double expected_intersection(std::size_t n, std::size_t s, std::size_t t) {
  check_counts(n, s, t);
  return static_cast<double>(s) * static_cast<double>(t) / static_cast<double>(n);
}

double expected_jaccard(std::size_t n, std::size_t s, std::size_t t) {
  check_sizes(n, s, t);
  const double st = static_cast<double>(s) * static_cast<double>(t);
  return st / (static_cast<double>(n) * static_cast<double>(s + t) - st);
}

double adjusted_jaccard_unclipped_from_counts(std::size_t n, std::size_t s, std::size_t t, std::size_t x) {
  const double ej = expected_jaccard(n, s, t);
  const double j = jaccard_from_counts(s, t, x);
  if (1.0 - ej < kDegenerate) return 1.0;
  return (j - ej) / (1.0 - ej);
}

double adjusted_jaccard_from_counts(std::size_t n, std::size_t s, std::size_t t, std::size_t x) {
  return std::max(0.0, adjusted_jaccard_unclipped_from_counts(n, s, t, x));
}

double exact_expected_jaccard_oracle(std::size_t n, std::size_t s, std::size_t t) {
  if (n > kOracleMaxUniverse) throw UsageError("enumeration oracle supports N <= 12");
  check_sizes(n, s, t);
  double sum = 0.0;
  std::size_t pairs = 0;
  for_each_subset_pair(n, s, t, [&](std::size_t x) {
    sum += static_cast<double>(x) / static_cast<double>(s + t - x);
    ++pairs;
  });
  return sum / static_cast<double>(pairs);
}

double exact_expected_intersection_oracle(std::size_t n, std::size_t s, std::size_t t) {
  if (n > kOracleMaxUniverse) throw UsageError("enumeration oracle supports N <= 12");
  check_counts(n, s, t);
  std::size_t total = 0;
  std::size_t pairs = 0;
  for_each_subset_pair(n, s, t, [&](std::size_t x) {
    total += x;
    ++pairs;
  });
  return static_cast<double>(total) / static_cast<double>(pairs);
}

}  // namespace varinf
