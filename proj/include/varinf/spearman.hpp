#pragma once

#include <span>
#include <vector>

namespace varinf {

enum class PValueMethod {
  TApprox,      // Student t with n - 2 degrees of freedom
  Permutation,  // exact, all n! orderings; n <= 10
};

struct SpearmanResult {
  double rho = 0.0;
  double p = 1.0;
};

// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks with a two-sided p-value.
// Throws UsageError on length mismatch, n < 3, zero variance, or
// a permutation request with n > 10.
SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys,
                        PValueMethod method = PValueMethod::TApprox);

}  // namespace varinf
