#include "varinf/spearman.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <string>

#include "varinf/error.hpp"

namespace varinf {
namespace {

constexpr std::size_t kMaxPermutationN = 10;

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    da += (a[i] - ma) * (a[i] - ma);
    db += (b[i] - mb) * (b[i] - mb);
  }
  if (da == 0.0 || db == 0.0) throw UsageError("spearman: zero variance in an input");
  return std::clamp(num / std::sqrt(da * db), -1.0, 1.0);
}

double t_approx_p(double rho, std::size_t n) {
  if (std::abs(rho) >= 1.0 - 1e-15) return 0.0;
  const double dof = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(dof / ((1.0 - rho) * (1.0 + rho)));
  boost::math::students_t_distribution<double> dist(dof);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double permutation_p(const std::vector<double>& rx, std::vector<double> ry, double rho) {
  std::sort(ry.begin(), ry.end());
  std::size_t extreme = 0, total = 0;
  const double threshold = std::abs(rho) - 1e-12;
  do {
    ++total;
    if (std::abs(pearson(rx, ry)) >= threshold) ++extreme;
  } while (std::next_permutation(ry.begin(), ry.end()));
  // Tied ranks: every distinct arrangement of the multiset is equally likely
  // under random relabelling, so counting distinct arrangements is exact.
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys, PValueMethod method) {
  if (xs.size() != ys.size()) {
    throw UsageError("spearman: length mismatch (" + std::to_string(xs.size()) + " vs " +
                     std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 3) throw UsageError("spearman: need at least 3 pairs");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) throw UsageError("spearman: NaN input");
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  SpearmanResult r;
  r.rho = pearson(rx, ry);
  if (method == PValueMethod::Permutation) {
    if (xs.size() > kMaxPermutationN) throw UsageError("spearman: exact permutation p supports n <= 10");
    r.p = permutation_p(rx, ry, r.rho);
  } else {
    r.p = t_approx_p(r.rho, xs.size());
  }
  return r;
}

}  // namespace varinf
