#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "suds/error.hpp"

namespace suds {

// Mann-Whitney AUC: P(score_pos > score_neg) + 0.5 * P(tie), via average ranks.
// Rank sums are half-integers, so the result is exact for any realistic n.
inline double auc(std::span<const double> scores, std::span<const int> labels) {
  detail::require(scores.size() == labels.size(), "auc: |scores| != |labels|");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double pos = 0.0, neg = 0.0, rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // 1-based ranks i+1 .. j share their mean.
    const double mean_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) rank_sum += mean_rank;
    }
    i = j;
  }
  for (int l : labels) {
    detail::require(l == 0 || l == 1, "auc: labels must be 0 or 1");
    (l ? pos : neg) += 1.0;
  }
  detail::require(pos > 0.0 && neg > 0.0, "auc: both classes must be present");
  const double u = rank_sum - pos * (pos + 1.0) / 2.0;
  return u / (pos * neg);
}

}  // namespace suds
