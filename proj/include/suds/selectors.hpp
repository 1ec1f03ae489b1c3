#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "suds/error.hpp"
#include "suds/learners/kernel.hpp"
#include "suds/learners/logistic.hpp"
#include "suds/learners/one_class_svm.hpp"
#include "suds/sample.hpp"

// Retraining-set selection after a drift fires. Selectors only look at
// features and stream indices; labels are bought by the caller afterwards.

namespace suds {

struct SelectionResult {
  std::vector<Sample> selected;
  std::size_t requested_annotations = 0;
  bool fallback_used = false;
};

enum class SelectorKind { baseline_d3, suds_d3, baseline_ocdd, suds_ocdd };

struct SelectorConfig {
  SelectorKind kind = SelectorKind::baseline_d3;
  std::uint64_t seed = 0;
};

inline bool is_d3_selector(SelectorKind k) { return k == SelectorKind::baseline_d3 || k == SelectorKind::suds_d3; }
inline bool is_suds_selector(SelectorKind k) { return k == SelectorKind::suds_d3 || k == SelectorKind::suds_ocdd; }

namespace detail {

inline SelectionResult make_selection(std::vector<Sample> selected, bool fallback) {
  SelectionResult r;
  r.requested_annotations = selected.size();
  r.selected = std::move(selected);
  r.fallback_used = fallback;
  return r;
}

inline std::vector<Sample> newest(std::span<const Sample> snapshot, std::size_t n) {
  return {snapshot.end() - static_cast<std::ptrdiff_t>(n), snapshot.end()};
}

inline bool all_identical(std::span<const Vector> X) {
  for (const auto& x : X) {
    if (x != X.front()) return false;
  }
  return true;
}

// k of n indices, uniform without replacement, in ascending order.
inline std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace detail

inline SelectionResult select_baseline_d3(std::span<const Sample> snapshot, std::size_t w, double rho) {
  const std::size_t n_new = round_half_up(static_cast<double>(w) * rho);
  const std::size_t expected = w + n_new;
  detail::require(snapshot.size() >= expected,
                  "select_baseline_d3: snapshot holds " + std::to_string(snapshot.size()) + " samples, need " +
                      std::to_string(expected));
  detail::require(snapshot.size() == expected, "select_baseline_d3: snapshot size must equal w + round(w * rho)");
  return detail::make_selection(detail::newest(snapshot, n_new), false);
}

// Train a logistic discriminator on a seeded subsample of the old block
// (label 0) against the new block (label 1), score the whole snapshot and keep
// the round(w * rho) samples most confidently new. Ties prefer newer samples.
inline SelectionResult select_suds_d3(std::span<const Sample> snapshot, std::size_t w, double rho, std::uint64_t seed,
                                      const LogisticConfig& logistic = {}) {
  const std::size_t n_new = round_half_up(static_cast<double>(w) * rho);
  const std::size_t expected = w + n_new;
  detail::require(snapshot.size() == expected, "select_suds_d3: snapshot holds " + std::to_string(snapshot.size()) +
                                                   " samples, need " + std::to_string(expected));
  detail::require(n_new >= 2, "select_suds_d3: round(w * rho) must be at least 2");

  std::vector<Vector> X;
  std::vector<int> y;
  for (std::size_t i : detail::subsample_indices(w, n_new, seed)) {
    X.push_back(snapshot[i].feature_vector());
    y.push_back(0);
  }
  for (std::size_t i = w; i < snapshot.size(); ++i) {
    X.push_back(snapshot[i].feature_vector());
    y.push_back(1);
  }
  if (detail::all_identical(X)) return detail::make_selection(detail::newest(snapshot, n_new), true);

  const LogisticModel clf = logistic_fit(X, y, logistic);
  std::vector<double> score(snapshot.size());
  for (std::size_t i = 0; i < snapshot.size(); ++i) score[i] = clf.decision(snapshot[i].features());
  std::vector<std::size_t> order(snapshot.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return snapshot[a].index() > snapshot[b].index();
  });
  std::vector<Sample> selected;
  selected.reserve(n_new);
  for (std::size_t k = 0; k < n_new; ++k) selected.push_back(snapshot[order[k]]);
  return detail::make_selection(std::move(selected), false);
}

inline SelectionResult select_baseline_ocdd(std::span<const Sample> snapshot, std::size_t w, double rho) {
  detail::require(snapshot.size() >= w, "select_baseline_ocdd: snapshot holds " + std::to_string(snapshot.size()) +
                                             " samples, need " + std::to_string(w));
  detail::require(snapshot.size() == w, "select_baseline_ocdd: snapshot size must equal w");
  const std::size_t n = std::max<std::size_t>(round_half_up(static_cast<double>(w) * rho), 1);
  return detail::make_selection(detail::newest(snapshot, std::min(n, w)), false);
}

namespace detail {

// Flagged samples the new model accepts; all flagged samples if none are accepted.
inline SelectionResult intersect_or_fallback(std::span<const Sample> snapshot, const std::vector<bool>& flags,
                                             const std::vector<bool>& accepted) {
  std::vector<Sample> selected;
  std::vector<Sample> outliers;
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    if (!flags[i]) continue;
    outliers.push_back(snapshot[i]);
    if (accepted[i]) selected.push_back(snapshot[i]);
  }
  if (selected.empty()) return make_selection(std::move(outliers), true);
  return make_selection(std::move(selected), false);
}

}  // namespace detail

// Fit a fresh one-class SVM on the flagged outliers, then keep the outliers it
// considers in-distribution.
inline SelectionResult select_suds_ocdd(std::span<const Sample> snapshot, const std::vector<bool>& outlier_flags,
                                        double nu, std::optional<KernelSpec> kernel = std::nullopt,
                                        const OneClassSolverConfig& solver = {}) {
  detail::require(snapshot.size() == outlier_flags.size(), "select_suds_ocdd: |snapshot| != |outlier_flags|");
  std::vector<Vector> outliers;
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    if (outlier_flags[i]) outliers.push_back(snapshot[i].feature_vector());
  }
  detail::require(outliers.size() >= 2, "select_suds_ocdd: need at least two flagged outliers, got " +
                                             std::to_string(outliers.size()));
  const OneClassSvmModel clf = ocsvm_fit(outliers, nu, kernel, solver);
  std::vector<bool> accepted(snapshot.size());
  for (std::size_t i = 0; i < snapshot.size(); ++i) accepted[i] = clf.predict(snapshot[i].features()) > 0;
  return detail::intersect_or_fallback(snapshot, outlier_flags, accepted);
}

}  // namespace suds
