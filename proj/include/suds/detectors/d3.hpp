#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "suds/detectors/auc.hpp"
#include "suds/detectors/drift_decision.hpp"
#include "suds/error.hpp"
#include "suds/learners/logistic.hpp"
#include "suds/sample.hpp"
#include "suds/window.hpp"

namespace suds {

struct D3Config {
  std::size_t w = 100;
  double rho = 0.1;
  double tau = 0.7;
  // Standardize features per window before fitting the discriminator.
  bool standardize = false;
  LogisticConfig logistic{};

  std::size_t new_size() const { return round_half_up(static_cast<double>(w) * rho); }
  std::size_t capacity() const { return w + new_size(); }

  void validate() const {
    detail::require(w >= 1, "d3: w must be positive");
    detail::require(rho > 0.0 && rho <= 1.0, "d3: rho must lie in (0, 1]");
    detail::require(tau > 0.5 && tau <= 1.0, "d3: tau must lie in (0.5, 1]");
    detail::require(new_size() >= 1, "d3: w * rho rounds to zero");
  }
};

namespace detail {

inline void standardize_in_place(std::vector<Vector>& X) {
  if (X.empty()) return;
  const std::size_t d = X.front().size();
  for (std::size_t f = 0; f < d; ++f) {
    double mean = 0.0;
    for (const auto& x : X) mean += x[f];
    mean /= static_cast<double>(X.size());
    double var = 0.0;
    for (const auto& x : X) var += (x[f] - mean) * (x[f] - mean);
    const double sd = std::sqrt(var / static_cast<double>(X.size()));
    for (auto& x : X) x[f] = sd > 0.0 ? (x[f] - mean) / sd : 0.0;
  }
}

}  // namespace detail

// Separability of the old block (first w) from the new block (last n) of a
// window: fit a logistic discriminator on the window and rank-score it.
inline double d3_separability(const std::vector<Sample>& window, std::size_t w, const D3Config& config) {
  std::vector<Vector> X;
  X.reserve(window.size());
  for (const auto& s : window) X.push_back(s.feature_vector());
  if (config.standardize) detail::standardize_in_place(X);
  std::vector<int> y(window.size(), 0);
  for (std::size_t i = w; i < window.size(); ++i) y[i] = 1;
  const LogisticModel clf = logistic_fit(X, y, config.logistic);
  std::vector<double> scores;
  scores.reserve(X.size());
  for (const auto& x : X) scores.push_back(clf.decision(x));
  const double a = auc(scores, y);
  return std::max(a, 1.0 - a);
}

/// Discriminative drift detector over a window of w + round(w * rho) samples.
class D3Detector {
 public:
  explicit D3Detector(D3Config config = {}) : config_(config), window_((config.validate(), config.capacity())) {}

  const D3Config& config() const { return config_; }
  const SlidingWindow& window() const { return window_; }

  DriftDecision step(const Sample& sample) {
    if (!dim_) dim_ = sample.dim();
    detail::require_dim(*dim_, sample.dim(), "d3_step");
    window_.push(sample);

    DriftDecision decision;
    decision.statistic = 0.5;
    if (!window_.full()) return decision;

    const std::vector<Sample> items = window_.snapshot();
    decision.checked = true;
    decision.statistic = d3_separability(items, config_.w, config_);
    decision.fired = decision.statistic >= config_.tau;
    if (decision.fired) {
      decision.window_snapshot = items;
      window_.drop_oldest(config_.w);
    } else {
      window_.drop_oldest(config_.new_size());
    }
    return decision;
  }

  void reset() {
    window_.clear();
    dim_.reset();
  }

 private:
  D3Config config_;
  SlidingWindow window_;
  std::optional<std::size_t> dim_;
};

}  // namespace suds
