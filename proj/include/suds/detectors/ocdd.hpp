#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "suds/detectors/drift_decision.hpp"
#include "suds/error.hpp"
#include "suds/learners/one_class_svm.hpp"
#include "suds/sample.hpp"
#include "suds/window.hpp"

namespace suds {

struct OcddConfig {
  std::size_t w = 250;
  double rho = 0.3;
  double nu = 0.5;
  // Defaults to KernelSpec::scale of each fit window.
  std::optional<KernelSpec> kernel;
  OneClassSolverConfig solver{};

  std::size_t outlier_block() const { return std::max<std::size_t>(round_half_up(static_cast<double>(w) * rho), 1); }

  void validate() const {
    detail::require(w >= 2, "ocdd: w must be at least 2");
    detail::require(rho > 0.0 && rho < 1.0, "ocdd: rho must lie in (0, 1)");
    detail::require(nu > 0.0 && nu <= 1.0, "ocdd: nu must lie in (0, 1]");
  }
};

/// One-class drift detector. The first w samples (and the first w after every
/// drift) fit a one-class SVM; each later sample is flagged as outlier or not,
/// and a drift fires once the flagged fraction of the window reaches rho.
class OcddDetector {
 public:
  explicit OcddDetector(OcddConfig config = {}) : config_(config), window_((config.validate(), config.w)) {}

  const OcddConfig& config() const { return config_; }
  const SlidingWindow& window() const { return window_; }
  const std::deque<bool>& outlier_flags() const { return flags_; }
  const OneClassSvmModel& model() const { return model_; }
  std::size_t outlier_count() const { return outliers_; }

  DriftDecision step(const Sample& sample) {
    if (!dim_) dim_ = sample.dim();
    detail::require_dim(*dim_, sample.dim(), "ocdd_step");

    DriftDecision decision;
    if (!model_.fitted()) {
      window_.push(sample);
      flags_.push_back(false);
      if (window_.full()) fit_on_window();
      return decision;
    }

    const bool outlier = model_.is_outlier(sample.features());
    if (window_.full()) {
      if (flags_.front()) --outliers_;
      flags_.pop_front();
    }
    window_.push(sample);
    flags_.push_back(outlier);
    if (outlier) ++outliers_;

    decision.checked = window_.full();
    decision.statistic = static_cast<double>(outliers_) / static_cast<double>(config_.w);
    decision.fired = window_.full() && decision.statistic >= config_.rho;
    if (decision.fired) {
      decision.window_snapshot = window_.snapshot();
      decision.outlier_flags.assign(flags_.begin(), flags_.end());
      reset();
    }
    return decision;
  }

  // Forget the reference model and window; the next w samples refit it.
  void reset() {
    window_.clear();
    flags_.clear();
    outliers_ = 0;
    model_ = OneClassSvmModel{};
  }

 private:
  void fit_on_window() {
    std::vector<Vector> X;
    X.reserve(window_.size());
    for (const auto& s : window_) X.push_back(s.feature_vector());
    model_ = ocsvm_fit(X, config_.nu, config_.kernel, config_.solver);
  }

  OcddConfig config_;
  SlidingWindow window_;
  std::deque<bool> flags_;
  std::size_t outliers_ = 0;
  OneClassSvmModel model_;
  std::optional<std::size_t> dim_;
};

}  // namespace suds
