#pragma once

#include <vector>

#include "suds/sample.hpp"

namespace suds {

/// Result of one detector step. The snapshot (and, for OCDD, the outlier flags
/// aligned with it) is only populated when the detector fires.
struct DriftDecision {
  bool fired = false;
  // True when a drift test actually ran on this step.
  bool checked = false;
  // Separability max(AUC, 1 - AUC) for D3; outlier fraction for OCDD.
  double statistic = 0.0;
  std::vector<Sample> window_snapshot;
  std::vector<bool> outlier_flags;
};

}  // namespace suds
