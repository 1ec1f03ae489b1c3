#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "suds/error.hpp"

namespace suds {

/// A scheduled concept change. width == 0 is abrupt; otherwise the new
/// concept is mixed in over `width` samples with linearly rising probability.
struct DriftPoint {
  std::size_t at_index = 0;
  std::size_t width = 0;
};

struct StreamSpec {
  std::size_t length = 10000;
  std::uint64_t seed = 1;
  std::vector<DriftPoint> drift_schedule;

  void validate() const {
    for (std::size_t k = 0; k < drift_schedule.size(); ++k) {
      detail::require(drift_schedule[k].at_index < length,
                      "stream schedule: drift index " + std::to_string(drift_schedule[k].at_index) +
                          " is not below the stream length");
      if (k > 0) {
        detail::require(drift_schedule[k].at_index > drift_schedule[k - 1].at_index,
                        "stream schedule: drift indices must be strictly increasing");
      }
    }
  }

  std::size_t concept_count() const { return drift_schedule.size() + 1; }
};

// Evenly spaced drifts: n_concepts blocks over `length`, each change `width` wide.
inline std::vector<DriftPoint> even_schedule(std::size_t length, std::size_t n_concepts, std::size_t width) {
  std::vector<DriftPoint> out;
  for (std::size_t c = 1; c < n_concepts; ++c) out.push_back({length * c / n_concepts, width});
  return out;
}

namespace detail {

// Concept active at position i. Inside a gradual transition the new concept is
// drawn with probability (i - at + 1) / (width + 1).
inline int concept_at(const std::vector<DriftPoint>& schedule, std::size_t i, std::mt19937_64& rng) {
  int current = 0;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k].at_index > i) break;
    current = static_cast<int>(k) + 1;
  }
  if (current == 0) return 0;
  const DriftPoint& d = schedule[static_cast<std::size_t>(current) - 1];
  if (d.width == 0 || i >= d.at_index + d.width) return current;
  const double p = static_cast<double>(i - d.at_index + 1) / static_cast<double>(d.width + 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < p ? current : current - 1;
}

}  // namespace detail
}  // namespace suds
