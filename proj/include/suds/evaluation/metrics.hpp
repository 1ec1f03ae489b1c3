#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "suds/error.hpp"

namespace suds {

// Harmonic mean of a performance score psi in [0, 1] and the unannotated
// fraction eps = 1 - annotated / total. Zero when both are zero.
inline double hadam_from_fraction(double psi, double annotated_fraction) {
  detail::require(psi >= 0.0 && psi <= 1.0, "hadam: psi must lie in [0, 1]");
  detail::require(annotated_fraction >= 0.0 && annotated_fraction <= 1.0, "hadam: annotated must not exceed total");
  const double eps = 1.0 - annotated_fraction;
  if (psi + eps == 0.0) return 0.0;
  return 2.0 * psi * eps / (psi + eps);
}

inline double hadam(double psi, double annotated, double total) {
  detail::require(total > 0.0, "hadam: total must be positive");
  detail::require(annotated >= 0.0, "hadam: annotated must be nonnegative");
  detail::require(annotated <= total, "hadam: annotated must not exceed total");
  return hadam_from_fraction(psi, annotated / total);
}

inline double hadam(double psi, std::size_t annotated, std::size_t total) {
  return hadam(psi, static_cast<double>(annotated), static_cast<double>(total));
}

using ScoreTable = std::map<std::string, std::map<std::string, double>>;

// Per method: mean over datasets of (best value on the dataset - method value).
inline std::map<std::string, double> avg_diff(const ScoreTable& table) {
  detail::require(!table.empty(), "avg_diff: empty table");
  std::set<std::string> methods;
  for (const auto& [dataset, row] : table) {
    for (const auto& [method, v] : row) methods.insert(method);
  }
  std::map<std::string, double> out;
  for (const auto& m : methods) out[m] = 0.0;
  for (const auto& [dataset, row] : table) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& m : methods) {
      const auto it = row.find(m);
      detail::require(it != row.end(), "avg_diff: dataset '" + dataset + "' has no value for method '" + m + "'");
      best = std::max(best, it->second);
    }
    for (const auto& m : methods) out[m] += best - row.at(m);
  }
  for (auto& [m, v] : out) v /= static_cast<double>(table.size());
  return out;
}

inline double annotation_fraction(std::size_t annotated, std::size_t stream_length) {
  detail::require(stream_length > 0, "annotation_fraction: empty stream");
  return static_cast<double>(annotated) / static_cast<double>(stream_length);
}

}  // namespace suds
