#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "suds/error.hpp"

namespace suds {

using Vector = std::vector<double>;
using ClassId = int;

class Sample;

// Label-read auditing. A LabelAudit installed on the current thread sees every
// Sample::label() call made while it is alive. The harness wraps detector and
// selector calls in a LabelGuard so any read there is counted as a violation.
struct LabelAudit {
  std::size_t reads = 0;
  std::size_t guarded_reads = 0;
  std::vector<std::size_t> read_indices;
};

namespace detail {

inline LabelAudit*& active_audit() {
  thread_local LabelAudit* audit = nullptr;
  return audit;
}

inline int& guard_depth() {
  thread_local int depth = 0;
  return depth;
}

}  // namespace detail

class LabelAuditScope {
 public:
  explicit LabelAuditScope(LabelAudit& audit) : previous_(detail::active_audit()) {
    detail::active_audit() = &audit;
  }
  ~LabelAuditScope() { detail::active_audit() = previous_; }
  LabelAuditScope(const LabelAuditScope&) = delete;
  LabelAuditScope& operator=(const LabelAuditScope&) = delete;

 private:
  LabelAudit* previous_;
};

// Marks a region where labels have not been purchased yet.
class LabelGuard {
 public:
  LabelGuard() { ++detail::guard_depth(); }
  ~LabelGuard() { --detail::guard_depth(); }
  LabelGuard(const LabelGuard&) = delete;
  LabelGuard& operator=(const LabelGuard&) = delete;
};

/// One stream element: feature vector, optional class label and stream position.
class Sample {
 public:
  Sample() = default;
  Sample(Vector features, std::size_t index, std::optional<ClassId> label = std::nullopt)
      : features_(std::move(features)), label_(label), index_(index) {}

  std::span<const double> features() const { return features_; }
  const Vector& feature_vector() const { return features_; }
  std::size_t dim() const { return features_.size(); }
  std::size_t index() const { return index_; }
  bool has_label() const { return label_.has_value(); }

  std::optional<ClassId> label() const {
    if (auto* audit = detail::active_audit()) {
      ++audit->reads;
      audit->read_indices.push_back(index_);
      if (detail::guard_depth() > 0) ++audit->guarded_reads;
    }
    return label_;
  }

  Sample without_label() const { return Sample(features_, index_); }

 private:
  Vector features_;
  std::optional<ClassId> label_;
  std::size_t index_ = 0;
};

// Ground-truth tags travel next to a sample and never enter detectors.
struct TaggedSample {
  Sample sample;
  int concept_id = 0;
  bool is_noise = false;
};

inline std::vector<Sample> strip_tags(std::span<const TaggedSample> stream) {
  std::vector<Sample> out;
  out.reserve(stream.size());
  for (const auto& t : stream) out.push_back(t.sample);
  return out;
}

// round(x) with halves going up; absorbs representation error such as 100 * 0.1.
inline std::size_t round_half_up(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5 + 1e-9));
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace suds
