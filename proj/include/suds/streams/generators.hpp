#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "suds/error.hpp"
#include "suds/sample.hpp"
#include "suds/streams/schedule.hpp"

namespace suds {

// ---------------------------------------------------------------------------
// SEA: three features in [0, 10]; class 0 iff f1 + f2 <= threshold of the
// active concept. A fraction `noise` of labels is flipped and tagged.

struct SeaSpec {
  StreamSpec stream;
  double noise = 0.1;
  std::vector<double> thresholds{8.0, 9.0, 7.0, 9.5};
};

class SeaGenerator {
 public:
  explicit SeaGenerator(SeaSpec spec) : spec_(std::move(spec)), rng_(spec_.stream.seed) {
    spec_.stream.validate();
    detail::require(spec_.noise >= 0.0 && spec_.noise < 1.0, "gen_sea: noise must lie in [0, 1)");
    detail::require(!spec_.thresholds.empty(), "gen_sea: need at least one threshold");
  }

  bool has_next() const { return index_ < spec_.stream.length; }

  TaggedSample next() {
    std::uniform_real_distribution<double> feature(0.0, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector x(3);
    for (auto& v : x) v = feature(rng_);
    const int concept_id = detail::concept_at(spec_.stream.drift_schedule, index_, rng_);
    const double theta = spec_.thresholds[static_cast<std::size_t>(concept_id) % spec_.thresholds.size()];
    ClassId y = x[0] + x[1] <= theta ? 0 : 1;
    const bool noisy = unit(rng_) < spec_.noise;
    if (noisy) y = 1 - y;
    return TaggedSample{Sample(std::move(x), index_++, y), concept_id, noisy};
  }

 private:
  SeaSpec spec_;
  std::mt19937_64 rng_;
  std::size_t index_ = 0;
};

// ---------------------------------------------------------------------------
// Rotating hyperplane: features uniform in [0, 1]^d; class 1 iff
// sum w_i x_i >= (sum w_i) / 2 (points on the plane are positive). Every weight
// moves by `rate` per sample along its own direction; at each scheduled
// checkpoint the concept id advances and each direction reverses with
// probability `reversal_probability`.

struct HyperplaneSpec {
  StreamSpec stream;
  std::size_t dim = 10;
  double rate = 0.0;
  double noise = 0.0;
  double reversal_probability = 0.1;
  // Initial weights; empty means all ones.
  Vector initial_weights;
};

class HyperplaneGenerator {
 public:
  explicit HyperplaneGenerator(HyperplaneSpec spec) : spec_(std::move(spec)), rng_(spec_.stream.seed) {
    spec_.stream.validate();
    detail::require(spec_.dim >= 2, "gen_hyperplane: dimension must be at least 2");
    detail::require(spec_.rate >= 0.0, "gen_hyperplane: rotation rate must be nonnegative");
    detail::require(spec_.noise >= 0.0 && spec_.noise < 1.0, "gen_hyperplane: noise must lie in [0, 1)");
    weights_ = spec_.initial_weights.empty() ? Vector(spec_.dim, 1.0) : spec_.initial_weights;
    detail::require_dim(spec_.dim, weights_.size(), "gen_hyperplane weights");
    directions_.assign(spec_.dim, 1.0);
  }

  bool has_next() const { return index_ < spec_.stream.length; }
  const Vector& weights() const { return weights_; }

  TaggedSample next() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto& schedule = spec_.stream.drift_schedule;
    while (next_checkpoint_ < schedule.size() && schedule[next_checkpoint_].at_index <= index_) {
      ++concept_;
      ++next_checkpoint_;
      for (auto& d : directions_) {
        if (unit(rng_) < spec_.reversal_probability) d = -d;
      }
    }
    Vector x(spec_.dim);
    for (auto& v : x) v = unit(rng_);
    ClassId y = classify(x);
    const bool noisy = unit(rng_) < spec_.noise;
    if (noisy) y = 1 - y;
    for (std::size_t i = 0; i < spec_.dim; ++i) weights_[i] += directions_[i] * spec_.rate;
    return TaggedSample{Sample(std::move(x), index_++, y), concept_, noisy};
  }

  ClassId classify(std::span<const double> x) const {
    double dot = 0.0, total = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      dot += weights_[i] * x[i];
      total += weights_[i];
    }
    return dot >= 0.5 * total ? 1 : 0;
  }

 private:
  HyperplaneSpec spec_;
  std::mt19937_64 rng_;
  Vector weights_;
  Vector directions_;
  std::size_t index_ = 0;
  std::size_t next_checkpoint_ = 0;
  int concept_ = 0;
};

// ---------------------------------------------------------------------------
// Switching RBF: each concept owns k Gaussian centers with fixed classes.
// A sample picks one center of the active concept uniformly and adds
// isotropic noise of width sigma.

struct RbfCenter {
  Vector position;
  ClassId label = 0;
};

struct RbfSwitchSpec {
  StreamSpec stream;
  std::size_t dim = 2;
  std::size_t k = 4;
  std::size_t n_classes = 2;
  double sigma = 0.1;
  // Random centers are drawn uniformly from [0, extent]^dim per concept.
  double extent = 10.0;
  // Explicit layouts, one per concept (cycled if fewer than concepts).
  std::vector<std::vector<RbfCenter>> centers;
};

class RbfSwitchGenerator {
 public:
  explicit RbfSwitchGenerator(RbfSwitchSpec spec) : spec_(std::move(spec)), rng_(spec_.stream.seed) {
    spec_.stream.validate();
    detail::require(spec_.sigma >= 0.0, "gen_rbf_switch: sigma must be nonnegative");
    if (spec_.centers.empty()) {
      detail::require(spec_.k >= 2, "gen_rbf_switch: need k >= 2 centers");
      detail::require(spec_.n_classes >= 1, "gen_rbf_switch: need at least one class");
      detail::require(spec_.dim >= 1, "gen_rbf_switch: dimension must be positive");
      std::uniform_real_distribution<double> pos(0.0, spec_.extent);
      for (std::size_t c = 0; c < spec_.stream.concept_count(); ++c) {
        std::vector<RbfCenter> layout;
        for (std::size_t j = 0; j < spec_.k; ++j) {
          Vector p(spec_.dim);
          for (auto& v : p) v = pos(rng_);
          layout.push_back({std::move(p), static_cast<ClassId>(j % spec_.n_classes)});
        }
        spec_.centers.push_back(std::move(layout));
      }
    } else {
      for (const auto& layout : spec_.centers) {
        detail::require(layout.size() >= 2, "gen_rbf_switch: need k >= 2 centers per concept");
        for (const auto& c : layout) detail::require_dim(spec_.centers.front().front().position.size(), c.position.size(), "gen_rbf_switch center");
      }
      spec_.dim = spec_.centers.front().front().position.size();
    }
  }

  bool has_next() const { return index_ < spec_.stream.length; }
  const std::vector<RbfCenter>& layout(int concept_id) const {
    return spec_.centers[static_cast<std::size_t>(concept_id) % spec_.centers.size()];
  }

  TaggedSample next() {
    const int concept_id = detail::concept_at(spec_.stream.drift_schedule, index_, rng_);
    const auto& centers = layout(concept_id);
    std::uniform_int_distribution<std::size_t> pick(0, centers.size() - 1);
    const RbfCenter& c = centers[pick(rng_)];
    std::normal_distribution<double> noise(0.0, 1.0);
    Vector x(c.position.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = c.position[i] + spec_.sigma * noise(rng_);
    return TaggedSample{Sample(std::move(x), index_++, c.label), concept_id, false};
  }

 private:
  RbfSwitchSpec spec_;
  std::mt19937_64 rng_;
  std::size_t index_ = 0;
};

template <class Generator>
std::vector<TaggedSample> materialize(Generator gen) {
  std::vector<TaggedSample> out;
  while (gen.has_next()) out.push_back(gen.next());
  return out;
}

inline std::vector<TaggedSample> gen_sea(const SeaSpec& spec) { return materialize(SeaGenerator(spec)); }
inline std::vector<TaggedSample> gen_hyperplane(const HyperplaneSpec& spec) {
  return materialize(HyperplaneGenerator(spec));
}
inline std::vector<TaggedSample> gen_rbf_switch(const RbfSwitchSpec& spec) {
  return materialize(RbfSwitchGenerator(spec));
}

}  // namespace suds
