#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "suds/error.hpp"
#include "suds/sample.hpp"

namespace suds {

struct HoeffdingConfig {
  std::size_t grace_period = 200;
  double split_confidence = 1e-7;
  double tie_threshold = 0.05;
  std::optional<std::size_t> max_depth;
  // Thresholds tried per numeric feature, evenly spaced between observed min and max.
  std::size_t split_candidates = 10;
  ClassId default_class = 0;
};

namespace detail {

// Weighted running mean/variance with range, one per (feature, class).
struct GaussianSummary {
  double weight = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double v) {
    weight += 1.0;
    const double delta = v - mean;
    mean += delta / weight;
    m2 += delta * (v - mean);
    min = std::min(min, v);
    max = std::max(max, v);
  }

  double stddev() const { return weight > 1.0 ? std::sqrt(m2 / (weight - 1.0)) : 0.0; }

  // Estimated weight falling at or below t.
  double weight_below(double t) const {
    if (weight <= 0.0) return 0.0;
    if (t < min) return 0.0;
    if (t >= max) return weight;
    const double sd = stddev();
    if (sd <= 0.0) return mean <= t ? weight : 0.0;
    return weight * 0.5 * std::erfc(-(t - mean) / (sd * std::sqrt(2.0)));
  }
};

inline double gini(std::span<const double> counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) return 0.0;
  double s = 1.0;
  for (double c : counts) s -= (c / total) * (c / total);
  return s;
}

}  // namespace detail

/// Incremental decision tree (VFDT) over numeric features with majority-class leaves.
class HoeffdingTree {
 public:
  explicit HoeffdingTree(HoeffdingConfig config = {}) : config_(config) { reset(); }

  const HoeffdingConfig& config() const { return config_; }

  void reset() {
    nodes_.clear();
    nodes_.push_back(Node{});
    dim_.reset();
  }

  void learn_one(const Sample& s) {
    const auto y = s.label();
    detail::require(y.has_value(), "hoeffding_learn_one: sample is unlabeled");
    learn_one(s.features(), *y);
  }

  void learn_one(std::span<const double> x, ClassId y) {
    detail::require(y >= 0, "hoeffding_learn_one: class id must be nonnegative");
    if (!dim_) dim_ = x.size();
    detail::require_dim(*dim_, x.size(), "hoeffding_learn_one");
    const std::size_t leaf = find_leaf(x);
    Node& node = nodes_[leaf];
    const auto cls = static_cast<std::size_t>(y);
    if (node.counts.size() <= cls) node.counts.resize(cls + 1, 0.0);
    node.counts[cls] += 1.0;
    if (node.stats.empty()) node.stats.resize(x.size());
    for (std::size_t f = 0; f < x.size(); ++f) {
      auto& per_class = node.stats[f];
      if (per_class.size() <= cls) per_class.resize(cls + 1);
      per_class[cls].add(x[f]);
    }
    node.seen += 1.0;
    if (node.seen - node.seen_at_last_eval >= static_cast<double>(config_.grace_period)) {
      node.seen_at_last_eval = node.seen;
      try_split(leaf);
    }
  }

  ClassId predict_one(std::span<const double> x) const {
    if (dim_) detail::require_dim(*dim_, x.size(), "hoeffding_predict_one");
    const Node& leaf = nodes_[find_leaf(x)];
    ClassId best = config_.default_class;
    double best_count = 0.0;
    for (std::size_t c = 0; c < leaf.counts.size(); ++c) {
      if (leaf.counts[c] > best_count) {
        best_count = leaf.counts[c];
        best = static_cast<ClassId>(c);
      }
    }
    return best;
  }

  std::size_t n_nodes() const { return nodes_.size(); }
  std::size_t n_leaves() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf(); }));
  }
  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
  }
  // Class counts at the leaf reached by x.
  std::vector<double> leaf_counts(std::span<const double> x) const { return nodes_[find_leaf(x)].counts; }

 private:
  struct Node {
    // Split nodes: feature/threshold/children set; x[feature] <= threshold goes left.
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    bool split = false;
    std::size_t depth = 0;
    // Leaf statistics.
    std::vector<double> counts;
    std::vector<std::vector<detail::GaussianSummary>> stats;
    double seen = 0.0;
    double seen_at_last_eval = 0.0;

    bool leaf() const { return !split; }
  };

  struct Candidate {
    double merit = 0.0;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::vector<double> left;
    std::vector<double> right;
  };

  std::size_t find_leaf(std::span<const double> x) const {
    std::size_t i = 0;
    while (nodes_[i].split) i = x[nodes_[i].feature] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
    return i;
  }

  // Class weights observed since this leaf was created (inherited counts excluded).
  static std::vector<double> observed(const Node& node) {
    std::vector<double> w(node.counts.size(), 0.0);
    if (node.stats.empty()) return w;
    const auto& per_class = node.stats.front();
    for (std::size_t c = 0; c < per_class.size() && c < w.size(); ++c) w[c] = per_class[c].weight;
    return w;
  }

  Candidate best_for_feature(const Node& node, std::size_t f, const std::vector<double>& class_weight,
                             double parent_gini, double total) const {
    Candidate best;
    best.feature = f;
    const auto& per_class = node.stats[f];
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& g : per_class) {
      if (g.weight <= 0.0) continue;
      lo = std::min(lo, g.min);
      hi = std::max(hi, g.max);
    }
    if (!(hi > lo)) return best;
    const std::size_t k = config_.split_candidates;
    std::vector<double> left(class_weight.size()), right(class_weight.size());
    for (std::size_t b = 1; b <= k; ++b) {
      const double t = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(k + 1);
      double wl = 0.0, wr = 0.0;
      for (std::size_t c = 0; c < class_weight.size(); ++c) {
        const double below = c < per_class.size() ? per_class[c].weight_below(t) : 0.0;
        left[c] = below;
        right[c] = std::max(class_weight[c] - below, 0.0);
        wl += left[c];
        wr += right[c];
      }
      if (wl <= 0.0 || wr <= 0.0) continue;
      const double merit = parent_gini - (wl / total) * detail::gini(left) - (wr / total) * detail::gini(right);
      if (merit > best.merit) {
        best.merit = merit;
        best.threshold = t;
        best.left = left;
        best.right = right;
      }
    }
    return best;
  }

  void try_split(std::size_t index) {
    const Node& node = nodes_[index];
    if (config_.max_depth && node.depth >= *config_.max_depth) return;
    const std::vector<double> class_weight = observed(node);
    std::size_t present = 0;
    double total = 0.0;
    for (double c : class_weight) {
      present += c > 0.0 ? 1 : 0;
      total += c;
    }
    if (present < 2) return;
    const double parent_gini = detail::gini(class_weight);
    Candidate first, second;  // second starts as the null split (merit 0)
    for (std::size_t f = 0; f < node.stats.size(); ++f) {
      Candidate c = best_for_feature(node, f, class_weight, parent_gini, total);
      if (c.merit > first.merit) {
        second = std::move(first);
        first = std::move(c);
      } else if (c.merit > second.merit) {
        second = std::move(c);
      }
    }
    if (first.merit <= 0.0) return;
    // Gini impurity lies in [0, 1], so the range R is 1.
    const double eps = std::sqrt(std::log(1.0 / config_.split_confidence) / (2.0 * total));
    if (!(first.merit - second.merit > eps || eps < config_.tie_threshold)) return;

    Node left_child, right_child;
    left_child.depth = right_child.depth = node.depth + 1;
    left_child.counts = first.left;
    right_child.counts = first.right;
    const std::size_t left_index = nodes_.size();
    nodes_.push_back(std::move(left_child));
    nodes_.push_back(std::move(right_child));
    Node& parent = nodes_[index];
    parent.split = true;
    parent.feature = first.feature;
    parent.threshold = first.threshold;
    parent.left = left_index;
    parent.right = left_index + 1;
    parent.stats.clear();
    parent.stats.shrink_to_fit();
  }

  HoeffdingConfig config_;
  std::vector<Node> nodes_;
  std::optional<std::size_t> dim_;
};

}  // namespace suds
