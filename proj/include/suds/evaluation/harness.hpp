#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "suds/detectors/d3.hpp"
#include "suds/detectors/ocdd.hpp"
#include "suds/error.hpp"
#include "suds/evaluation/metrics.hpp"
#include "suds/learners/hoeffding_tree.hpp"
#include "suds/sample.hpp"
#include "suds/selectors.hpp"

namespace suds {

enum class DetectorKind { d3, ocdd };
enum class UpdateMode { retrain_only, prequential_update };

struct HarnessConfig {
  DetectorKind detector = DetectorKind::d3;
  D3Config d3{};
  OcddConfig ocdd{};
  // Only the selector family (baseline or suds) matters; it must match the detector.
  SelectorKind selector = SelectorKind::baseline_d3;
  HoeffdingConfig classifier{};
  UpdateMode update_mode = UpdateMode::prequential_update;
  std::uint64_t seed = 0;
  bool keep_trace = false;

  // Size of the first labeled block and of a baseline retraining set.
  std::size_t block_size() const {
    return detector == DetectorKind::d3 ? d3.new_size() : ocdd.outlier_block();
  }

  void validate() const {
    if (detector == DetectorKind::d3) {
      d3.validate();
      detail::require(is_d3_selector(selector), "harness: selector is incompatible with the D3 detector");
    } else {
      ocdd.validate();
      detail::require(!is_d3_selector(selector), "harness: selector is incompatible with the OCDD detector");
    }
  }
};

struct DriftEvent {
  std::size_t at_index = 0;
  SelectionResult selection;
  double statistic = 0.0;
};

struct StepTrace {
  std::size_t index = 0;
  std::optional<ClassId> predicted;
  ClassId actual = 0;
  bool drift = false;
  double statistic = 0.0;
};

struct ExperimentReport {
  double accuracy = 0.0;
  std::vector<DriftEvent> drift_events;
  // Labels bought: initial block plus every drift selection.
  std::size_t annotated_count = 0;
  std::size_t initial_annotations = 0;
  std::size_t stream_length = 0;
  std::size_t scored = 0;
  std::size_t correct = 0;
  double hadam = 0.0;
  std::vector<StepTrace> trace;

  std::size_t drifts() const { return drift_events.size(); }
  // Count without the initial block, the convention of published tables.
  std::size_t annotated_paper() const { return annotated_count - initial_annotations; }
  std::size_t fallbacks() const {
    return static_cast<std::size_t>(std::count_if(drift_events.begin(), drift_events.end(),
                                                  [](const DriftEvent& e) { return e.selection.fallback_used; }));
  }
};

inline double annotation_fraction(const ExperimentReport& report) {
  return annotation_fraction(report.annotated_count, report.stream_length);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Interleaved test-then-train over a labeled stream. Per sample: score the
/// classifier, step the detector on the unlabeled sample, and on a drift buy
/// labels for the selected samples and retrain the tree from scratch on them.
/// Detector and selector calls run under a LabelGuard.
inline ExperimentReport run_prequential(std::span<const Sample> stream, const HarnessConfig& config) {
  detail::require(!stream.empty(), "run_prequential: empty stream");
  config.validate();

  const std::size_t dim = stream.front().dim();
  for (std::size_t i = 0; i < stream.size(); ++i) {
    detail::require_dim(dim, stream[i].dim(), ("run_prequential sample " + std::to_string(i)).c_str());
    if (i > 0) detail::require(stream[i].index() > stream[i - 1].index(), "run_prequential: stream indices must increase");
  }
  // Purchase a label by stream index.
  auto buy = [&](const Sample& s) -> ClassId {
    const auto it = std::lower_bound(stream.begin(), stream.end(), s.index(),
                                     [](const Sample& a, std::size_t idx) { return a.index() < idx; });
    detail::require(it != stream.end() && it->index() == s.index(), "run_prequential: selected sample not in stream");
    const auto label = it->label();
    detail::require(label.has_value(), "run_prequential: stream sample is unlabeled");
    return *label;
  };

  std::optional<D3Detector> d3;
  std::optional<OcddDetector> ocdd;
  if (config.detector == DetectorKind::d3) d3.emplace(config.d3);
  else ocdd.emplace(config.ocdd);

  HoeffdingTree tree(config.classifier);
  ExperimentReport report;
  report.stream_length = stream.size();
  const std::size_t block = config.block_size();
  std::vector<Sample> initial;
  bool trained = false;

  for (const Sample& s : stream) {
    const auto truth = s.label();
    detail::require(truth.has_value(), "run_prequential: stream sample " + std::to_string(s.index()) + " is unlabeled");
    StepTrace step{s.index(), std::nullopt, *truth, false, 0.0};

    const bool scored = trained;
    if (scored) {
      const ClassId predicted = tree.predict_one(s.features());
      step.predicted = predicted;
      ++report.scored;
      if (predicted == *truth) ++report.correct;
    } else {
      initial.push_back(s);
      if (initial.size() == block) {
        for (const auto& b : initial) tree.learn_one(b.features(), buy(b));
        report.annotated_count += initial.size();
        report.initial_annotations = initial.size();
        trained = true;
      }
    }

    const Sample unlabeled = s.without_label();
    DriftDecision decision;
    {
      LabelGuard guard;
      decision = d3 ? d3->step(unlabeled) : ocdd->step(unlabeled);
    }
    step.statistic = decision.statistic;

    if (decision.fired) {
      step.drift = true;
      const std::uint64_t seed = detail::splitmix64(config.seed ^ detail::splitmix64(report.drift_events.size()));
      SelectionResult selection;
      {
        LabelGuard guard;
        const auto& snap = decision.window_snapshot;
        switch (config.selector) {
          case SelectorKind::baseline_d3: selection = select_baseline_d3(snap, config.d3.w, config.d3.rho); break;
          case SelectorKind::suds_d3:
            selection = select_suds_d3(snap, config.d3.w, config.d3.rho, seed, config.d3.logistic);
            break;
          case SelectorKind::baseline_ocdd:
            selection = select_baseline_ocdd(snap, config.ocdd.w, config.ocdd.rho);
            break;
          case SelectorKind::suds_ocdd:
            selection = select_suds_ocdd(snap, decision.outlier_flags, config.ocdd.nu, config.ocdd.kernel,
                                         config.ocdd.solver);
            break;
        }
      }
      tree.reset();
      for (const auto& chosen : selection.selected) tree.learn_one(chosen.features(), buy(chosen));
      report.annotated_count += selection.selected.size();
      report.drift_events.push_back(DriftEvent{s.index(), std::move(selection), decision.statistic});
    }

    if (config.update_mode == UpdateMode::prequential_update && scored) tree.learn_one(s.features(), *truth);
    if (config.keep_trace) report.trace.push_back(step);
  }

  report.accuracy = report.scored > 0 ? static_cast<double>(report.correct) / static_cast<double>(report.scored) : 0.0;
  report.hadam = hadam(report.accuracy, report.annotated_count, report.stream_length);
  return report;
}

inline ExperimentReport run_prequential(std::span<const TaggedSample> stream, const HarnessConfig& config) {
  const auto plain = strip_tags(stream);
  return run_prequential(std::span<const Sample>(plain), config);
}

}  // namespace suds
