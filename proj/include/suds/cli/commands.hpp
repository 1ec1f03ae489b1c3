#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "suds/cli/config.hpp"
#include "suds/cli/parallel.hpp"
#include "suds/cli/table.hpp"
#include "suds/error.hpp"
#include "suds/evaluation/harness.hpp"
#include "suds/evaluation/metrics.hpp"
#include "suds/streams/loaders.hpp"

namespace suds::cli {

// Column order of every per-run report row.
inline const std::vector<std::string> kReportColumns{"dataset", "detector", "selector", "w",     "rho",   "tau_or_nu",
                                                     "repeat",  "accuracy", "drifts",  "annotated", "total", "hadam"};

// Supplies the labeled stream for a given repeat. Files are loaded once;
// generated streams are re-drawn with seed + repeat.
class StreamSource {
 public:
  explicit StreamSource(const RunConfig& config) : seed_(config.seed) {
    config.validate();
    if (config.input) {
      CsvOptions csv;
      csv.header = config.header;
      dataset_ = std::make_shared<Dataset>(load_dataset(*config.input, csv));
      name_ = std::filesystem::path(*config.input).filename().string();
    } else {
      generator_ = parse_generator(*config.generate);
      name_ = generator_->name();
    }
  }

  const std::string& name() const { return name_; }

  std::shared_ptr<const std::vector<Sample>> stream(std::size_t repeat) const {
    if (dataset_) return std::shared_ptr<const std::vector<Sample>>(dataset_, &dataset_->samples);
    return std::make_shared<const std::vector<Sample>>(strip_tags(generate_stream(*generator_, seed_ + repeat)));
  }

 private:
  std::uint64_t seed_;
  std::string name_;
  std::shared_ptr<Dataset> dataset_;
  std::optional<GeneratorSpec> generator_;
};

struct RunSummary {
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double mean_drifts = 0.0;
  double std_drifts = 0.0;
  double mean_annotated = 0.0;
  double std_annotated = 0.0;
  double std_hadam = 0.0;
  std::size_t total = 0;
  // HADAM of the mean accuracy and mean annotated count.
  double hadam = 0.0;
};

namespace detail {

inline std::pair<double, double> mean_std(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return {mean, sd};
}

}  // namespace detail

inline RunSummary summarize(const std::vector<ExperimentReport>& reports) {
  suds::detail::require(!reports.empty(), "summarize: no reports");
  std::vector<double> acc, drifts, ann, had;
  for (const auto& r : reports) {
    acc.push_back(r.accuracy);
    drifts.push_back(static_cast<double>(r.drifts()));
    ann.push_back(static_cast<double>(r.annotated_count));
    had.push_back(r.hadam);
  }
  RunSummary s;
  std::tie(s.mean_accuracy, s.std_accuracy) = detail::mean_std(acc);
  std::tie(s.mean_drifts, s.std_drifts) = detail::mean_std(drifts);
  std::tie(s.mean_annotated, s.std_annotated) = detail::mean_std(ann);
  s.std_hadam = detail::mean_std(had).second;
  s.total = reports.front().stream_length;
  s.hadam = suds::hadam(s.mean_accuracy, s.mean_annotated, static_cast<double>(s.total));
  return s;
}

struct RunOutput {
  std::vector<ExperimentReport> reports;
  RunSummary summary;
  std::string text;
};

inline std::string selector_name(bool suds) { return suds ? "suds" : "baseline"; }

inline RunOutput cmd_run(const RunConfig& config) {
  const StreamSource source(config);
  RunOutput out;
  out.reports.resize(config.repeats);
  parallel_for(config.repeats, config.jobs, [&](std::size_t r) {
    const auto stream = source.stream(r);
    out.reports[r] = run_prequential(std::span<const Sample>(*stream), config.harness(r));
  });
  out.summary = summarize(out.reports);

  Table table{kReportColumns, {}};
  const std::vector<std::string> prefix{source.name(), to_string(config.detector), selector_name(config.suds),
                                        std::to_string(config.window()), compact(config.ratio()),
                                        compact(config.tau_or_nu())};
  auto row = [&](std::vector<std::string> tail) {
    std::vector<std::string> cells = prefix;
    cells.insert(cells.end(), tail.begin(), tail.end());
    table.rows.push_back(std::move(cells));
  };
  for (std::size_t r = 0; r < out.reports.size(); ++r) {
    const auto& rep = out.reports[r];
    row({std::to_string(r), fixed(rep.accuracy, 6), std::to_string(rep.drifts()), std::to_string(rep.annotated_count),
         std::to_string(rep.stream_length), fixed(rep.hadam, 6)});
  }
  const auto& s = out.summary;
  row({"mean", fixed(s.mean_accuracy, 6), fixed(s.mean_drifts, 2), fixed(s.mean_annotated, 2), std::to_string(s.total),
       fixed(s.hadam, 6)});
  row({"std", fixed(s.std_accuracy, 6), fixed(s.std_drifts, 2), fixed(s.std_annotated, 2), std::to_string(s.total),
       fixed(s.std_hadam, 6)});
  out.text = table.render(config.format);
  return out;
}

// ---------------------------------------------------------------------------

/// Hyperparameter lists; `third` holds tau values for D3 and nu values for OCDD.
struct SweepGrid {
  std::vector<std::size_t> w;
  std::vector<double> rho;
  std::vector<double> third;
  std::size_t repeats = 1;

  static SweepGrid defaults(DetectorKind detector) {
    if (detector == DetectorKind::d3) return {{50, 100, 150}, {0.1, 0.25, 0.5, 0.75, 1.0}, {0.6, 0.65, 0.7, 0.75, 0.8}, 1};
    return {{150, 200, 250, 300}, {0.25, 0.3, 0.35}, {0.4, 0.5, 0.6}, 1};
  }

  std::size_t combinations() const { return w.size() * rho.size() * third.size(); }
  std::size_t runs() const { return combinations() * repeats; }

  void validate(DetectorKind detector) const {
    suds::detail::require(!w.empty() && !rho.empty() && !third.empty(), "sweep: every grid list must be nonempty");
    suds::detail::require(repeats >= 1, "sweep: repeats must be at least 1");
    for (double r : rho) {
      if (detector == DetectorKind::d3) suds::detail::require(r > 0.0 && r <= 1.0, "sweep: D3 rho values must lie in (0, 1]");
      else suds::detail::require(r > 0.0 && r < 1.0, "sweep: OCDD rho values must lie in (0, 1)");
    }
    for (double t : third) {
      if (detector == DetectorKind::d3) suds::detail::require(t > 0.5 && t <= 1.0, "sweep: D3 tau values must lie in (0.5, 1]");
      else suds::detail::require(t > 0.0 && t <= 1.0, "sweep: OCDD nu values must lie in (0, 1]");
    }
  }
};

struct SweepCell {
  bool suds = false;
  std::size_t w = 0;
  double rho = 0.0;
  double third = 0.0;
  RunSummary summary;
};

struct SweepOutput {
  std::vector<SweepCell> cells;
  // (w, rho, third) -> suds HADAM - baseline HADAM, when both selectors ran.
  std::vector<std::pair<SweepCell, double>> differences;
  std::string text;
};

// Runs every grid combination for each requested selector family.
inline SweepOutput cmd_sweep(const RunConfig& base, const SweepGrid& grid, std::vector<bool> selectors = {false, true}) {
  grid.validate(base.detector);
  suds::detail::require(!selectors.empty(), "sweep: no selector requested");
  const StreamSource source(base);

  struct Combo {
    bool suds;
    std::size_t w;
    double rho;
    double third;
  };
  std::vector<Combo> combos;
  for (bool s : selectors) {
    for (std::size_t w : grid.w) {
      for (double rho : grid.rho) {
        for (double t : grid.third) combos.push_back({s, w, rho, t});
      }
    }
  }

  std::vector<std::shared_ptr<const std::vector<Sample>>> streams(grid.repeats);
  parallel_for(grid.repeats, base.jobs, [&](std::size_t r) { streams[r] = source.stream(r); });

  const std::size_t total_runs = combos.size() * grid.repeats;
  std::vector<ExperimentReport> reports(total_runs);
  parallel_for(total_runs, base.jobs, [&](std::size_t task) {
    const Combo& c = combos[task / grid.repeats];
    const std::size_t r = task % grid.repeats;
    RunConfig cfg = base;
    cfg.suds = c.suds;
    cfg.w = c.w;
    cfg.rho = c.rho;
    if (base.detector == DetectorKind::d3) cfg.tau = c.third;
    else cfg.nu = c.third;
    reports[task] = run_prequential(std::span<const Sample>(*streams[r]), cfg.harness(r));
  });
  SweepOutput out;
  for (std::size_t k = 0; k < combos.size(); ++k) {
    std::vector<ExperimentReport> group(reports.begin() + static_cast<std::ptrdiff_t>(k * grid.repeats),
                                        reports.begin() + static_cast<std::ptrdiff_t>((k + 1) * grid.repeats));
    out.cells.push_back({combos[k].suds, combos[k].w, combos[k].rho, combos[k].third, summarize(group)});
  }

  Table cells{{"dataset", "detector", "selector", "w", "rho", "tau_or_nu", "runs", "accuracy", "annotated", "total",
               "hadam"},
              {}};
  for (const auto& c : out.cells) {
    cells.rows.push_back({source.name(), to_string(base.detector), selector_name(c.suds), std::to_string(c.w),
                          compact(c.rho), compact(c.third), std::to_string(grid.repeats),
                          fixed(c.summary.mean_accuracy, 6), fixed(c.summary.mean_annotated, 2),
                          std::to_string(c.summary.total), fixed(c.summary.hadam, 6)});
  }
  std::string text = cells.render(base.format);

  const bool both = std::find(selectors.begin(), selectors.end(), true) != selectors.end() &&
                    std::find(selectors.begin(), selectors.end(), false) != selectors.end();
  if (both) {
    const std::size_t per_selector = grid.combinations();
    Table diff{{"dataset", "detector", "w", "rho", "tau_or_nu", "hadam_diff"}, {}};
    for (std::size_t k = 0; k < per_selector; ++k) {
      const SweepCell& baseline = out.cells[k];
      const SweepCell& suds_cell = out.cells[k + per_selector];
      const double d = suds_cell.summary.hadam - baseline.summary.hadam;
      out.differences.push_back({baseline, d});
      diff.rows.push_back({source.name(), to_string(base.detector), std::to_string(baseline.w), compact(baseline.rho),
                           compact(baseline.third), fixed(d, 6)});
    }
    text += "\n";
    text += diff.render(base.format);
  }
  out.text = std::move(text);
  return out;
}

// ---------------------------------------------------------------------------

struct PublishedRow {
  std::string dataset;
  std::string method;
  double accuracy = 0.0;
  std::size_t annotated = 0;
  std::size_t total = 0;
  std::string group;
  double hadam = 0.0;
};

struct RecomputeOutput {
  std::vector<PublishedRow> rows;
  // Average difference to the best method per dataset, in percentage points.
  std::map<std::string, double> avg_diff_pp;
  std::string text;
};

// Table with a header naming at least dataset, method, accuracy (fraction in
// [0, 1]), annotated and total; an optional `group` column enables filtering.
inline RecomputeOutput cmd_recompute(std::istream& in, const std::optional<std::string>& group = std::nullopt,
                                     OutputFormat format = OutputFormat::tsv) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    suds::detail::strip_cr(line);
    if (!trimmed(line).empty()) header = suds::detail::split_fields(line, line.find('\t') != std::string::npos ? '\t' : ',');
  }
  if (header.empty()) throw ParseError("recompute: empty table");
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  auto column = [&](const std::string& name, bool required) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      if (required) throw ParseError("recompute: missing column '" + name + "'");
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_dataset = *column("dataset", true);
  const std::size_t c_method = *column("method", true);
  const std::size_t c_acc = *column("accuracy", true);
  const std::size_t c_ann = *column("annotated", true);
  const std::size_t c_total = *column("total", true);
  const auto c_group = column("group", false);
  if (group && !c_group) throw ParseError("recompute: --group needs a 'group' column");

  RecomputeOutput out;
  ScoreTable accuracy_pp;
  std::set<std::pair<std::string, std::string>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    suds::detail::strip_cr(line);
    if (trimmed(line).empty()) continue;
    const auto f = suds::detail::split_fields(line, delim);
    const std::string where = "recompute line " + std::to_string(line_no) + ": ";
    if (f.size() != header.size()) throw ParseError(where + "expected " + std::to_string(header.size()) + " fields");
    PublishedRow row;
    row.dataset = f[c_dataset];
    row.method = f[c_method];
    if (c_group) row.group = f[*c_group];
    if (group && row.group != *group) continue;
    if (!suds::detail::parse_double(f[c_acc], row.accuracy) || row.accuracy < 0.0 || row.accuracy > 1.0) {
      throw ParseError(where + "accuracy must be a number in [0, 1]");
    }
    try {
      row.annotated = parse_count("annotated", f[c_ann]);
      row.total = parse_count("total", f[c_total]);
      row.hadam = hadam(row.accuracy, row.annotated, row.total);
    } catch (const Error& e) {
      throw ParseError(where + e.what());
    }
    if (!seen.insert({row.dataset, row.method}).second) throw ParseError(where + "duplicate dataset/method cell");
    accuracy_pp[row.dataset][row.method] = row.accuracy * 100.0;
    out.rows.push_back(std::move(row));
  }
  if (out.rows.empty()) throw ParseError("recompute: no rows selected");
  try {
    out.avg_diff_pp = avg_diff(accuracy_pp);
  } catch (const Error& e) {
    throw ParseError(std::string("recompute: ") + e.what());
  }

  Table cells{{"dataset", "method", "accuracy", "annotated", "total", "hadam"}, {}};
  for (const auto& r : out.rows) {
    cells.rows.push_back({r.dataset, r.method, fixed(r.accuracy, 4), std::to_string(r.annotated),
                          std::to_string(r.total), fixed(r.hadam, 4)});
  }
  Table diffs{{"scope", "method", "avg_diff_pp"}, {}};
  for (const auto& [method, v] : out.avg_diff_pp) diffs.rows.push_back({group.value_or("all"), method, fixed(v, 2)});
  out.text = cells.render(format) + "\n" + diffs.render(format);
  return out;
}

inline RecomputeOutput cmd_recompute(const std::string& path, const std::optional<std::string>& group = std::nullopt,
                                     OutputFormat format = OutputFormat::tsv) {
  std::ifstream in(path);
  if (!in) throw ParseError("recompute: cannot open '" + path + "'");
  return cmd_recompute(in, group, format);
}

}  // namespace suds::cli
