// suds_cli: run, sweep and recompute drift-sampling experiments.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "suds/cli/commands.hpp"

namespace {

using suds::cli::RunConfig;

// Raw flag values; anything left unset falls back to the config file, then
// to the built-in defaults.
struct Flags {
  std::optional<std::string> config;
  std::map<std::string, std::string> values;
  bool header = false;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "key=value config file; flags override it");
  auto opt = [&](const std::string& name, const std::string& help) {
    cmd.add_option_function<std::string>("--" + name, [&f, name](const std::string& v) { f.values[name] = v; }, help);
  };
  opt("input", "dataset file (.csv or .arff)");
  opt("generate", "generator spec, e.g. sea:length=20000,concepts=4,width=500");
  opt("detector", "d3 | ocdd");
  opt("w", "window size");
  opt("rho", "new-window ratio (D3) or outlier threshold (OCDD)");
  opt("tau", "D3 AUC threshold");
  opt("nu", "one-class SVM nu (OCDD)");
  opt("update-mode", "prequential_update | retrain_only");
  opt("repeats", "runs per configuration");
  opt("seed", "base seed; repeat r uses seed + r");
  opt("out", "output file (default stdout)");
  opt("format", "tsv | md");
  opt("jobs", "worker threads (0 = hardware concurrency)");
  cmd.add_flag("--header", f.header, "CSV input has a header row");
}

RunConfig build_config(const Flags& f) {
  std::map<std::string, std::string> kv;
  if (f.config) kv = suds::cli::read_key_values(*f.config);
  for (const auto& [k, v] : f.values) {
    if (k == "input") kv.erase("generate");
    if (k == "generate") kv.erase("input");
    kv[k] = v;
  }
  if (f.header) kv["header"] = "true";
  std::map<std::string, std::string> run_keys;
  for (const auto& [k, v] : kv) {
    if (k.rfind("grid-", 0) != 0 && k.rfind("grid_", 0) != 0) run_keys[k] = v;
  }
  RunConfig c;
  suds::cli::apply_key_values(c, run_keys);
  c.validate();
  return c;
}

std::map<std::string, std::string> grid_keys(const Flags& f) {
  std::map<std::string, std::string> out;
  if (f.config) {
    for (const auto& [k, v] : suds::cli::read_key_values(*f.config)) {
      if (k.rfind("grid-", 0) == 0 || k.rfind("grid_", 0) == 0) out["grid-" + k.substr(5)] = v;
    }
  }
  for (const auto& [k, v] : f.values) {
    if (k.rfind("grid-", 0) == 0) out[k] = v;
  }
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw suds::Error("cannot write '" + out + "'");
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drift detection with unsupervised drift sampling"};
  app.require_subcommand(1);

  Flags run_flags, sweep_flags;
  auto* run = app.add_subcommand("run", "run one configuration `repeats` times");
  add_common(*run, run_flags);
  run->add_option_function<std::string>(
      "--selector", [&](const std::string& v) { run_flags.values["selector"] = v; }, "baseline | suds");

  auto* sweep = app.add_subcommand("sweep", "hyperparameter grid over both selectors");
  add_common(*sweep, sweep_flags);
  std::optional<std::string> sweep_selector;
  sweep->add_option("--selector", sweep_selector, "restrict to baseline or suds (default both)");
  for (const char* name : {"grid-w", "grid-rho", "grid-tau", "grid-nu"}) {
    sweep->add_option_function<std::string>(
        std::string("--") + name, [&, name](const std::string& v) { sweep_flags.values[name] = v; },
        "comma-separated values");
  }

  auto* recompute = app.add_subcommand("recompute", "HADAM and avg_diff from a published-results table");
  std::string table_path;
  std::optional<std::string> group;
  std::string recompute_out, recompute_format = "tsv";
  recompute->add_option("--input", table_path, "TSV/CSV with dataset, method, accuracy, annotated, total")->required();
  recompute->add_option("--group", group, "keep only rows whose group column equals this");
  recompute->add_option("--out", recompute_out, "output file (default stdout)");
  recompute->add_option("--format", recompute_format, "tsv | md");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (*run) {
      const RunConfig c = build_config(run_flags);
      emit(suds::cli::cmd_run(c).text, c.out);
    } else if (*sweep) {
      Flags f = sweep_flags;
      f.values.erase("grid-w");
      f.values.erase("grid-rho");
      f.values.erase("grid-tau");
      f.values.erase("grid-nu");
      const RunConfig c = build_config(f);
      auto grid = suds::cli::SweepGrid::defaults(c.detector);
      grid.repeats = c.repeats;
      const bool d3 = c.detector == suds::DetectorKind::d3;
      for (const auto& [k, v] : grid_keys(sweep_flags)) {
        if (k == "grid-w") {
          grid.w = suds::cli::parse_list<std::size_t>(k, v, suds::cli::parse_count);
        } else if (k == "grid-rho") {
          grid.rho = suds::cli::parse_list<double>(k, v, suds::cli::parse_real);
        } else if (k == "grid-tau" || k == "grid-nu") {
          if ((k == "grid-tau") != d3) {
            throw suds::Error(k + " does not apply to detector " + suds::cli::to_string(c.detector));
          }
          grid.third = suds::cli::parse_list<double>(k, v, suds::cli::parse_real);
        } else {
          throw suds::Error("unknown grid key '" + k + "'");
        }
      }
      std::vector<bool> selectors{false, true};
      if (sweep_selector) selectors = {suds::cli::parse_selector_is_suds(*sweep_selector)};
      emit(suds::cli::cmd_sweep(c, grid, selectors).text, c.out);
    } else if (*recompute) {
      const auto format = suds::cli::parse_format(recompute_format);
      emit(suds::cli::cmd_recompute(table_path, group, format).text, recompute_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
