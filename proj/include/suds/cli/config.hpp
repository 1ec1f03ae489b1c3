#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "suds/error.hpp"
#include "suds/evaluation/harness.hpp"
#include "suds/streams/generators.hpp"
#include "suds/streams/loaders.hpp"

namespace suds::cli {

enum class OutputFormat { tsv, md };

/// Everything one `run` invocation needs.
struct RunConfig {
  std::optional<std::string> input;
  std::optional<std::string> generate;
  DetectorKind detector = DetectorKind::d3;
  bool suds = false;
  std::optional<std::size_t> w;
  std::optional<double> rho;
  double tau = 0.7;
  double nu = 0.5;
  UpdateMode update_mode = UpdateMode::prequential_update;
  std::size_t repeats = 1;
  std::uint64_t seed = 1;
  std::string out;
  OutputFormat format = OutputFormat::tsv;
  bool header = false;
  // 0 = hardware concurrency.
  std::size_t jobs = 0;

  std::size_t window() const { return w.value_or(detector == DetectorKind::d3 ? 100 : 250); }
  double ratio() const { return rho.value_or(detector == DetectorKind::d3 ? 0.1 : 0.3); }
  double tau_or_nu() const { return detector == DetectorKind::d3 ? tau : nu; }

  void validate() const {
    detail::require(input.has_value() != generate.has_value(), "exactly one of --input and --generate is required");
    detail::require(repeats >= 1, "--repeats must be at least 1");
  }

  HarnessConfig harness(std::size_t repeat) const {
    HarnessConfig h;
    h.detector = detector;
    h.d3.w = window();
    h.d3.rho = ratio();
    h.d3.tau = tau;
    h.ocdd.w = window();
    h.ocdd.rho = ratio();
    h.ocdd.nu = nu;
    if (detector == DetectorKind::d3) h.selector = suds ? SelectorKind::suds_d3 : SelectorKind::baseline_d3;
    else h.selector = suds ? SelectorKind::suds_ocdd : SelectorKind::baseline_ocdd;
    h.update_mode = update_mode;
    h.seed = seed + repeat;
    h.validate();
    return h;
  }
};

inline std::string to_string(DetectorKind k) { return k == DetectorKind::d3 ? "d3" : "ocdd"; }
inline std::string to_string(UpdateMode m) {
  return m == UpdateMode::prequential_update ? "prequential_update" : "retrain_only";
}

inline DetectorKind parse_detector(const std::string& s) {
  if (s == "d3") return DetectorKind::d3;
  if (s == "ocdd") return DetectorKind::ocdd;
  throw Error("unknown detector '" + s + "' (expected d3 or ocdd)");
}

inline bool parse_selector_is_suds(const std::string& s) {
  if (s == "suds") return true;
  if (s == "baseline") return false;
  throw Error("unknown selector '" + s + "' (expected baseline or suds)");
}

inline UpdateMode parse_update_mode(const std::string& s) {
  if (s == "prequential_update" || s == "prequential") return UpdateMode::prequential_update;
  if (s == "retrain_only" || s == "retrain") return UpdateMode::retrain_only;
  throw Error("unknown update mode '" + s + "' (expected prequential_update or retrain_only)");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "tsv") return OutputFormat::tsv;
  if (s == "md") return OutputFormat::md;
  throw Error("unknown format '" + s + "' (expected tsv or md)");
}

inline std::string trimmed(const std::string& s) { return std::string(detail::trim(s)); }

// Plain-text key=value file; '#' starts a comment.
inline std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trimmed(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(line_no) + ": expected key=value");
    out[trimmed(t.substr(0, eq))] = trimmed(t.substr(eq + 1));
  }
  return out;
}

inline std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  return read_key_values(in);
}

inline double parse_real(const std::string& key, const std::string& v) {
  double out;
  if (!detail::parse_double(v, out)) throw ParseError("'" + key + "' expects a number, got '" + v + "'");
  return out;
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  const double d = parse_real(key, v);
  if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
    throw ParseError("'" + key + "' expects a nonnegative integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(d);
}

template <class T, class F>
std::vector<T> parse_list(const std::string& key, const std::string& v, F parse_one) {
  std::vector<T> out;
  for (const auto& item : detail::split_fields(v, ',')) {
    if (trimmed(item).empty()) continue;
    out.push_back(parse_one(key, trimmed(item)));
  }
  if (out.empty()) throw ParseError("'" + key + "' needs at least one value");
  return out;
}

// Applies file keys (same names as the long flags, without dashes) to a config.
inline void apply_key_values(RunConfig& c, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, v] : kv) {
    if (key == "input") c.input = v;
    else if (key == "generate") c.generate = v;
    else if (key == "detector") c.detector = parse_detector(v);
    else if (key == "selector") c.suds = parse_selector_is_suds(v);
    else if (key == "w") c.w = parse_count(key, v);
    else if (key == "rho") c.rho = parse_real(key, v);
    else if (key == "tau") c.tau = parse_real(key, v);
    else if (key == "nu") c.nu = parse_real(key, v);
    else if (key == "update-mode" || key == "update_mode") c.update_mode = parse_update_mode(v);
    else if (key == "repeats") c.repeats = parse_count(key, v);
    else if (key == "seed") c.seed = parse_count(key, v);
    else if (key == "out") c.out = v;
    else if (key == "format") c.format = parse_format(v);
    else if (key == "header") c.header = v == "true" || v == "1" || v == "yes";
    else if (key == "jobs") c.jobs = parse_count(key, v);
    else if (key.rfind("grid-", 0) == 0 || key.rfind("grid_", 0) == 0) continue;  // sweep-only keys
    else throw ParseError("unknown config key '" + key + "'");
  }
}

// ---------------------------------------------------------------------------
// Generator specs: "kind:key=value,key=value". Kinds: sea, hyperplane, rbf.
// Shared keys: length, concepts (evenly spaced), width (0 = abrupt),
// drifts (explicit indices separated by ';').

struct GeneratorSpec {
  std::string kind;
  std::map<std::string, std::string> params;

  std::string name() const { return "gen:" + kind; }
};

inline GeneratorSpec parse_generator(const std::string& text) {
  GeneratorSpec g;
  const auto colon = text.find(':');
  g.kind = trimmed(text.substr(0, colon));
  if (g.kind != "sea" && g.kind != "hyperplane" && g.kind != "rbf") {
    throw ParseError("unknown generator '" + g.kind + "' (expected sea, hyperplane or rbf)");
  }
  if (colon != std::string::npos) {
    for (const auto& item : detail::split_fields(text.substr(colon + 1), ',')) {
      if (trimmed(item).empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("generator parameter '" + item + "' is not key=value");
      g.params[trimmed(item.substr(0, eq))] = trimmed(item.substr(eq + 1));
    }
  }
  return g;
}

inline std::vector<TaggedSample> generate_stream(const GeneratorSpec& g, std::uint64_t seed) {
  auto take = g.params;
  auto pop = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = take.find(key);
    if (it == take.end()) return std::nullopt;
    std::string v = it->second;
    take.erase(it);
    return v;
  };
  StreamSpec stream;
  stream.seed = seed;
  if (auto v = pop("length")) stream.length = parse_count("length", *v);
  const auto width_text = pop("width");
  const std::size_t width = width_text ? parse_count("width", *width_text) : 0;
  if (auto v = pop("drifts")) {
    for (const auto& item : detail::split_fields(*v, ';')) {
      if (!trimmed(item).empty()) stream.drift_schedule.push_back({parse_count("drifts", item), width});
    }
  } else {
    const auto concepts_text = pop("concepts");
    const std::size_t concepts = concepts_text ? parse_count("concepts", *concepts_text) : 1;
    detail::require(concepts >= 1, "generator: concepts must be at least 1");
    stream.drift_schedule = even_schedule(stream.length, concepts, width);
  }

  std::vector<TaggedSample> out;
  if (g.kind == "sea") {
    SeaSpec s;
    s.stream = stream;
    if (auto v = pop("noise")) s.noise = parse_real("noise", *v);
    if (!take.empty()) throw ParseError("generator sea: unknown parameter '" + take.begin()->first + "'");
    out = gen_sea(s);
  } else if (g.kind == "hyperplane") {
    HyperplaneSpec s;
    s.stream = stream;
    if (auto v = pop("dim")) s.dim = parse_count("dim", *v);
    if (auto v = pop("rate")) s.rate = parse_real("rate", *v);
    if (auto v = pop("noise")) s.noise = parse_real("noise", *v);
    if (!take.empty()) throw ParseError("generator hyperplane: unknown parameter '" + take.begin()->first + "'");
    out = gen_hyperplane(s);
  } else {
    RbfSwitchSpec s;
    s.stream = stream;
    if (auto v = pop("dim")) s.dim = parse_count("dim", *v);
    if (auto v = pop("k")) s.k = parse_count("k", *v);
    if (auto v = pop("classes")) s.n_classes = parse_count("classes", *v);
    if (auto v = pop("sigma")) s.sigma = parse_real("sigma", *v);
    if (auto v = pop("extent")) s.extent = parse_real("extent", *v);
    if (!take.empty()) throw ParseError("generator rbf: unknown parameter '" + take.begin()->first + "'");
    out = gen_rbf_switch(s);
  }
  return out;
}

}  // namespace suds::cli
