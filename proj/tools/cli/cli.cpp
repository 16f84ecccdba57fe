// Copyright 2026 The structprop Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "structprop/bench.hpp"
#include "structprop/detect.hpp"
#include "structprop/mps.hpp"
#include "structprop/propagate.hpp"
#include "structprop/record_json.hpp"
#include "structprop/search.hpp"
#include "structprop/synth.hpp"
#include "structprop/verify.hpp"

namespace structprop::cli {
namespace {

using nlohmann::json;

// Raised for problems with the invocation that CLI11 cannot see, such as an
// unknown family name; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  double tolerance = Tolerances{}.feasibility;
  bool json = false;
  bool quiet = false;
  bool timing = false;
  bool int_default_unbounded = false;
};

struct Context {
  GlobalOptions global;
  std::ostream& out;
  std::ostream& err;

  void log(const std::string& message) const {
    if (!global.quiet) err << "structprop: " << message << '\n';
  }

  std::uint64_t seed() const {
    if (global.seed) return *global.seed;
    if (const char* env = std::getenv("STRUCTPROP_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        const std::uint64_t value = std::stoull(env, &used);
        if (used == std::string(env).size()) return value;
      } catch (const std::exception&) {
      }
      throw UsageError(std::string("STRUCTPROP_SEED is not an unsigned integer: ") + env);
    }
    return 0;
  }

  Tolerances tolerances() const {
    Tolerances tol;
    tol.feasibility = global.tolerance;
    return tol;
  }

  MpsOptions mps() const {
    MpsOptions options;
    options.int_default_unbounded = global.int_default_unbounded;
    return options;
  }

  DetectConfig detect() const {
    DetectConfig config;
    config.tolerances = tolerances();
    return config;
  }

  PropagatorConfig propagator() const {
    PropagatorConfig config;
    config.tolerances = tolerances();
    return config;
  }

  void emit(const json& doc) const { out << doc.dump(2) << '\n'; }
};

Family parse_family(const std::string& name) {
  const std::optional<Family> family = family_from_name(name);
  if (!family) throw UsageError("unknown family: " + name);
  return *family;
}

// "all" or a single family name.
std::vector<Family> family_selection(const std::string& name) {
  if (name == "all") return {all_families().begin(), all_families().end()};
  return {parse_family(name)};
}

std::string family_choices() {
  std::string text = "all";
  for (Family f : all_families()) text += "|" + std::string(family_name(f));
  return text;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return json::parse(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

double stated_objective(const MipModel& model, double minimized) {
  return model.sense == ObjectiveSense::kMaximize ? -minimized : minimized;
}

std::string format_bound(double value) {
  std::ostringstream text;
  text << std::setprecision(12) << value;
  return text.str();
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
  std::string file;
  std::string family = "all";
  std::string records_out;
};

int cmd_detect(const Context& ctx, const DetectArgs& args) {
  const std::vector<Family> families = family_selection(args.family);
  const MipModel model = read_mps_file(args.file, ctx.mps());
  std::vector<SemanticRecord> records;
  if (families.size() == 1) {
    std::vector<std::string> warnings;
    records = detect_family(model, families.front(), ctx.detect(), {}, &warnings);
    for (const std::string& w : warnings) ctx.log("warning: " + w);
  } else {
    DetectionReport report = detect_all(model, ctx.detect());
    for (const std::string& w : report.warnings) ctx.log("warning: " + w);
    records = std::move(report.records);
  }
  const json doc = records_to_json(records, model);
  if (!args.records_out.empty()) write_text_file(args.records_out, doc.dump(2) + "\n");
  ctx.log("detected " + std::to_string(records.size()) + " record(s) in " + args.file);
  if (ctx.global.json) {
    ctx.emit(doc);
  } else {
    for (const SemanticRecord& rec : records) {
      ctx.out << family_name(rec.family) << "\tscope=" << rec.scope.size()
              << "\tevidence=" << rec.evidence.size() << '\n';
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------- propagate

struct PropagateArgs {
  std::string file;
  std::string records;
  bool detect = false;
  int rounds = PropagatorConfig{}.max_fixpoint_rounds;
  bool with_rows = false;
};

int cmd_propagate(const Context& ctx, const PropagateArgs& args) {
  if (args.records.empty() == !args.detect) {
    throw UsageError("propagate needs exactly one of --records and --detect");
  }
  if (args.rounds < 1) throw UsageError("--fixpoint-rounds must be at least 1");
  const MipModel model = read_mps_file(args.file, ctx.mps());
  const std::vector<SemanticRecord> records =
      args.detect ? detect_all(model, ctx.detect()).records
                  : records_from_json(read_json_file(args.records), model);
  PropagatorConfig config = ctx.propagator();
  config.max_fixpoint_rounds = args.rounds;
  config.include_rows = args.with_rows;
  DomainBox box = DomainBox::from_model(model);
  const PropagationOutcome outcome = run_fixpoint(model, records, box, config);
  ctx.log("propagated " + std::to_string(records.size()) + " record(s): " +
          std::to_string(outcome.bound_changes.size()) + " bound change(s)" +
          (outcome.cutoff ? ", cutoff" : ""));
  if (ctx.global.json) {
    json doc = outcome_to_json(outcome, model);
    if (!ctx.global.timing) doc.erase("prop_time_ms");
    doc["records"] = records.size();
    ctx.emit(doc);
  } else {
    for (const BoundChange& bc : outcome.bound_changes) {
      ctx.out << variable_label(model, bc.var) << '\t'
              << (bc.side == BoundSide::kLower ? "lb" : "ub") << '\t'
              << format_bound(bc.old_value) << " -> " << format_bound(bc.new_value) << '\n';
    }
    if (outcome.cutoff) ctx.out << "cutoff\n";
  }
  return kExitOk;
}

// ----------------------------------------------------------------- synth

struct SynthArgs {
  std::string family;
  std::string size;
  std::string obfuscate = "on";
  int noise_rows = ObfuscationConfig{}.noise_rows;
  double sign_flip_prob = ObfuscationConfig{}.sign_flip_prob;
  bool allow_infeasible = false;
  int count = 1;
  std::string out_dir = ".";
};

// "N" or "NxM".
SynthSize parse_size(const std::string& text) {
  SynthSize size;
  if (text.empty()) return size;
  try {
    const std::size_t x = text.find('x');
    std::size_t used = 0;
    size.n = std::stoi(text.substr(0, x), &used);
    if (used != (x == std::string::npos ? text.size() : x)) throw std::invalid_argument(text);
    if (x != std::string::npos) {
      const std::string rest = text.substr(x + 1);
      size.m = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError("--size must be N or NxM, got " + text);
  }
  return size;
}

int cmd_synth(const Context& ctx, const SynthArgs& args) {
  const Family family = parse_family(args.family);
  if (args.obfuscate != "on" && args.obfuscate != "off") {
    throw UsageError("--obfuscate must be on or off");
  }
  if (args.count < 1) throw UsageError("--count must be at least 1");
  SynthSize size = parse_size(args.size);
  size.allow_infeasible = args.allow_infeasible;
  const std::uint64_t seed = ctx.seed();
  json written = json::array();
  for (int i = 0; i < args.count; ++i) {
    const std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(i);
    PlantedInstance instance = reverse_sample(family, size, instance_seed);
    if (args.obfuscate == "on") {
      ObfuscationConfig config;
      config.noise_rows = args.noise_rows;
      config.sign_flip_prob = args.sign_flip_prob;
      config.seed = instance_seed;
      instance = obfuscate(instance, config);
    }
    const std::string stem = std::string(family_name(family)) + "_" + std::to_string(instance_seed);
    const std::filesystem::path dir(args.out_dir);
    write_text_file(dir / (stem + ".mps"), write_mps(instance.model));
    write_text_file(dir / (stem + ".json"), sidecar_json(instance).dump(2) + "\n");
    written.push_back({{"family", family_name(family)},
                       {"seed", instance_seed},
                       {"mps", (dir / (stem + ".mps")).string()},
                       {"sidecar", (dir / (stem + ".json")).string()},
                       {"variables", instance.model.num_variables()},
                       {"rows", instance.model.num_rows()},
                       {"witness_feasible", instance.witness_feasible}});
  }
  ctx.log("wrote " + std::to_string(args.count) + " instance(s) to " + args.out_dir);
  if (ctx.global.json) {
    ctx.emit({{"instances", written}});
  } else {
    for (const json& entry : written) ctx.out << entry["mps"].get<std::string>() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string family = "all";
  std::optional<std::uint64_t> suite_seed;
  std::string report;
  int detector_instances = GateConfig{}.detector_instances;
  int soundness_instances = GateConfig{}.soundness_instances;
  double smoke_time_limit = GateConfig{}.smoke_time_limit;
};

int cmd_verify(const Context& ctx, const VerifyArgs& args) {
  const std::vector<Family> families = family_selection(args.family);
  GateConfig config;
  config.suite_seed = args.suite_seed ? *args.suite_seed : ctx.seed();
  config.detector_instances = args.detector_instances;
  config.soundness_instances = args.soundness_instances;
  config.smoke_time_limit = args.smoke_time_limit;
  json reports = json::array();
  bool all_ready = true;
  for (Family family : families) {
    const std::vector<GateResult> results = run_gate_ladder(family_descriptor(family), config);
    const bool ready = ladder_passed(results);
    all_ready = all_ready && ready;
    ctx.log(std::string(family_name(family)) + ": " +
            (ready ? "benchmark_ready" : "not ready"));
    reports.push_back(gate_report_json(family_name(family), results, config, ctx.global.timing));
  }
  const json doc = {{"benchmark_ready", all_ready}, {"families", reports}};
  if (!args.report.empty()) write_text_file(args.report, doc.dump(2) + "\n");
  if (ctx.global.json) {
    ctx.emit(doc);
  } else {
    for (const json& family : reports) {
      ctx.out << family["family"].get<std::string>() << '\t'
              << (family["benchmark_ready"].get<bool>() ? "benchmark_ready" : "FAILED");
      for (const json& gate : family["gates"]) {
        if (gate["status"] == "fail") {
          ctx.out << '\t' << gate["gate"].get<std::string>() << ": "
                  << gate["detail"].get<std::string>();
        }
      }
      ctx.out << '\n';
    }
  }
  return all_ready ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string file;
  std::string propfreq = "all";
  std::int64_t node_limit = 0;
  double time_limit = 0.0;
  std::string records;
  bool no_records = false;
  bool assert_feasible = false;
};

int cmd_search(const Context& ctx, const SearchArgs& args) {
  if (args.propfreq != "root" && args.propfreq != "all") {
    throw UsageError("--propfreq must be root or all");
  }
  if (args.node_limit < 0 || args.time_limit < 0.0) {
    throw UsageError("limits must be non-negative");
  }
  if (args.no_records && !args.records.empty()) {
    throw UsageError("--records and --no-records are exclusive");
  }
  const MipModel model = read_mps_file(args.file, ctx.mps());
  std::vector<SemanticRecord> records;
  if (!args.records.empty()) {
    records = records_from_json(read_json_file(args.records), model);
  } else if (!args.no_records) {
    records = detect_all(model, ctx.detect()).records;
  }
  SearchConfig config;
  config.propfreq = args.propfreq == "root" ? PropFrequency::kRootOnly : PropFrequency::kEveryNode;
  config.node_limit = args.node_limit;
  config.time_limit = args.time_limit;
  config.propagator = ctx.propagator();
  const SearchResult result = dfs_solve(model, records, config);
  const SearchStats& stats = result.stats;

  json doc = {{"status", search_status_name(stats.status)},
              {"nodes", stats.nodes},
              {"calls", stats.handler_calls},
              {"domain_reductions", stats.domain_reductions},
              {"cutoffs", stats.cutoffs},
              {"records", records.size()},
              {"objective", result.objective
                                ? json(stated_objective(model, *result.objective))
                                : json(nullptr)}};
  if (ctx.global.timing) {
    doc["prop_time_ms"] = std::chrono::duration<double, std::milli>(stats.prop_time).count();
    doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(stats.wall_time).count();
  }
  ctx.log("search finished: " + std::string(search_status_name(stats.status)) + " after " +
          std::to_string(stats.nodes) + " node(s)");
  if (ctx.global.json) {
    ctx.emit(doc);
  } else {
    ctx.out << "status\t" << search_status_name(stats.status) << "\nnodes\t" << stats.nodes
            << "\ncalls\t" << stats.handler_calls << "\ndomain_reductions\t"
            << stats.domain_reductions << "\ncutoffs\t" << stats.cutoffs << '\n';
    if (result.objective) {
      ctx.out << "objective\t" << format_bound(stated_objective(model, *result.objective))
              << '\n';
    }
  }
  if (args.assert_feasible && stats.status == SearchStatus::kInfeasible) {
    ctx.log("instance is infeasible");
    return kExitFailure;
  }
  return kExitOk;
}

// ----------------------------------------------------------------- bench

struct BenchArgs {
  std::string dir;
  std::vector<std::string> families;
  double time_limit = 60.0;
  int jobs = 1;
  std::string out_dir;
  std::string label;
  std::string propfreq = "all";
  std::int64_t node_limit = 0;
};

int cmd_bench(const Context& ctx, const BenchArgs& args) {
  if (args.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (args.time_limit < 0.0) throw UsageError("--time-limit must be non-negative");
  if (args.propfreq != "root" && args.propfreq != "all") {
    throw UsageError("--propfreq must be root or all");
  }
  BenchOptions options;
  for (const std::string& name : args.families) {
    for (Family f : family_selection(name)) {
      if (std::find(options.families.begin(), options.families.end(), f) ==
          options.families.end()) {
        options.families.push_back(f);
      }
    }
  }
  options.baseline.time_limit = args.time_limit;
  options.baseline.node_limit = args.node_limit;
  options.baseline.propagator = ctx.propagator();
  options.plugin = options.baseline;
  options.plugin.propfreq =
      args.propfreq == "root" ? PropFrequency::kRootOnly : PropFrequency::kEveryNode;
  options.jobs = args.jobs;
  options.mps = ctx.mps();
  options.detect = ctx.detect();

  const BenchReport report = run_benchmark(args.dir, options);
  for (const std::string& reason : report.skipped) ctx.log("skipped " + reason);
  ctx.log("benchmarked " + std::to_string(report.runs.size() / 2) + " instance(s)");
  if (!args.out_dir.empty()) {
    const std::string label =
        args.label.empty() ? std::filesystem::path(args.dir).filename().string() : args.label;
    write_report(report, args.out_dir, label.empty() ? "bench" : label);
  }
  if (ctx.global.json) {
    ctx.emit(report_to_json(report, ctx.global.timing));
  } else {
    ctx.out << coverage_csv(report) << '\n' << performance_csv(report) << '\n'
            << diagnostics_csv(report);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect, propagate and benchmark global-constraint structure in MIP models",
               "structprop"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed (falls back to STRUCTPROP_SEED, then 0)");
  app.add_option("--tolerance", global.tolerance, "Feasibility tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", global.json, "Write machine-readable JSON to standard output");
  app.add_flag("--quiet", global.quiet, "Suppress log messages on standard error");
  app.add_flag("--timing", global.timing, "Include wall-clock measurements in JSON output");
  app.add_flag("--int-default-unbounded", global.int_default_unbounded,
               "Integer MPS columns without bounds default to [0, inf) instead of [0, 1]");

  DetectArgs detect;
  CLI::App* detect_cmd = app.add_subcommand("detect", "Detect structure records in an MPS file");
  detect_cmd->add_option("file", detect.file, "MPS file")->required()->check(CLI::ExistingFile);
  detect_cmd->add_option("--family", detect.family, family_choices());
  detect_cmd->add_option("--records-out", detect.records_out, "Write the records JSON here");

  PropagateArgs propagate;
  CLI::App* propagate_cmd =
      app.add_subcommand("propagate", "Run record propagators to a fixpoint on the root box");
  propagate_cmd->add_option("file", propagate.file, "MPS file")
      ->required()
      ->check(CLI::ExistingFile);
  propagate_cmd->add_option("--records", propagate.records, "Records JSON to propagate")
      ->check(CLI::ExistingFile);
  propagate_cmd->add_flag("--detect", propagate.detect, "Detect records first");
  propagate_cmd->add_option("--fixpoint-rounds", propagate.rounds, "Fixpoint round cap");
  propagate_cmd->add_flag("--with-rows", propagate.with_rows,
                          "Also tighten every model row in the fixpoint");

  SynthArgs synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate planted instances with ground-truth sidecars");
  synth_cmd->add_option("--family", synth.family, "Family name")->required();
  synth_cmd->add_option("--size", synth.size, "N or NxM (family-specific; default random)");
  synth_cmd->add_option("--obfuscate", synth.obfuscate, "on|off");
  synth_cmd->add_option("--noise-rows", synth.noise_rows, "Noise rows when obfuscating")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--sign-flip-prob", synth.sign_flip_prob, "Row sign flip probability")
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_flag("--allow-infeasible", synth.allow_infeasible,
                      "Fix a few integer variables at random afterwards");
  synth_cmd->add_option("--count", synth.count, "Instances, with seeds seed..seed+count-1");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory");

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the gate ladder per family");
  verify_cmd->add_option("--family", verify.family, family_choices());
  verify_cmd->add_option("--suite-seed", verify.suite_seed, "Suite seed (default: --seed)");
  verify_cmd->add_option("--report", verify.report, "Write the gate report JSON here");
  verify_cmd->add_option("--detector-instances", verify.detector_instances)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--soundness-instances", verify.soundness_instances)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--smoke-time-limit", verify.smoke_time_limit, "Seconds")
      ->check(CLI::PositiveNumber);

  SearchArgs search;
  CLI::App* search_cmd = app.add_subcommand("search", "Depth-first branch and bound");
  search_cmd->add_option("file", search.file, "MPS file")->required()->check(CLI::ExistingFile);
  search_cmd->add_option("--propfreq", search.propfreq, "root|all");
  search_cmd->add_option("--node-limit", search.node_limit, "0 = unlimited");
  search_cmd->add_option("--time-limit", search.time_limit, "Seconds, 0 = unlimited");
  search_cmd->add_option("--records", search.records, "Records JSON instead of detection")
      ->check(CLI::ExistingFile);
  search_cmd->add_flag("--no-records", search.no_records, "Search without record propagation");
  search_cmd->add_flag("--assert-feasible", search.assert_feasible,
                       "Exit 1 if the instance is proven infeasible");

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Paired baseline / plugin runs over a directory of MPS files");
  bench_cmd->add_option("--dir", bench.dir, "Instance directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--families", bench.families, "Comma-separated families (default all)")
      ->delimiter(',');
  bench_cmd->add_option("--time-limit", bench.time_limit, "Seconds per search");
  bench_cmd->add_option("--node-limit", bench.node_limit, "Nodes per search, 0 = unlimited");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads");
  bench_cmd->add_option("--out", bench.out_dir, "Write CSV and JSON reports here");
  bench_cmd->add_option("--label", bench.label, "Report file prefix (default: directory name)");
  bench_cmd->add_option("--propfreq", bench.propfreq, "Plugin propagation frequency: root|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "structprop: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const Context ctx{global, out, err};
  try {
    if (*detect_cmd) return cmd_detect(ctx, detect);
    if (*propagate_cmd) return cmd_propagate(ctx, propagate);
    if (*synth_cmd) return cmd_synth(ctx, synth);
    if (*verify_cmd) return cmd_verify(ctx, verify);
    if (*search_cmd) return cmd_search(ctx, search);
    if (*bench_cmd) return cmd_bench(ctx, bench);
  } catch (const UsageError& e) {
    err << "structprop: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "structprop: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace structprop::cli
