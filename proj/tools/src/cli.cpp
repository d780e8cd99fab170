#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "evoxplain/error.hpp"
#include "evoxplain/explainer.hpp"
#include "evoxplain/lime.hpp"
#include "evoxplain/png_io.hpp"
#include "evoxplain/remote_classifier.hpp"
#include "evoxplain/render.hpp"
#include "evoxplain/report_json.hpp"
#include "evoxplain/scenario.hpp"
#include "evoxplain/slic.hpp"
#include "evoxplain/suite.hpp"
#include "json.hpp"

namespace evoxplain::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kModelEnv = "EVOXPLAIN_MODEL_URL";
constexpr const char* kBuiltinPrefix = "builtin:";

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Transport:
      return kTransportError;
    case ErrorKind::Remote:
    case ErrorKind::Protocol:
    case ErrorKind::Numeric:
      return kProtocolError;
    case ErrorKind::Input:
    case ErrorKind::Parameter:
    case ErrorKind::Refused:
      return kInputError;
  }
  return kInputError;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Input, "cannot write " + path.string());
  out << text;
}

// Plain key=value config file; '#' starts a comment line. Keys are long flag
// names without the leading dashes.
std::vector<std::string> read_config(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::string> tokens;
  std::string line;
  std::size_t line_no = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::Input, path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    tokens.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  return tokens;
}

struct ModelHandle {
  std::unique_ptr<Classifier> owned;
  const Classifier* model = nullptr;
  std::optional<Scenario> scenario;
};

std::optional<ScenarioSpec> builtin_spec(const std::string& name) {
  if (name == "demo") return demo_scenario_spec();
  for (const auto& spec : default_suite_specs()) {
    if (spec.name == name) return spec;
  }
  return std::nullopt;
}

struct RemoteFlags {
  long timeout_ms = 30000;
  std::size_t max_in_flight = 4;
};

ModelHandle open_model(const std::string& spec, const RemoteFlags& remote) {
  ModelHandle handle;
  if (spec.rfind(kBuiltinPrefix, 0) == 0) {
    const std::string name = spec.substr(std::string(kBuiltinPrefix).size());
    const auto scenario_spec = builtin_spec(name);
    if (!scenario_spec) fail(ErrorKind::Parameter, "unknown builtin model '" + name + "'");
    handle.scenario.emplace(make_scenario(*scenario_spec));
    handle.model = &handle.scenario->classifier;
    return handle;
  }
  RemoteOptions options;
  options.timeout = std::chrono::milliseconds(remote.timeout_ms);
  options.max_in_flight = remote.max_in_flight;
  handle.owned = std::make_unique<RemoteClassifier>(spec, options);
  handle.model = handle.owned.get();
  return handle;
}

// ---------------------------------------------------------------- segment

struct SegmentOptions {
  std::string image;
  std::size_t superpixels = 100;
  double compactness = 10.0;
  std::size_t max_iters = 10;
  std::string out;
  std::string map_out;
  std::string tint_out;
  bool check = false;
};

int cmd_segment(const SegmentOptions& o, std::ostream& out, std::ostream& err) {
  const RasterImage image = read_png(o.image);
  SlicParams params;
  params.k = o.superpixels;
  params.compactness = o.compactness;
  params.max_iters = o.max_iters;
  SlicTrace trace;
  const SuperpixelMap map = segment(image, params, &trace);

  if (!o.out.empty()) write_png(o.out, render_boundaries(image, map));
  if (!o.tint_out.empty()) write_png(o.tint_out, render_label_tint(map));
  if (!o.map_out.empty()) write_text(o.map_out, superpixel_map_to_json(map));

  out << "ns: " << map.ns() << "\n";
  out << "iterations: " << trace.iterations << "\n";
  if (o.check) {
    const bool sized = map.width() == image.width() && map.height() == image.height();
    const bool bounded = map.ns() <= o.superpixels;
    const bool connected = map.is_four_connected();
    out << "check: dimensions " << (sized ? "ok" : "FAIL") << ", ns<=k " << (bounded ? "ok" : "FAIL")
        << ", 4-connected " << (connected ? "ok" : "FAIL") << "\n";
    if (!(sized && bounded && connected)) {
      err << "segmentation invariants violated\n";
      return kProtocolError;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- explain

struct ExplainOptions {
  std::string image;
  std::string model;
  std::string method = "elime";
  std::uint64_t seed = 0;
  std::optional<std::size_t> superpixels;
  double compactness = 10.0;
  GaParams ga;
  bool uniform_crossover = false;
  LimeParams lime;
  std::optional<double> kernel_width;
  std::optional<std::size_t> budget;
  std::string budget_from;
  std::size_t jobs = 1;
  RemoteFlags remote;
  std::string out;
  std::string lime_out;
  std::string report;
  bool record_time = false;
};

nlohmann::ordered_json explanation_json(const Explanation& e, const ExplainOptions& o,
                                        const std::optional<Scenario>& scenario) {
  auto j = nlohmann::ordered_json::parse(explanation_to_json(e));
  if (!o.record_time) j["wall_time_s"] = 0.0;
  if (scenario) {
    j["ground_truth"] = {{"salient", scenario->salient},
                         {"distractors", scenario->distractors},
                         {"iou", iou(e.best.ones_indices(), scenario->salient)}};
  }
  return j;
}

void print_summary(std::ostream& out, const Explanation& e) {
  out << e.method << ": target " << e.target_label << ", original " << e.original_probability
      << ", best " << e.best_fitness << ", selected " << e.best.count_ones() << "/" << e.best.size()
      << ", calls " << e.classifier_calls << ", " << e.wall_time_s << " s\n";
  out << "bits: " << e.best.to_string() << "\n";
}

int cmd_explain(ExplainOptions o, std::ostream& out, std::ostream&) {
  if (o.method != "elime" && o.method != "lime" && o.method != "compare") {
    fail(ErrorKind::Parameter, "--method must be elime, lime or compare");
  }
  if (o.model.empty()) {
    fail(ErrorKind::Parameter, std::string("no model given (use --model or ") + kModelEnv + ")");
  }
  ModelHandle handle = open_model(o.model, o.remote);

  std::optional<RasterImage> image;
  if (!o.image.empty()) {
    image.emplace(read_png(o.image));
  } else if (handle.scenario) {
    image.emplace(handle.scenario->reference);
  } else {
    fail(ErrorKind::Parameter, "--image is required for remote models");
  }

  SlicParams slic;
  slic.k = o.superpixels.value_or(handle.scenario ? handle.scenario->map.ns() : 100);
  slic.compactness = o.compactness;
  const SuperpixelMap map = segment(*image, slic);

  o.ga.seed = o.seed;
  o.ga.workers = o.jobs;
  o.ga.crossover = o.uniform_crossover ? CrossoverKind::Uniform : CrossoverKind::SinglePoint;
  o.lime.seed = o.seed;
  o.lime.workers = o.jobs;
  o.lime.kernel_width = o.kernel_width;

  const Classifier& model = *handle.model;
  nlohmann::ordered_json report;

  std::optional<Explanation> elime;
  if (o.method == "elime" || o.method == "compare") {
    elime = evolve(model, *image, map, o.ga);
    print_summary(out, *elime);
    if (!o.out.empty()) write_png(o.out, decode_mask(elime->best, *image, map));
    report = explanation_json(*elime, o, handle.scenario);
  }

  if (o.method == "lime" || o.method == "compare") {
    std::size_t budget = 0;
    if (elime) {
      budget = elime->best.count_ones();
    } else if (o.budget) {
      budget = *o.budget;
    } else if (!o.budget_from.empty()) {
      budget = explanation_from_json(read_text(o.budget_from)).best.count_ones();
    } else {
      fail(ErrorKind::Parameter, "--method lime needs --budget or --budget-from");
    }
    budget = std::max<std::size_t>(budget, 1);
    const Explanation lime = explain_lime(model, *image, map, o.lime, budget);
    print_summary(out, lime);
    const std::string& mask_path = o.method == "compare" ? o.lime_out : o.out;
    if (!mask_path.empty()) write_png(mask_path, decode_mask(lime.best, *image, map));
    auto lime_json = explanation_json(lime, o, handle.scenario);
    if (o.method == "compare") {
      nlohmann::ordered_json both;
      both["elime"] = std::move(report);
      both["lime"] = std::move(lime_json);
      both["equal_cardinality"] = elime->best.count_ones() == lime.best.count_ones();
      report = std::move(both);
    } else {
      report = std::move(lime_json);
    }
  }

  if (!o.report.empty()) write_text(o.report, report.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::string suite;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  std::string out_dir = "bench-out";
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream&) {
  SuiteConfig config = o.suite.empty() ? parse_suite("{}") : parse_suite(read_text(o.suite));
  if (o.runs) config.runs = *o.runs;
  if (o.seed) config.base_seed = *o.seed;
  config.ga.workers = o.jobs;
  config.lime.workers = o.jobs;
  config.validate();

  std::vector<Scenario> scenarios;
  for (const auto& spec : config.scenarios) scenarios.push_back(make_scenario(spec));
  const auto reports = run_suite(scenarios, config);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_text(dir / "report.json", run_reports_to_json(reports));
  const std::string csv = run_reports_to_csv(reports);
  write_text(dir / "report.csv", csv);
  out << csv;
  return kOk;
}

// ---------------------------------------------------------------- check-model

int cmd_check_model(const std::string& url, const RemoteFlags& remote, std::ostream& out,
                    std::ostream&) {
  if (url.empty()) fail(ErrorKind::Parameter, std::string("no model URL (use --model or ") + kModelEnv + ")");
  RemoteOptions options;
  options.timeout = std::chrono::milliseconds(remote.timeout_ms);
  options.max_in_flight = remote.max_in_flight;
  const RemoteClassifier model(url, options);
  out << "classes: " << model.health() << "\n";
  return kOk;
}

void add_remote_flags(CLI::App* cmd, RemoteFlags& remote) {
  cmd->add_option("--timeout-ms", remote.timeout_ms, "Per-request timeout for remote models")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-in-flight", remote.max_in_flight, "Concurrent requests to a remote model")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolve superpixel explanations for black-box image classifiers", "evoxplain"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_file;
  app.add_option("--config", config_file,
                 "key=value file of defaults; explicit flags take precedence");

  SegmentOptions seg;
  auto* segment_cmd = app.add_subcommand("segment", "Compute SLIC superpixels for a PNG");
  segment_cmd->add_option("--image", seg.image, "Input PNG")->required();
  segment_cmd->add_option("--superpixels", seg.superpixels, "Requested superpixel count");
  segment_cmd->add_option("--compactness", seg.compactness, "Compactness m in [1, 40]");
  segment_cmd->add_option("--max-iters", seg.max_iters, "Iteration cap");
  segment_cmd->add_option("--out", seg.out, "Boundary overlay PNG");
  segment_cmd->add_option("--map-out", seg.map_out, "Label map JSON");
  segment_cmd->add_option("--tint-out", seg.tint_out, "Label tint PNG");
  segment_cmd->add_flag("--check", seg.check, "Verify map invariants");

  ExplainOptions ex;
  auto* explain_cmd = app.add_subcommand("explain", "Explain one prediction");
  explain_cmd->add_option("--image", ex.image, "Input PNG (builtin models default to their own image)");
  explain_cmd->add_option("--model", ex.model, "builtin:demo or http://host:port")->envname(kModelEnv);
  explain_cmd->add_option("--method", ex.method, "elime, lime or compare");
  explain_cmd->add_option("--seed", ex.seed, "RNG seed");
  explain_cmd->add_option("--superpixels", ex.superpixels, "Superpixel count (default 100)");
  explain_cmd->add_option("--compactness", ex.compactness, "Compactness m in [1, 40]");
  explain_cmd->add_option("--population", ex.ga.population_size, "GA population size");
  explain_cmd->add_option("--generations", ex.ga.generations, "GA generations");
  explain_cmd->add_option("--crossover-rate", ex.ga.crossover_rate, "Crossover probability");
  explain_cmd->add_option("--mutation-rate", ex.ga.mutation_rate, "Per-offspring mutation probability");
  explain_cmd->add_option("--tournament-size", ex.ga.tournament_size, "Tournament size");
  explain_cmd->add_flag("--seed-all-ones", ex.ga.seed_all_ones, "Seed the all-ones individual");
  explain_cmd->add_flag("--uniform-crossover", ex.uniform_crossover, "Uniform instead of single-point crossover");
  explain_cmd->add_option("--samples", ex.lime.num_samples, "Baseline perturbation samples");
  explain_cmd->add_option("--kernel-width", ex.kernel_width, "Baseline kernel width (default 0.25*sqrt(ns))");
  explain_cmd->add_option("--ridge-lambda", ex.lime.ridge_lambda, "Baseline ridge penalty");
  explain_cmd->add_option("--budget", ex.budget, "Baseline feature count");
  explain_cmd->add_option("--budget-from", ex.budget_from, "Take the baseline budget from an elime report");
  explain_cmd->add_option("--jobs", ex.jobs, "Concurrent fitness evaluations")->check(CLI::PositiveNumber);
  add_remote_flags(explain_cmd, ex.remote);
  explain_cmd->add_option("--out", ex.out, "Masked explanation PNG");
  explain_cmd->add_option("--lime-out", ex.lime_out, "Baseline mask PNG (compare mode)");
  explain_cmd->add_option("--report", ex.report, "Explanation JSON");
  explain_cmd->add_flag("--record-time", ex.record_time, "Store wall time in the report (otherwise 0)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the repeated-run benchmark suite");
  bench_cmd->add_option("--suite", bench.suite, "Suite JSON (default: packaged suite)");
  bench_cmd->add_option("--runs", bench.runs, "Runs per scenario and method");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--jobs", bench.jobs, "Concurrent fitness evaluations")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out-dir", bench.out_dir, "Directory for report.json and report.csv");

  std::string check_url;
  RemoteFlags check_remote;
  auto* check_cmd = app.add_subcommand("check-model", "Query a remote model's /healthz");
  check_cmd->add_option("--model", check_url, "http://host:port")->envname(kModelEnv);
  add_remote_flags(check_cmd, check_remote);

  try {
    // Config entries are spliced in right after the subcommand name so any
    // explicit flag (parsed later, TakeLast) overrides them.
    std::vector<std::string> args;
    std::string config_path;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      const std::string& a = raw_args[i];
      if (a == "--config" && i + 1 < raw_args.size()) {
        config_path = raw_args[++i];
      } else if (a.rfind("--config=", 0) == 0) {
        config_path = a.substr(9);
      } else {
        args.push_back(a);
      }
    }
    if (!config_path.empty()) {
      const auto tokens = read_config(config_path);
      const auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return a == "segment" || a == "explain" || a == "bench" || a == "check-model";
      });
      if (sub != args.end()) args.insert(sub + 1, tokens.begin(), tokens.end());
    }

    std::vector<const char*> argv{"evoxplain"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "evoxplain: " << e.what() << "\n";
      return kInputError;
    }

    if (segment_cmd->parsed()) return cmd_segment(seg, out, err);
    if (explain_cmd->parsed()) return cmd_explain(ex, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (check_cmd->parsed()) return cmd_check_model(check_url, check_remote, out, err);
    return kInputError;
  } catch (const Error& e) {
    err << "evoxplain: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "evoxplain: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace evoxplain::cli
