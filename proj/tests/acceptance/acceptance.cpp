// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. argv[1] is the path of the evoxplain command-line tool.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "evoxplain/classifier.hpp"
#include "evoxplain/explainer.hpp"
#include "evoxplain/lime.hpp"
#include "evoxplain/random.hpp"
#include "evoxplain/scenario.hpp"
#include "evoxplain/slic.hpp"
#include "evoxplain/suite.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace evoxplain;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kRuns = 30;
constexpr double kOracleTolerance = 1e-9;
constexpr double kSoftmaxTolerance = 1e-12;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ostringstream detail() {
  std::ostringstream d;
  d << std::setprecision(12);
  return d;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

class CountingClassifier final : public Classifier {
 public:
  explicit CountingClassifier(const Classifier& inner) : inner_(inner) {}
  ProbDist predict(const RasterImage& image) const override {
    ++calls_;
    return inner_.predict(image);
  }
  std::size_t num_classes() const override { return inner_.num_classes(); }
  std::size_t calls() const { return calls_.load(); }

 private:
  const Classifier& inner_;
  mutable std::atomic<std::size_t> calls_{0};
};

const ScenarioSpec kSmall{"small-12", 12, 4, 2, 3.0, 48, 48, 1};

// E-LIME runs with default GA parameters and seeds 0..29, cached per scenario.
struct Runs {
  Scenario scenario;
  std::vector<Explanation> elime;
  double seconds = 0.0;
};

std::map<std::string, Runs>& run_cache() {
  static std::map<std::string, Runs> cache;
  return cache;
}

const Runs& elime_runs(const ScenarioSpec& spec) {
  auto& cache = run_cache();
  auto it = cache.find(spec.name);
  if (it != cache.end()) return it->second;
  const auto start = Clock::now();
  Runs runs{make_scenario(spec), {}, 0.0};
  for (std::size_t r = 0; r < kRuns; ++r) {
    GaParams p;
    p.seed = r;
    runs.elime.push_back(evolve(runs.scenario.classifier, runs.scenario.reference, runs.scenario.map, p));
  }
  runs.seconds = seconds_since(start);
  return cache.emplace(spec.name, std::move(runs)).first->second;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const Runs& runs = elime_runs(kSmall);
  const auto& s = runs.scenario;
  const auto oracle = exhaustive_best(s.classifier, s.reference, s.map, 0);
  std::size_t matches = 0;
  for (const auto& e : runs.elime) matches += std::abs(e.best_fitness - oracle.fitness) <= kOracleTolerance;
  const double elapsed = seconds_since(start);
  auto d = detail();
  d << matches << "/" << kRuns << " runs within " << kOracleTolerance << " of exhaustive optimum "
    << oracle.fitness << " (need >= 29); suite " << elapsed << " s (limit 60 s)";
  return {matches >= 29 && elapsed < 60.0, d.str()};
}

Outcome fitness_improvement() {
  bool pass = true;
  auto d = detail();
  std::size_t checked = 0;
  for (const auto& spec : default_suite_specs()) {
    if (spec.distractors == 0) continue;
    const Runs& runs = elime_runs(spec);
    double mean = 0.0;
    for (const auto& e : runs.elime) mean += e.best_fitness;
    mean /= static_cast<double>(runs.elime.size());
    const double original = runs.elime.front().original_probability;
    pass = pass && mean > original;
    ++checked;
    d << spec.name << " original " << original << " -> mean " << mean << "; ";
  }
  pass = pass && checked > 0;
  d << checked << " scenarios with distractors";
  return {pass, d.str()};
}

Outcome monotone_archive() {
  std::size_t total = 0;
  std::size_t good = 0;
  for (const auto& [name, runs] : run_cache()) {
    for (const auto& e : runs.elime) {
      ++total;
      good += e.is_consistent() && std::is_sorted(e.history.begin(), e.history.end()) &&
              e.history.size() == GaParams{}.generations + 1;
    }
  }
  auto d = detail();
  d << good << "/" << total << " runs with non-decreasing history ending at best_fitness";
  return {total > 0 && good == total, d.str()};
}

Outcome decode_identities() {
  const Scenario s = make_scenario(demo_scenario_spec());
  const std::size_t ns = s.map.ns();
  const auto full = decode_mask(Chromosome::ones(ns), s.reference, s.map);
  const bool identity = full == s.reference;
  const auto original = predict_target(s.classifier, s.reference);
  const bool same_fitness =
      evaluate_fitness(s.classifier, s.reference, original.target, Chromosome::ones(ns), s.map) ==
      original.probability;
  const auto empty = decode_mask(Chromosome::zeros(ns), s.reference, s.map);
  const bool black = std::all_of(empty.pixels().begin(), empty.pixels().end(),
                                 [](const Rgb& p) { return p == kBlack; });
  Rng rng(2024);
  std::size_t round_trips = 0;
  for (int i = 0; i < 1000; ++i) {
    Chromosome c = Chromosome::zeros(ns);
    for (std::size_t j = 0; j < ns; ++j) c.set(j, rng.coin());
    round_trips += presence_vector(decode_mask(c, s.reference, s.map), s.reference, s.map) == c;
  }
  auto d = detail();
  d << "all-ones identical " << identity << ", fitness exact " << same_fitness << ", all-zeros black "
    << black << ", presence round trips " << round_trips << "/1000";
  return {identity && same_fitness && black && round_trips == 1000, d.str()};
}

Outcome softmax_properties() {
  Rng rng(77);
  std::size_t bad_sum = 0;
  std::size_t bad_shift = 0;
  std::size_t bad_argmax = 0;
  double worst_sum = 0.0;
  double worst_shift = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t k = 2 + rng.index(999);
    std::vector<double> z(k);
    for (auto& v : z) v = (rng.uniform() - 0.5) * 60.0;
    const double c = (rng.uniform() - 0.5) * 200.0;
    std::vector<double> shifted(z);
    for (auto& v : shifted) v += c;
    const auto p = softmax(z);
    const auto q = softmax(shifted);
    double sum = 0.0;
    double shift_err = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      sum += p[i];
      shift_err = std::max(shift_err, std::abs(p[i] - q[i]));
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    worst_shift = std::max(worst_shift, shift_err);
    bad_sum += std::abs(sum - 1.0) > kSoftmaxTolerance;
    bad_shift += shift_err > kSoftmaxTolerance;
    const auto zmax = static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
    bad_argmax += p.argmax() != zmax;
  }
  auto d = detail();
  d << "10000 vectors, K in [2,1000]: sum violations " << bad_sum << " (worst " << worst_sum
    << "), shift violations " << bad_shift << " (worst " << worst_shift << "), argmax mismatches "
    << bad_argmax;
  return {bad_sum == 0 && bad_shift == 0 && bad_argmax == 0, d.str()};
}

Outcome slic_checks() {
  std::vector<Rgb> px(64 * 64);
  const Rgb quadrant[4] = {{220, 40, 40}, {40, 200, 60}, {50, 60, 210}, {230, 220, 50}};
  for (std::size_t y = 0; y < 64; ++y) {
    for (std::size_t x = 0; x < 64; ++x) px[y * 64 + x] = quadrant[(y / 32) * 2 + x / 32];
  }
  const RasterImage four(64, 64, px);
  SlicParams params;
  params.k = 16;
  params.compactness = 10.0;
  const auto map = segment(four, params);
  const bool labelled = map.width() == 64 && map.height() == 64 &&
                        std::all_of(map.labels().begin(), map.labels().end(), [&](auto l) {
                          return l >= 0 && static_cast<std::size_t>(l) < map.ns();
                        });
  const bool connected = map.is_four_connected();
  const bool count_ok = map.ns() >= 8 && map.ns() <= 16;
  bool deterministic = true;
  for (int i = 0; i < 3; ++i) deterministic = deterministic && segment(four, params) == map;

  std::vector<Rgb> split(16 * 16);
  for (std::size_t i = 0; i < split.size(); ++i) split[i] = (i % 16) < 8 ? Rgb{255, 0, 0} : Rgb{0, 0, 255};
  SlicParams two;
  two.k = 2;
  const auto halves = segment(RasterImage(16, 16, split), two);
  bool split_ok = halves.ns() == 2;
  for (std::size_t i = 0; i < split.size() && split_ok; ++i) {
    split_ok = halves.labels()[i] == ((i % 16) < 8 ? 0 : 1);
  }
  auto d = detail();
  d << "quadrants: labelled " << labelled << ", 4-connected " << connected << ", ns " << map.ns()
    << " (need 8..16), deterministic " << deterministic << "; two-tone split exact " << split_ok;
  return {labelled && connected && count_ok && deterministic && split_ok, d.str()};
}

Outcome call_accounting() {
  const Scenario s = make_scenario(kSmall);
  CountingClassifier counting(s.classifier);
  const GaParams ga;
  const auto e = evolve(counting, s.reference, s.map, ga);
  const std::size_t ga_calls = counting.calls();
  const std::size_t ga_expected = ga.population_size * (ga.generations + 1) + 1;

  CountingClassifier counting_lime(s.classifier);
  const LimeParams lp;
  const auto l = explain_lime(counting_lime, s.reference, s.map, lp, 4);
  const std::size_t lime_calls = counting_lime.calls();
  const std::size_t lime_expected = lp.num_samples + 1;
  auto d = detail();
  d << "evolve " << ga_calls << " (expected " << ga_expected << ", reported " << e.classifier_calls
    << "), explain_lime " << lime_calls << " (expected " << lime_expected << ", reported "
    << l.classifier_calls << ")";
  return {ga_calls == ga_expected && e.classifier_calls == ga_expected && lime_calls == lime_expected &&
              l.classifier_calls == lime_expected,
          d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "evoxplain_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_tool(const std::string& tool, const std::string& args) {
  const std::string cmd = "\"" + tool + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status;
}

// Two identical compare-mode invocations; every output file must match.
Outcome determinism(const std::string& tool) {
  const fs::path dir = work_dir();
  const auto args = [&](const std::string& tag) {
    return "explain --model builtin:demo --method compare --seed 11 --report \"" +
           (dir / (tag + ".json")).string() + "\" --out \"" + (dir / (tag + "_elime.png")).string() +
           "\" --lime-out \"" + (dir / (tag + "_lime.png")).string() + "\"";
  };
  const int a = run_tool(tool, args("a"));
  const int b = run_tool(tool, args("b"));
  bool same = a == 0 && b == 0;
  for (const char* suffix : {".json", "_elime.png", "_lime.png"}) {
    const auto x = slurp(dir / (std::string("a") + suffix));
    const auto y = slurp(dir / (std::string("b") + suffix));
    same = same && !x.empty() && x == y;
  }
  auto d = detail();
  d << "exit codes " << a << "/" << b << ", report and both PNGs byte-identical " << same;
  return {same, d.str()};
}

Outcome comparison_protocol(const std::string& tool) {
  // Compare mode through the CLI.
  const fs::path report = work_dir() / "compare_small.json";
  const int status = run_tool(tool, "explain --model builtin:small-12 --method compare --seed 3 --report \"" +
                                        report.string() + "\"");
  bool cli_equal = false;
  if (status == 0) {
    const auto j = nlohmann::json::parse(slurp(report));
    cli_equal = j["equal_cardinality"] == true && j["elime"]["ones"] == j["lime"]["ones"];
  }

  // 30 seeds on the ns=12 scenario, baseline budget = evolved cardinality.
  const Runs& runs = elime_runs(kSmall);
  const auto& s = runs.scenario;
  std::size_t equal_size = 0;
  std::size_t elime_wins = 0;
  for (std::size_t r = 0; r < kRuns; ++r) {
    const auto& e = runs.elime[r];
    LimeParams lp;
    lp.seed = r;
    const std::size_t budget = std::max<std::size_t>(e.best.count_ones(), 1);
    const auto l = explain_lime(s.classifier, s.reference, s.map, lp, budget);
    equal_size += l.best.count_ones() == e.best.count_ones();
    elime_wins += iou(e.best.ones_indices(), s.salient) >= iou(l.best.ones_indices(), s.salient);
  }
  auto d = detail();
  d << "CLI compare equal cardinality " << cli_equal << "; equal cardinality " << equal_size << "/" << kRuns
    << "; E-LIME IoU >= baseline IoU in " << elime_wins << "/" << kRuns << " (need >= 20)";
  return {cli_equal && equal_size == kRuns && elime_wins >= 20, d.str()};
}

Outcome runtime() {
  const Scenario s = make_scenario(demo_scenario_spec());
  const auto start = Clock::now();
  const auto e = evolve(s.classifier, s.reference, s.map, GaParams{});
  const double elapsed = seconds_since(start);
  auto d = detail();
  d << "ns=" << s.map.ns() << ", " << e.classifier_calls << " calls in " << elapsed << " s (limit 10 s)";
  return {s.map.ns() == 100 && elapsed < 10.0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-evoxplain-tool>\n", argv[0]);
    return 2;
  }
  const std::string tool = argv[1];

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "fitness improvement", fitness_improvement},
      {3, "monotone archive", monotone_archive},
      {4, "decode identities", decode_identities},
      {5, "softmax", softmax_properties},
      {6, "slic", slic_checks},
      {7, "call accounting", call_accounting},
      {8, "determinism", [&] { return determinism(tool); }},
      {9, "comparison protocol", [&] { return comparison_protocol(tool); }},
      {10, "runtime", runtime},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
