#include "evoxplain/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "evoxplain/error.hpp"

namespace evoxplain {

std::string_view method_name(Method m) noexcept {
  return m == Method::Elime ? "elime" : "lime-baseline";
}

void SuiteConfig::validate() const {
  if (runs == 0) fail(ErrorKind::Parameter, "runs must be at least 1");
  if (methods.empty()) fail(ErrorKind::Parameter, "no methods selected");
  ga.validate();
}

Stats summarize(std::span<const double> values) {
  Stats s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double iou(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::vector<std::size_t> sa(a.begin(), a.end());
  std::vector<std::size_t> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::vector<std::size_t> both;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
  const std::size_t uni = sa.size() + sb.size() - both.size();
  return uni == 0 ? 1.0 : static_cast<double>(both.size()) / static_cast<double>(uni);
}

namespace {

void finish(RunReport& r) {
  r.best = r.best_fitness.empty() ? 0.0 : *std::max_element(r.best_fitness.begin(), r.best_fitness.end());
  const Stats fit = summarize(r.best_fitness);
  r.mean_fitness = fit.mean;
  r.std_fitness = fit.std;
  const Stats time = summarize(r.time_s);
  r.mean_time_s = time.mean;
  r.std_time_s = time.std;
  r.shortest_time_s = r.time_s.empty() ? 0.0 : *std::min_element(r.time_s.begin(), r.time_s.end());
  r.mean_iou = summarize(r.iou).mean;
  if (r.oracle_fitness) r.median_oracle_gap = median(r.oracle_gap);
}

void record(RunReport& r, const Scenario& s, const Explanation& e) {
  r.seeds.push_back(e.seed);
  r.best_fitness.push_back(e.best_fitness);
  r.time_s.push_back(e.wall_time_s);
  const auto ones = e.best.ones_indices();
  r.iou.push_back(iou(ones, s.salient));
  r.selected_count.push_back(ones.size());
  r.classifier_calls.push_back(e.classifier_calls);
  r.bits.push_back(e.best.to_string());
  if (r.oracle_fitness) r.oracle_gap.push_back(*r.oracle_fitness - e.best_fitness);
}

}  // namespace

std::vector<RunReport> run_suite(std::span<const Scenario> scenarios, const SuiteConfig& config,
                                 const RunObserver& observer) {
  config.validate();
  const bool with_elime =
      std::find(config.methods.begin(), config.methods.end(), Method::Elime) != config.methods.end();

  std::vector<RunReport> reports;
  for (const Scenario& scenario : scenarios) {
    const auto& model = scenario.classifier;
    const std::size_t ns = scenario.map.ns();
    const OriginalPrediction original = predict_target(model, scenario.reference);

    std::optional<double> oracle;
    if (ns <= config.oracle_max_ns && ns <= kExhaustiveMaxNs) {
      oracle = exhaustive_best(model, scenario.reference, scenario.map, original.target,
                               config.ga.workers).fitness;
    }

    const auto blank = [&](Method m) {
      RunReport r;
      r.scenario = scenario.name;
      r.method = std::string(method_name(m));
      r.ns = ns;
      r.original_probability = original.probability;
      r.oracle_fitness = oracle;
      return r;
    };

    const auto tagged = [&](const Error& e, Method m, std::uint64_t seed) {
      return e.with_context("scenario '" + scenario.name + "', " + std::string(method_name(m)) +
                            ", seed " + std::to_string(seed));
    };

    RunReport elime = blank(Method::Elime);
    if (with_elime) {
      for (std::size_t run = 0; run < config.runs; ++run) {
        GaParams ga = config.ga;
        ga.seed = config.base_seed + run;
        double initial_best = 0.0;
        Explanation e;
        try {
          e = evolve(model, scenario.reference, scenario.map, ga,
                     [&](std::size_t generation, std::span<const EvaluatedIndividual> pop) {
                       if (generation != 0) return;
                       for (const auto& ind : pop) initial_best = std::max(initial_best, ind.fitness);
                     });
        } catch (const Error& err) {
          throw tagged(err, Method::Elime, ga.seed);
        }
        record(elime, scenario, e);
        elime.initial_best.push_back(initial_best);
        if (observer) observer(scenario, Method::Elime, run, e);
      }
      finish(elime);
    }

    for (Method m : config.methods) {
      if (m == Method::Elime) {
        reports.push_back(elime);
        continue;
      }
      RunReport lime = blank(Method::Lime);
      for (std::size_t run = 0; run < config.runs; ++run) {
        LimeParams lp = config.lime;
        lp.seed = config.base_seed + run;
        std::size_t budget = 0;
        if (with_elime) {
          budget = elime.selected_count[run];
        } else {
          budget = config.lime_budget.value_or(scenario.salient.size());
        }
        budget = std::clamp<std::size_t>(budget, 1, ns);
        Explanation e;
        try {
          e = explain_lime(model, scenario.reference, scenario.map, lp, budget);
        } catch (const Error& err) {
          throw tagged(err, Method::Lime, lp.seed);
        }
        record(lime, scenario, e);
        if (observer) observer(scenario, Method::Lime, run, e);
      }
      finish(lime);
      reports.push_back(std::move(lime));
    }
  }
  return reports;
}

}  // namespace evoxplain
