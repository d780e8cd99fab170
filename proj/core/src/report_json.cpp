#include "evoxplain/report_json.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "evoxplain/error.hpp"
#include "json.hpp"

namespace evoxplain {
namespace {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw std::invalid_argument("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

std::string explanation_to_json(const Explanation& e) {
  ojson params = ojson::object();
  for (const auto& [name, value] : e.params) params[name] = value;
  ojson j;
  j["method"] = e.method;
  j["target_label"] = e.target_label;
  j["original_probability"] = e.original_probability;
  j["best_fitness"] = e.best_fitness;
  j["bits"] = e.best.to_string();
  j["ones"] = e.best.count_ones();
  j["history"] = e.history;
  j["wall_time_s"] = e.wall_time_s;
  j["seed"] = e.seed;
  j["classifier_calls"] = e.classifier_calls;
  j["params"] = std::move(params);
  return j.dump(2) + "\n";
}

Explanation explanation_from_json(std::string_view text) {
  try {
    const ojson j = ojson::parse(text);
    Explanation e;
    e.method = j.value("method", std::string{});
    e.best = Chromosome::parse(j.at("bits").get<std::string>());
    e.best_fitness = j.at("best_fitness").get<double>();
    e.target_label = j.at("target_label").get<std::size_t>();
    e.original_probability = j.at("original_probability").get<double>();
    e.history = j.at("history").get<std::vector<double>>();
    e.wall_time_s = j.value("wall_time_s", 0.0);
    e.seed = j.value("seed", std::uint64_t{0});
    e.classifier_calls = j.value("classifier_calls", std::size_t{0});
    if (j.contains("params")) {
      for (const auto& [name, value] : j["params"].items()) e.params.emplace_back(name, value.get<double>());
    }
    return e;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    fail(ErrorKind::Input, std::string("malformed explanation report: ") + ex.what());
  }
}

std::string superpixel_map_to_json(const SuperpixelMap& map) {
  ojson j;
  j["width"] = map.width();
  j["height"] = map.height();
  j["ns"] = map.ns();
  j["labels"] = std::vector<std::int32_t>(map.labels().begin(), map.labels().end());
  return j.dump() + "\n";
}

std::string run_reports_to_json(std::span<const RunReport> reports) {
  ojson out = ojson::array();
  for (const auto& r : reports) {
    ojson j;
    j["scenario"] = r.scenario;
    j["method"] = r.method;
    j["ns"] = r.ns;
    j["runs"] = r.best_fitness.size();
    j["original_probability"] = r.original_probability;
    j["best"] = r.best;
    j["mean_fitness"] = r.mean_fitness;
    j["std_fitness"] = r.std_fitness;
    j["shortest_time_s"] = r.shortest_time_s;
    j["mean_time_s"] = r.mean_time_s;
    j["std_time_s"] = r.std_time_s;
    j["mean_iou"] = r.mean_iou;
    j["oracle_fitness"] = optional_number(r.oracle_fitness);
    j["median_oracle_gap"] = optional_number(r.median_oracle_gap);
    j["seeds"] = r.seeds;
    j["best_fitness"] = r.best_fitness;
    j["time_s"] = r.time_s;
    j["iou"] = r.iou;
    j["selected_count"] = r.selected_count;
    j["classifier_calls"] = r.classifier_calls;
    if (!r.initial_best.empty()) j["initial_best"] = r.initial_best;
    if (r.oracle_fitness) j["oracle_gap"] = r.oracle_gap;
    j["bits"] = r.bits;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string run_reports_to_csv(std::span<const RunReport> reports) {
  std::ostringstream out;
  out << "scenario,method,ns,runs,original_probability,best_fitness,mean_fitness,std_fitness,"
         "shortest_time_s,mean_time_s,std_time_s,mean_iou,mean_selected,calls_per_run,"
         "oracle_fitness,median_oracle_gap\n";
  for (const auto& r : reports) {
    double selected = 0.0;
    for (auto c : r.selected_count) selected += static_cast<double>(c);
    if (!r.selected_count.empty()) selected /= static_cast<double>(r.selected_count.size());
    out << r.scenario << ',' << r.method << ',' << r.ns << ',' << r.best_fitness.size() << ','
        << number(r.original_probability) << ',' << number(r.best) << ',' << number(r.mean_fitness)
        << ',' << number(r.std_fitness) << ',' << number(r.shortest_time_s) << ','
        << number(r.mean_time_s) << ',' << number(r.std_time_s) << ',' << number(r.mean_iou) << ','
        << number(selected) << ',' << (r.classifier_calls.empty() ? 0 : r.classifier_calls.front())
        << ',' << (r.oracle_fitness ? number(*r.oracle_fitness) : "") << ','
        << (r.median_oracle_gap ? number(*r.median_oracle_gap) : "") << '\n';
  }
  return out.str();
}

SuiteConfig parse_suite(std::string_view text) {
  SuiteConfig config;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("suite must be a JSON object");
    reject_unknown(j, {"runs", "base_seed", "methods", "ga", "lime", "lime_budget", "oracle_max_ns", "scenarios"},
                   "suite");

    config.runs = j.value("runs", config.runs);
    config.base_seed = j.value("base_seed", config.base_seed);
    config.oracle_max_ns = j.value("oracle_max_ns", config.oracle_max_ns);
    if (j.contains("lime_budget")) config.lime_budget = j["lime_budget"].get<std::size_t>();

    if (j.contains("methods")) {
      config.methods.clear();
      for (const auto& m : j["methods"]) {
        const auto name = m.get<std::string>();
        if (name == "elime") {
          config.methods.push_back(Method::Elime);
        } else if (name == "lime" || name == "lime-baseline") {
          config.methods.push_back(Method::Lime);
        } else {
          throw std::invalid_argument("unknown method '" + name + "'");
        }
      }
    }

    if (j.contains("ga")) {
      const auto& g = j["ga"];
      reject_unknown(g, {"population_size", "generations", "crossover_rate", "mutation_rate",
                         "tournament_size", "uniform_crossover", "seed_all_ones", "workers"},
                     "ga");
      auto& ga = config.ga;
      ga.population_size = g.value("population_size", ga.population_size);
      ga.generations = g.value("generations", ga.generations);
      ga.crossover_rate = g.value("crossover_rate", ga.crossover_rate);
      ga.mutation_rate = g.value("mutation_rate", ga.mutation_rate);
      ga.tournament_size = g.value("tournament_size", ga.tournament_size);
      ga.seed_all_ones = g.value("seed_all_ones", ga.seed_all_ones);
      ga.workers = g.value("workers", ga.workers);
      if (g.value("uniform_crossover", false)) ga.crossover = CrossoverKind::Uniform;
    }

    if (j.contains("lime")) {
      const auto& l = j["lime"];
      reject_unknown(l, {"num_samples", "kernel_width", "ridge_lambda", "workers"}, "lime");
      auto& lime = config.lime;
      lime.num_samples = l.value("num_samples", lime.num_samples);
      if (l.contains("kernel_width")) lime.kernel_width = l["kernel_width"].get<double>();
      lime.ridge_lambda = l.value("ridge_lambda", lime.ridge_lambda);
      lime.workers = l.value("workers", lime.workers);
    }

    if (j.contains("scenarios")) {
      for (const auto& s : j["scenarios"]) {
        reject_unknown(s, {"name", "ns", "salient", "distractors", "weight", "width", "height", "seed"},
                       "scenario");
        ScenarioSpec spec;
        spec.name = s.value("name", "scenario-" + std::to_string(config.scenarios.size()));
        spec.ns = s.value("ns", spec.ns);
        spec.salient = s.value("salient", spec.salient);
        spec.distractors = s.value("distractors", spec.distractors);
        spec.weight = s.value("weight", spec.weight);
        spec.width = s.value("width", spec.width);
        spec.height = s.value("height", spec.height);
        spec.seed = s.value("seed", spec.seed);
        config.scenarios.push_back(std::move(spec));
      }
    } else {
      config.scenarios = default_suite_specs();
    }
  } catch (const std::exception& ex) {
    fail(ErrorKind::Input, std::string("cannot parse suite: ") + ex.what());
  }
  return config;
}

}  // namespace evoxplain
