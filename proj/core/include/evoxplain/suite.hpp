#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evoxplain/explainer.hpp"
#include "evoxplain/explanation.hpp"
#include "evoxplain/lime.hpp"
#include "evoxplain/scenario.hpp"

namespace evoxplain {

enum class Method { Elime, Lime };

std::string_view method_name(Method m) noexcept;

struct SuiteConfig {
  std::vector<ScenarioSpec> scenarios;
  std::vector<Method> methods{Method::Elime, Method::Lime};
  std::size_t runs = 30;
  /// Run r uses seed base_seed + r for both methods.
  std::uint64_t base_seed = 0;
  GaParams ga;
  LimeParams lime;
  /// Baseline feature budget when E-LIME is not part of the run. With E-LIME
  /// present the budget is the number of ones it evolved for the same seed.
  std::optional<std::size_t> lime_budget;
  std::size_t oracle_max_ns = kExhaustiveMaxNs;

  /// Throws Error(Parameter) on runs == 0, an empty method list or invalid
  /// GA parameters.
  void validate() const;
};

struct RunReport {
  std::string scenario;
  std::string method;
  std::size_t ns = 0;
  double original_probability = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> best_fitness;
  double best = 0.0;
  double mean_fitness = 0.0;
  double std_fitness = 0.0;
  std::vector<double> time_s;
  double shortest_time_s = 0.0;
  double mean_time_s = 0.0;
  double std_time_s = 0.0;
  std::vector<double> iou;
  double mean_iou = 0.0;
  std::vector<std::size_t> selected_count;
  std::vector<std::size_t> classifier_calls;
  /// E-LIME only: best fitness of each run's initial population.
  std::vector<double> initial_best;
  std::optional<double> oracle_fitness;
  std::vector<double> oracle_gap;
  std::optional<double> median_oracle_gap;
  std::vector<std::string> bits;
};

/// Mean and sample standard deviation (0 for fewer than two values).
struct Stats {
  double mean = 0.0;
  double std = 0.0;
};
Stats summarize(std::span<const double> values);

double median(std::vector<double> values);

/// |A ∩ B| / |A ∪ B|; two empty sets give 1.
double iou(std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Called after every single run; `run` indexes seeds.
using RunObserver = std::function<void(const Scenario&, Method, std::size_t run, const Explanation&)>;

std::vector<RunReport> run_suite(std::span<const Scenario> scenarios, const SuiteConfig& config,
                                 const RunObserver& observer = {});

}  // namespace evoxplain
