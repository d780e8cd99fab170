#pragma once

#include <span>
#include <string>
#include <string_view>

#include "evoxplain/explanation.hpp"
#include "evoxplain/superpixel_map.hpp"
#include "evoxplain/suite.hpp"

namespace evoxplain {

/// {method, target_label, original_probability, best_fitness, bits, ones,
///  history, wall_time_s, seed, classifier_calls, params{...}}
std::string explanation_to_json(const Explanation& e);

/// Inverse of explanation_to_json. Throws Error(Input) on malformed text.
Explanation explanation_from_json(std::string_view text);

/// {width, height, ns, labels}
std::string superpixel_map_to_json(const SuperpixelMap& map);

std::string run_reports_to_json(std::span<const RunReport> reports);

/// One row per scenario x method with aggregate columns.
std::string run_reports_to_csv(std::span<const RunReport> reports);

/// Suite file:
///   {"runs": 30, "base_seed": 0, "methods": ["elime", "lime"],
///    "ga": {...}, "lime": {...}, "lime_budget": 4,
///    "scenarios": [{"name", "ns", "salient", "distractors", "weight",
///                   "width", "height", "seed"}, ...]}
/// Every key is optional; missing scenarios mean the packaged default suite.
/// Throws Error(Input) on malformed text or unknown keys.
SuiteConfig parse_suite(std::string_view text);

}  // namespace evoxplain
