#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "evoxplain/classifier.hpp"
#include "evoxplain/image.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain {

struct ScenarioSpec {
  std::string name = "scenario";
  std::size_t ns = 12;
  std::size_t salient = 4;
  std::size_t distractors = 2;
  double weight = 3.0;
  std::size_t width = 48;
  std::size_t height = 48;
  std::uint64_t seed = 1;
};

/// Synthetic explanation problem with known ground truth. Class 0 (the target)
/// has weight +w on salient superpixels and -w on distractors; class 1 has the
/// negated weights.
struct Scenario {
  std::string name;
  RasterImage reference;
  SuperpixelMap map;
  LinearSuperpixelClassifier classifier;
  std::vector<std::size_t> salient;
  std::vector<std::size_t> distractors;
};

/// Paints ns randomly coloured (never black) blocks laid out on the SLIC seed
/// grid, segments the result, and draws salient/distractor indices. Throws
/// Error(Parameter) if the counts do not fit or segmentation does not recover
/// exactly ns superpixels.
Scenario make_scenario(const ScenarioSpec& spec);

/// The scenario behind the CLI model "builtin:demo".
ScenarioSpec demo_scenario_spec();

/// Scenarios of the packaged benchmark suite.
std::vector<ScenarioSpec> default_suite_specs();

}  // namespace evoxplain
