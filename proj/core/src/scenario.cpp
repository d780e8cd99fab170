#include "evoxplain/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "evoxplain/error.hpp"
#include "evoxplain/random.hpp"
#include "evoxplain/slic.hpp"

namespace evoxplain {

Scenario make_scenario(const ScenarioSpec& spec) {
  const std::string where = "scenario '" + spec.name + "'";
  if (spec.ns == 0) fail(ErrorKind::Parameter, where + ": ns must be at least 1");
  if (spec.salient + spec.distractors > spec.ns) {
    fail(ErrorKind::Parameter, where + ": " + std::to_string(spec.salient) + " salient + " +
                                   std::to_string(spec.distractors) + " distractors exceed ns " +
                                   std::to_string(spec.ns));
  }
  if (!std::isfinite(spec.weight) || spec.weight < 0.0) {
    fail(ErrorKind::Parameter, where + ": weight must be finite and non-negative");
  }
  if (spec.width == 0 || spec.height == 0 || spec.width * spec.height < spec.ns) {
    fail(ErrorKind::Parameter, where + ": image too small for ns");
  }

  Rng rng(spec.seed);
  std::vector<Rgb> palette(spec.ns);
  for (auto& c : palette) {
    c = Rgb{static_cast<std::uint8_t>(32 + rng.index(224)), static_cast<std::uint8_t>(32 + rng.index(224)),
            static_cast<std::uint8_t>(32 + rng.index(224))};
  }

  // Blocks follow the segmentation seed grid so every block holds one seed.
  const SeedGrid grid = SeedGrid::for_image(spec.width, spec.height, spec.ns);
  std::vector<Rgb> pixels(spec.width * spec.height);
  for (std::size_t y = 0; y < spec.height; ++y) {
    const auto row = std::min(grid.rows - 1, static_cast<std::size_t>((static_cast<double>(y) + 0.5) / grid.step_y));
    for (std::size_t x = 0; x < spec.width; ++x) {
      const auto col = std::min(grid.cols - 1, static_cast<std::size_t>((static_cast<double>(x) + 0.5) / grid.step_x));
      const std::size_t block = std::min(spec.ns - 1, row * grid.cols + col);
      pixels[y * spec.width + x] = palette[block];
    }
  }
  RasterImage reference(spec.width, spec.height, std::move(pixels));

  SlicParams slic;
  slic.k = spec.ns;
  SuperpixelMap map = segment(reference, slic);
  if (map.ns() != spec.ns) {
    fail(ErrorKind::Parameter, where + ": segmentation recovered " + std::to_string(map.ns()) +
                                   " superpixels instead of " + std::to_string(spec.ns));
  }

  std::vector<std::size_t> order(spec.ns);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = spec.ns - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
  std::vector<std::size_t> salient(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.salient));
  std::vector<std::size_t> distractors(
      order.begin() + static_cast<std::ptrdiff_t>(spec.salient),
      order.begin() + static_cast<std::ptrdiff_t>(spec.salient + spec.distractors));
  std::sort(salient.begin(), salient.end());
  std::sort(distractors.begin(), distractors.end());

  std::vector<std::vector<double>> weights(2, std::vector<double>(spec.ns, 0.0));
  for (std::size_t j : salient) weights[0][j] = spec.weight;
  for (std::size_t j : distractors) weights[0][j] = -spec.weight;
  for (std::size_t j = 0; j < spec.ns; ++j) weights[1][j] = -weights[0][j];

  LinearSuperpixelClassifier classifier(reference, map, std::move(weights), {0.0, 0.0});
  return Scenario{spec.name,        std::move(reference),   std::move(map),
                  std::move(classifier), std::move(salient), std::move(distractors)};
}

ScenarioSpec demo_scenario_spec() {
  return ScenarioSpec{"demo-100", 100, 12, 8, 0.5, 160, 160, 7};
}

std::vector<ScenarioSpec> default_suite_specs() {
  return {
      ScenarioSpec{"small-12", 12, 4, 2, 3.0, 48, 48, 1},
      ScenarioSpec{"grid-36", 36, 6, 4, 1.0, 96, 96, 2},
      demo_scenario_spec(),
  };
}

}  // namespace evoxplain
