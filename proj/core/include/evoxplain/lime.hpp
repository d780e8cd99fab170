#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evoxplain/chromosome.hpp"
#include "evoxplain/classifier.hpp"
#include "evoxplain/explanation.hpp"
#include "evoxplain/image.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain {

// Perturbation-sampling baseline: sample masks around the full image, weight
// them by an exponential kernel on mask distance, fit a weighted ridge model
// and keep the `budget` superpixels with the largest coefficients. Ridge with
// top-k selection stands in for LIME's K-LASSO.

struct LimeParams {
  std::size_t num_samples = 1000;
  /// Defaults to 0.25 * sqrt(ns).
  std::optional<double> kernel_width;
  double ridge_lambda = 1e-3;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  double effective_kernel_width(std::size_t ns) const;

  /// Throws Error(Parameter) unless num_samples >= ns + 1, kernel width > 0,
  /// ridge_lambda >= 0 and workers >= 1.
  void validate(std::size_t ns) const;
};

/// n masks: the all-ones mask followed by n - 1 masks of fair coin bits.
std::vector<Chromosome> sample_masks(std::size_t ns, std::size_t n, std::uint64_t seed);

/// exp(-d^2 / width^2) with d = (#zero bits) / sqrt(ns).
double kernel_weight(const Chromosome& c, double width);

struct RidgeFit {
  double intercept = 0.0;
  std::vector<double> coefficients;
};

/// Minimises sum_i w_i (y_i - b0 - x_i·b)^2 + lambda |b|^2 (intercept not
/// penalised) via the normal equations. Constant targets give exactly zero
/// coefficients. Throws Error(Numeric) if the system is not positive definite.
RidgeFit fit_weighted_ridge(std::span<const Chromosome> masks, std::span<const double> targets,
                            std::span<const double> weights, double ridge_lambda);

/// Ones at the `budget` largest coefficients, ties to the lower index.
Chromosome select_top_features(std::span<const double> coefficients, std::size_t budget);

Chromosome fit_and_select(std::span<const Chromosome> masks, std::span<const double> fitnesses,
                          std::span<const double> weights, std::size_t budget,
                          double ridge_lambda = 1e-3);

/// Issues num_samples + 1 classifier calls: the unmasked image (which doubles
/// as sample 0), the num_samples - 1 random samples, and the selected mask.
Explanation explain_lime(const Classifier& model, const RasterImage& image,
                         const SuperpixelMap& map, const LimeParams& params, std::size_t budget);

}  // namespace evoxplain
