#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "evoxplain/image.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain {

/// A point in the joint (l, a, b, x, y) space. Spatial coordinates are
/// continuous: pixel (i, j) sits at (i + 0.5, j + 0.5).
struct LabXY {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  double y = 0.0;
};

using ClusterCenter = LabXY;

struct SlicParams {
  std::size_t k = 100;                ///< requested superpixel count
  double compactness = 10.0;          ///< m, valid in [1, 40]
  std::size_t max_iters = 10;
  double residual_threshold = 1.0;    ///< summed centre displacement, pixels

  /// Throws Error(Parameter) when k == 0, k > pixel_count, m outside [1, 40],
  /// max_iters == 0 or the threshold is negative.
  void validate(std::size_t pixel_count) const;
};

/// Seed grid layout shared by centre initialisation and scenario synthesis.
struct SeedGrid {
  std::size_t cols = 1;
  std::size_t rows = 1;
  double step_x = 1.0;
  double step_y = 1.0;

  /// cols = ceil(sqrt(k * width / height)) clamped to [1, k], rows = ceil(k / cols).
  static SeedGrid for_image(std::size_t width, std::size_t height, std::size_t k);

  /// Continuous position of seed `index` (row-major): ((i+0.5)·step_x, (j+0.5)·step_y).
  double seed_x(std::size_t index) const { return (static_cast<double>(index % cols) + 0.5) * step_x; }
  double seed_y(std::size_t index) const { return (static_cast<double>(index / cols) + 0.5) * step_y; }
};

/// Squared central-difference gradient in CIELAB at an interior pixel.
double lab_gradient(const LabImage& lab, std::size_t x, std::size_t y);

/// k grid seeds, each moved to the lowest-gradient interior pixel of its 3x3
/// neighbourhood. A seed that is already minimal keeps its exact grid position.
std::vector<ClusterCenter> init_centers(const LabImage& lab, std::size_t k);

/// sqrt(d_c^2 + (d_s / S)^2 * m^2).
double slic_distance(const LabXY& center, const LabXY& pixel, double grid_interval,
                     double compactness) noexcept;

/// Relabels every 4-connected component that is smaller than (N/k)/4 pixels,
/// or is not the largest component of its label, to a neighbouring kept label,
/// then renumbers labels densely in row-major order of first appearance.
/// `provisional` may contain -1 for pixels no centre claimed.
SuperpixelMap enforce_connectivity(std::size_t width, std::size_t height,
                                   const std::vector<std::int32_t>& provisional,
                                   std::size_t k);

struct SlicTrace {
  std::size_t iterations = 0;
  std::vector<double> residuals;
};

SuperpixelMap segment(const RasterImage& image, const SlicParams& params,
                      SlicTrace* trace = nullptr);

}  // namespace evoxplain
