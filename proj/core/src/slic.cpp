#include "evoxplain/slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evoxplain/color.hpp"
#include "evoxplain/error.hpp"

namespace evoxplain {

void SlicParams::validate(std::size_t pixel_count) const {
  if (k == 0) fail(ErrorKind::Parameter, "superpixel count must be at least 1");
  if (k > pixel_count) {
    fail(ErrorKind::Parameter, "superpixel count " + std::to_string(k) + " exceeds pixel count " +
                                   std::to_string(pixel_count));
  }
  if (!(compactness >= 1.0 && compactness <= 40.0)) {
    fail(ErrorKind::Parameter, "compactness must lie in [1, 40]");
  }
  if (max_iters == 0) fail(ErrorKind::Parameter, "max_iters must be at least 1");
  if (!(residual_threshold >= 0.0)) {
    fail(ErrorKind::Parameter, "residual threshold must be non-negative");
  }
}

SeedGrid SeedGrid::for_image(std::size_t width, std::size_t height, std::size_t k) {
  SeedGrid grid;
  const double ideal = std::sqrt(static_cast<double>(k) * static_cast<double>(width) /
                                 static_cast<double>(height));
  grid.cols = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(ideal)), 1, k);
  grid.rows = (k + grid.cols - 1) / grid.cols;
  grid.step_x = static_cast<double>(width) / static_cast<double>(grid.cols);
  grid.step_y = static_cast<double>(height) / static_cast<double>(grid.rows);
  return grid;
}

double lab_gradient(const LabImage& lab, std::size_t x, std::size_t y) {
  const auto sq = [](const Lab& p, const Lab& q) {
    const double dl = p.l - q.l;
    const double da = p.a - q.a;
    const double db = p.b - q.b;
    return dl * dl + da * da + db * db;
  };
  return sq(lab.at(x + 1, y), lab.at(x - 1, y)) + sq(lab.at(x, y + 1), lab.at(x, y - 1));
}

std::vector<ClusterCenter> init_centers(const LabImage& lab, std::size_t k) {
  const std::size_t n = lab.width * lab.height;
  if (k == 0) fail(ErrorKind::Parameter, "superpixel count must be at least 1");
  if (k > n) {
    fail(ErrorKind::Parameter, "superpixel count " + std::to_string(k) + " exceeds pixel count " +
                                   std::to_string(n));
  }
  const auto interior = [&](std::size_t x, std::size_t y) {
    return x >= 1 && y >= 1 && x + 1 < lab.width && y + 1 < lab.height;
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();

  const SeedGrid grid = SeedGrid::for_image(lab.width, lab.height, k);
  std::vector<ClusterCenter> centers;
  centers.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    const double gx = grid.seed_x(s);
    const double gy = grid.seed_y(s);
    const auto px = std::min(static_cast<std::size_t>(gx), lab.width - 1);
    const auto py = std::min(static_cast<std::size_t>(gy), lab.height - 1);

    // Border pixels have no central difference and are never targets.
    std::size_t best_x = px;
    std::size_t best_y = py;
    double best_g = interior(px, py) ? lab_gradient(lab, px, py) : kInf;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const auto nx = static_cast<std::ptrdiff_t>(px) + dx;
        const auto ny = static_cast<std::ptrdiff_t>(py) + dy;
        if (nx < 0 || ny < 0) continue;
        const auto ux = static_cast<std::size_t>(nx);
        const auto uy = static_cast<std::size_t>(ny);
        if (!interior(ux, uy)) continue;
        const double g = lab_gradient(lab, ux, uy);
        if (g < best_g) {
          best_g = g;
          best_x = ux;
          best_y = uy;
        }
      }
    }

    const Lab& colour = lab.at(best_x, best_y);
    if (best_x == px && best_y == py) {
      centers.push_back({colour.l, colour.a, colour.b, gx, gy});
    } else {
      centers.push_back({colour.l, colour.a, colour.b, static_cast<double>(best_x) + 0.5,
                         static_cast<double>(best_y) + 0.5});
    }
  }
  return centers;
}

double slic_distance(const LabXY& center, const LabXY& pixel, double grid_interval,
                     double compactness) noexcept {
  const double dl = center.l - pixel.l;
  const double da = center.a - pixel.a;
  const double db = center.b - pixel.b;
  const double dx = center.x - pixel.x;
  const double dy = center.y - pixel.y;
  const double colour_sq = dl * dl + da * da + db * db;
  const double spatial_sq = dx * dx + dy * dy;
  return std::sqrt(colour_sq +
                   spatial_sq / (grid_interval * grid_interval) * compactness * compactness);
}

SuperpixelMap enforce_connectivity(std::size_t width, std::size_t height,
                                   const std::vector<std::int32_t>& provisional, std::size_t k) {
  const std::size_t n = width * height;
  if (provisional.size() != n) fail(ErrorKind::Input, "label buffer does not match dimensions");
  if (k == 0) fail(ErrorKind::Parameter, "superpixel count must be at least 1");

  struct Component {
    std::int32_t label;
    std::vector<std::size_t> pixels;  // ascending row-major after the fill
  };

  // 4-connected components of equal provisional label, discovered in
  // row-major order of their first pixel.
  std::vector<std::int64_t> component_of(n, -1);
  std::vector<Component> components;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (component_of[start] >= 0) continue;
    const auto id = static_cast<std::int64_t>(components.size());
    Component comp{provisional[start], {}};
    component_of[start] = id;
    stack.assign(1, start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      comp.pixels.push_back(i);
      const std::size_t x = i % width;
      const std::size_t y = i / width;
      const auto visit = [&](std::size_t j) {
        if (component_of[j] < 0 && provisional[j] == comp.label) {
          component_of[j] = id;
          stack.push_back(j);
        }
      };
      if (x > 0) visit(i - 1);
      if (y > 0) visit(i - width);
      if (x + 1 < width) visit(i + 1);
      if (y + 1 < height) visit(i + width);
    }
    std::sort(comp.pixels.begin(), comp.pixels.end());
    components.push_back(std::move(comp));
  }

  // A component survives if it is its label's largest (first found on ties)
  // and holds at least (N/k)/4 pixels. Unclaimed pixels (-1) never survive.
  std::vector<std::int64_t> largest_of_label;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto label = components[c].label;
    if (label < 0) continue;
    if (largest_of_label.size() <= static_cast<std::size_t>(label)) {
      largest_of_label.resize(static_cast<std::size_t>(label) + 1, -1);
    }
    auto& slot = largest_of_label[static_cast<std::size_t>(label)];
    if (slot < 0 || components[c].pixels.size() > components[static_cast<std::size_t>(slot)].pixels.size()) {
      slot = static_cast<std::int64_t>(c);
    }
  }
  std::vector<std::int64_t> resolved(components.size(), -1);
  bool any_kept = false;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto label = components[c].label;
    if (label < 0 || largest_of_label[static_cast<std::size_t>(label)] != static_cast<std::int64_t>(c)) {
      continue;
    }
    if (components[c].pixels.size() * 4 * k >= n) {
      resolved[c] = static_cast<std::int64_t>(c);
      any_kept = true;
    }
  }
  if (!any_kept) {
    std::size_t biggest = 0;
    for (std::size_t c = 1; c < components.size(); ++c) {
      if (components[c].pixels.size() > components[biggest].pixels.size()) biggest = c;
    }
    resolved[biggest] = static_cast<std::int64_t>(biggest);
  }

  // Absorb the rest in row-major order. A component adopts the label of the
  // pixel scanned just before its first pixel (left neighbour), else the one
  // above it; failing both, the first resolved neighbour met while scanning
  // its own pixels (left, up, right, down). Components with no resolved
  // neighbour yet wait for the next pass.
  std::vector<std::size_t> pending;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (resolved[c] < 0) pending.push_back(c);
  }
  const auto resolved_at = [&](std::size_t pixel) {
    return resolved[static_cast<std::size_t>(component_of[pixel])];
  };
  while (!pending.empty()) {
    std::vector<std::size_t> waiting;
    for (std::size_t c : pending) {
      const std::size_t seed = components[c].pixels.front();
      const std::size_t sx = seed % width;
      const std::size_t sy = seed / width;
      std::int64_t chosen = -1;
      if (sx > 0 && resolved_at(seed - 1) >= 0) {
        chosen = resolved_at(seed - 1);
      } else if (sy > 0 && resolved_at(seed - width) >= 0) {
        chosen = resolved_at(seed - width);
      } else {
        for (std::size_t i : components[c].pixels) {
          const std::size_t x = i % width;
          const std::size_t y = i / width;
          const std::size_t neighbours[4] = {
              x > 0 ? i - 1 : n, y > 0 ? i - width : n, x + 1 < width ? i + 1 : n,
              y + 1 < height ? i + width : n};
          for (std::size_t j : neighbours) {
            if (j == n || component_of[j] == static_cast<std::int64_t>(c)) continue;
            if (resolved_at(j) >= 0) {
              chosen = resolved_at(j);
              break;
            }
          }
          if (chosen >= 0) break;
        }
      }
      if (chosen >= 0) {
        resolved[c] = chosen;
      } else {
        waiting.push_back(c);
      }
    }
    if (waiting.size() == pending.size()) {
      fail(ErrorKind::Numeric, "connectivity enforcement made no progress");
    }
    pending = std::move(waiting);
  }

  // Dense renumbering in order of first appearance.
  std::vector<std::int32_t> dense(components.size(), -1);
  std::vector<std::int32_t> labels(n);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = static_cast<std::size_t>(resolved_at(i));
    if (dense[root] < 0) dense[root] = next++;
    labels[i] = dense[root];
  }
  return SuperpixelMap(width, height, std::move(labels), static_cast<std::size_t>(next));
}

SuperpixelMap segment(const RasterImage& image, const SlicParams& params, SlicTrace* trace) {
  const std::size_t width = image.width();
  const std::size_t height = image.height();
  const std::size_t n = image.pixel_count();
  params.validate(n);

  const LabImage lab = rgb_to_lab(image);
  std::vector<ClusterCenter> centers = init_centers(lab, params.k);
  const double interval = std::sqrt(static_cast<double>(n) / static_cast<double>(params.k));
  const double m = params.compactness;

  std::vector<std::int32_t> labels(n, -1);
  std::vector<double> best(n);
  std::vector<LabXY> sums(centers.size());
  std::vector<std::size_t> counts(centers.size());

  const auto clamp_index = [](double v, std::size_t limit) {
    if (v < 0.0) return std::size_t{0};
    const auto i = static_cast<std::size_t>(v);
    return std::min(i, limit);
  };

  for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
    std::fill(labels.begin(), labels.end(), -1);
    std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());

    // Each centre claims the pixels within S of it along both axes. Lower
    // centre indices win exact ties.
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const ClusterCenter& center = centers[c];
      const double lo_x = std::ceil(center.x - interval - 0.5);
      const double hi_x = std::floor(center.x + interval - 0.5);
      const double lo_y = std::ceil(center.y - interval - 0.5);
      const double hi_y = std::floor(center.y + interval - 0.5);
      if (hi_x < 0.0 || hi_y < 0.0) continue;
      const std::size_t x0 = clamp_index(lo_x, width - 1);
      const std::size_t x1 = clamp_index(hi_x, width - 1);
      const std::size_t y0 = clamp_index(lo_y, height - 1);
      const std::size_t y1 = clamp_index(hi_y, height - 1);
      for (std::size_t y = y0; y <= y1; ++y) {
        for (std::size_t x = x0; x <= x1; ++x) {
          const std::size_t i = y * width + x;
          const Lab& p = lab.pixels[i];
          const LabXY point{p.l, p.a, p.b, static_cast<double>(x) + 0.5,
                            static_cast<double>(y) + 0.5};
          const double d = slic_distance(center, point, interval, m);
          if (d < best[i]) {
            best[i] = d;
            labels[i] = static_cast<std::int32_t>(c);
          }
        }
      }
    }

    std::fill(sums.begin(), sums.end(), LabXY{});
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] < 0) continue;
      const auto c = static_cast<std::size_t>(labels[i]);
      const Lab& p = lab.pixels[i];
      sums[c].l += p.l;
      sums[c].a += p.a;
      sums[c].b += p.b;
      sums[c].x += static_cast<double>(i % width) + 0.5;
      sums[c].y += static_cast<double>(i / width) + 0.5;
      ++counts[c];
    }
    double residual = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (counts[c] == 0) continue;
      const double inv = 1.0 / static_cast<double>(counts[c]);
      const ClusterCenter updated{sums[c].l * inv, sums[c].a * inv, sums[c].b * inv,
                                  sums[c].x * inv, sums[c].y * inv};
      residual += std::hypot(updated.x - centers[c].x, updated.y - centers[c].y);
      centers[c] = updated;
    }
    if (trace) {
      trace->iterations = iter + 1;
      trace->residuals.push_back(residual);
    }
    if (residual <= params.residual_threshold) break;
  }

  return enforce_connectivity(width, height, labels, params.k);
}

}  // namespace evoxplain
