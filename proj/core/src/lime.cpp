#include "evoxplain/lime.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "evoxplain/error.hpp"
#include "evoxplain/explainer.hpp"
#include "evoxplain/random.hpp"

namespace evoxplain {

double LimeParams::effective_kernel_width(std::size_t ns) const {
  return kernel_width.value_or(0.25 * std::sqrt(static_cast<double>(ns)));
}

void LimeParams::validate(std::size_t ns) const {
  if (num_samples < ns + 1) {
    fail(ErrorKind::Parameter, "num_samples (" + std::to_string(num_samples) +
                                   ") must be at least ns + 1 (" + std::to_string(ns + 1) + ")");
  }
  if (!(effective_kernel_width(ns) > 0.0)) fail(ErrorKind::Parameter, "kernel width must be positive");
  if (!(ridge_lambda >= 0.0)) fail(ErrorKind::Parameter, "ridge lambda must be non-negative");
  if (workers < 1) fail(ErrorKind::Parameter, "workers must be at least 1");
}

std::vector<Chromosome> sample_masks(std::size_t ns, std::size_t n, std::uint64_t seed) {
  if (n < 1) fail(ErrorKind::Parameter, "at least one sample is required");
  std::vector<Chromosome> masks;
  masks.reserve(n);
  masks.push_back(Chromosome::ones(ns));
  Rng rng(seed);
  for (std::size_t s = 1; s < n; ++s) {
    std::vector<std::uint8_t> bits(ns);
    for (auto& bit : bits) bit = rng.coin() ? 1 : 0;
    masks.emplace_back(std::move(bits));
  }
  return masks;
}

double kernel_weight(const Chromosome& c, double width) {
  if (!(width > 0.0)) fail(ErrorKind::Parameter, "kernel width must be positive");
  if (c.size() == 0) fail(ErrorKind::Input, "empty chromosome");
  const double zeros = static_cast<double>(c.size() - c.count_ones());
  const double d = zeros / std::sqrt(static_cast<double>(c.size()));
  return std::exp(-(d * d) / (width * width));
}

RidgeFit fit_weighted_ridge(std::span<const Chromosome> masks, std::span<const double> targets,
                            std::span<const double> weights, double ridge_lambda) {
  if (masks.empty()) fail(ErrorKind::Input, "no samples to fit");
  if (targets.size() != masks.size() || weights.size() != masks.size()) {
    fail(ErrorKind::Input, "masks, targets and weights differ in length");
  }
  const std::size_t p = masks.front().size();
  for (const auto& m : masks) {
    if (m.size() != p) fail(ErrorKind::Input, "masks differ in length");
  }

  RidgeFit fit;
  fit.coefficients.assign(p, 0.0);
  if (std::all_of(targets.begin(), targets.end(), [&](double y) { return y == targets.front(); })) {
    fit.intercept = targets.front();
    return fit;
  }

  // Normal equations over the design [1, x]: (X'WX + lambda·diag(0,1..1)) beta = X'Wy.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p + 1),
                                               static_cast<Eigen::Index>(p + 1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p + 1));
  Eigen::VectorXd row(static_cast<Eigen::Index>(p + 1));
  for (std::size_t i = 0; i < masks.size(); ++i) {
    row[0] = 1.0;
    for (std::size_t j = 0; j < p; ++j) row[static_cast<Eigen::Index>(j + 1)] = masks[i][j] ? 1.0 : 0.0;
    gram.selfadjointView<Eigen::Lower>().rankUpdate(row, weights[i]);
    rhs += weights[i] * targets[i] * row;
  }
  gram = gram.selfadjointView<Eigen::Lower>();
  for (std::size_t j = 1; j <= p; ++j) gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += ridge_lambda;

  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::Numeric, "weighted ridge system is not positive definite");
  }
  const Eigen::VectorXd beta = llt.solve(rhs);
  if (!beta.allFinite()) fail(ErrorKind::Numeric, "weighted ridge solution is not finite");

  fit.intercept = beta[0];
  for (std::size_t j = 0; j < p; ++j) fit.coefficients[j] = beta[static_cast<Eigen::Index>(j + 1)];
  return fit;
}

Chromosome select_top_features(std::span<const double> coefficients, std::size_t budget) {
  const std::size_t ns = coefficients.size();
  if (budget < 1 || budget > ns) {
    fail(ErrorKind::Parameter, "budget " + std::to_string(budget) + " outside [1, " +
                                   std::to_string(ns) + "]");
  }
  std::vector<std::size_t> order(ns);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return coefficients[a] > coefficients[b]; });
  Chromosome out = Chromosome::zeros(ns);
  for (std::size_t r = 0; r < budget; ++r) out.set(order[r], true);
  return out;
}

Chromosome fit_and_select(std::span<const Chromosome> masks, std::span<const double> fitnesses,
                          std::span<const double> weights, std::size_t budget,
                          double ridge_lambda) {
  const RidgeFit fit = fit_weighted_ridge(masks, fitnesses, weights, ridge_lambda);
  return select_top_features(fit.coefficients, budget);
}

Explanation explain_lime(const Classifier& model, const RasterImage& image,
                         const SuperpixelMap& map, const LimeParams& params, std::size_t budget) {
  const std::size_t ns = map.ns();
  params.validate(ns);
  if (budget < 1 || budget > ns) {
    fail(ErrorKind::Parameter, "budget " + std::to_string(budget) + " outside [1, " +
                                   std::to_string(ns) + "]");
  }
  if (!image.same_size(map.width(), map.height())) {
    fail(ErrorKind::Input, "image and superpixel map dimensions differ");
  }
  const auto started = std::chrono::steady_clock::now();

  const auto masks = sample_masks(ns, params.num_samples, params.seed);
  // Sample 0 is the all-ones mask, i.e. the unmasked image itself.
  const OriginalPrediction original = predict_target(model, image);
  std::vector<double> fitness(masks.size());
  fitness[0] = original.probability;
  const auto rest = evaluate_batch(model, image, original.target,
                                   std::span(masks).subspan(1), map, params.workers);
  std::copy(rest.begin(), rest.end(), fitness.begin() + 1);

  const double width = params.effective_kernel_width(ns);
  std::vector<double> weights;
  weights.reserve(masks.size());
  for (const auto& m : masks) weights.push_back(kernel_weight(m, width));

  Chromosome selected = fit_and_select(masks, fitness, weights, budget, params.ridge_lambda);
  const double selected_fitness = evaluate_fitness(model, image, original.target, selected, map);

  Explanation result;
  result.method = "lime-baseline";
  result.best = std::move(selected);
  result.best_fitness = selected_fitness;
  result.target_label = original.target;
  result.original_probability = original.probability;
  result.history = {selected_fitness};
  result.seed = params.seed;
  result.classifier_calls = params.num_samples + 1;
  result.params = {
      {"ns", static_cast<double>(ns)},
      {"num_samples", static_cast<double>(params.num_samples)},
      {"kernel_width", width},
      {"ridge_lambda", params.ridge_lambda},
      {"budget", static_cast<double>(budget)},
  };
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace evoxplain
