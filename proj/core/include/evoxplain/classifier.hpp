#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evoxplain/chromosome.hpp"
#include "evoxplain/image.hpp"
#include "evoxplain/prob_dist.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain {

/// Raw class scores; K >= 2, all finite.
struct Logits {
  std::vector<double> z;
};

/// Max-shifted softmax. Throws Error(Input) for K < 2 or non-finite scores.
ProbDist softmax(std::span<const double> logits);
inline ProbDist softmax(const Logits& logits) { return softmax(logits.z); }

/// Black-box image classifier. Implementations must be pure in the image and
/// safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual ProbDist predict(const RasterImage& image) const = 0;
  virtual std::size_t num_classes() const = 0;
  virtual std::optional<std::vector<std::string>> label_names() const { return std::nullopt; }
};

/// Bit j is 1 iff every pixel of superpixel j in `input` equals `reference`.
Chromosome presence_vector(const RasterImage& input, const RasterImage& reference,
                           const SuperpixelMap& map);

/// Synthetic oracle classifier: softmax(bias + W · presence(image)).
class LinearSuperpixelClassifier final : public Classifier {
 public:
  /// `weights` is K rows of ns entries. Throws Error(Input) on shape mismatch
  /// or when some superpixel of `reference` is entirely black.
  LinearSuperpixelClassifier(RasterImage reference, SuperpixelMap map,
                             std::vector<std::vector<double>> weights,
                             std::vector<double> bias);

  ProbDist predict(const RasterImage& image) const override;
  std::size_t num_classes() const override { return bias_.size(); }

  const RasterImage& reference() const noexcept { return reference_; }
  const SuperpixelMap& map() const noexcept { return map_; }
  const std::vector<std::vector<double>>& weights() const noexcept { return weights_; }
  const std::vector<double>& bias() const noexcept { return bias_; }

 private:
  RasterImage reference_;
  SuperpixelMap map_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
};

}  // namespace evoxplain
