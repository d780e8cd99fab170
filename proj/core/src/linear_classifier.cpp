#include "evoxplain/classifier.hpp"

#include <algorithm>
#include <string>

#include "evoxplain/error.hpp"

namespace evoxplain {

Chromosome presence_vector(const RasterImage& input, const RasterImage& reference,
                           const SuperpixelMap& map) {
  if (!input.same_size(reference.width(), reference.height()) ||
      !input.same_size(map.width(), map.height())) {
    fail(ErrorKind::Input, "presence_vector: image, reference and map dimensions differ");
  }
  std::vector<std::uint8_t> bits(map.ns(), 1);
  const auto in = input.pixels();
  const auto ref = reference.pixels();
  const auto labels = map.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (in[i] != ref[i]) bits[static_cast<std::size_t>(labels[i])] = 0;
  }
  return Chromosome(std::move(bits));
}

LinearSuperpixelClassifier::LinearSuperpixelClassifier(RasterImage reference, SuperpixelMap map,
                                                       std::vector<std::vector<double>> weights,
                                                       std::vector<double> bias)
    : reference_(std::move(reference)),
      map_(std::move(map)),
      weights_(std::move(weights)),
      bias_(std::move(bias)) {
  if (!reference_.same_size(map_.width(), map_.height())) {
    fail(ErrorKind::Input, "classifier map does not match reference dimensions");
  }
  if (bias_.size() < 2) fail(ErrorKind::Input, "classifier needs at least two classes");
  if (weights_.size() != bias_.size()) {
    fail(ErrorKind::Input, "weight rows (" + std::to_string(weights_.size()) +
                               ") do not match class count (" + std::to_string(bias_.size()) + ")");
  }
  for (const auto& row : weights_) {
    if (row.size() != map_.ns()) {
      fail(ErrorKind::Input, "weight row length " + std::to_string(row.size()) +
                                 " does not match ns " + std::to_string(map_.ns()));
    }
  }
  members_ = map_.members();
  const auto px = reference_.pixels();
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const bool all_black = std::all_of(members_[j].begin(), members_[j].end(),
                                       [&](std::size_t i) { return px[i] == kBlack; });
    if (all_black) {
      fail(ErrorKind::Input, "superpixel " + std::to_string(j) +
                                 " of the reference is entirely black; presence is ambiguous");
    }
  }
}

ProbDist LinearSuperpixelClassifier::predict(const RasterImage& image) const {
  if (!image.same_size(reference_.width(), reference_.height())) {
    fail(ErrorKind::Input, "image dimensions do not match the classifier reference");
  }
  const auto in = image.pixels();
  const auto ref = reference_.pixels();
  std::vector<double> logits = bias_;
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const bool present = std::all_of(members_[j].begin(), members_[j].end(),
                                     [&](std::size_t i) { return in[i] == ref[i]; });
    if (!present) continue;
    for (std::size_t k = 0; k < logits.size(); ++k) logits[k] += weights_[k][j];
  }
  return softmax(logits);
}

}  // namespace evoxplain
