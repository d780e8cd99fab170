#include "evoxplain/superpixel_map.hpp"

#include <string>

#include "evoxplain/error.hpp"

namespace evoxplain {

SuperpixelMap::SuperpixelMap(std::size_t width, std::size_t height, std::vector<Label> labels,
                             std::size_t ns)
    : width_(width), height_(height), labels_(std::move(labels)), ns_(ns) {
  if (ns_ == 0) fail(ErrorKind::Input, "superpixel map needs at least one superpixel");
  if (width_ == 0 || height_ == 0) fail(ErrorKind::Input, "superpixel map has zero area");
  if (labels_.size() != width_ * height_) {
    fail(ErrorKind::Input, "label count " + std::to_string(labels_.size()) +
                               " does not match " + std::to_string(width_) + "x" +
                               std::to_string(height_));
  }
  std::vector<bool> seen(ns_, false);
  for (Label label : labels_) {
    if (label < 0 || static_cast<std::size_t>(label) >= ns_) {
      fail(ErrorKind::Input, "label " + std::to_string(label) + " outside [0, " +
                                 std::to_string(ns_) + ")");
    }
    seen[static_cast<std::size_t>(label)] = true;
  }
  for (std::size_t j = 0; j < ns_; ++j) {
    if (!seen[j]) fail(ErrorKind::Input, "superpixel " + std::to_string(j) + " owns no pixels");
  }
}

std::vector<std::vector<std::size_t>> SuperpixelMap::members() const {
  std::vector<std::vector<std::size_t>> out(ns_);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    out[static_cast<std::size_t>(labels_[i])].push_back(i);
  }
  return out;
}

std::vector<std::size_t> SuperpixelMap::sizes() const {
  std::vector<std::size_t> out(ns_, 0);
  for (Label label : labels_) ++out[static_cast<std::size_t>(label)];
  return out;
}

bool SuperpixelMap::is_four_connected() const {
  // One flood fill per label: each must reach every pixel carrying it.
  const auto sizes_by_label = sizes();
  std::vector<bool> started(ns_, false);
  std::vector<bool> visited(labels_.size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < labels_.size(); ++start) {
    const auto label = static_cast<std::size_t>(labels_[start]);
    if (started[label]) continue;
    started[label] = true;
    std::size_t reached = 0;
    stack.assign(1, start);
    visited[start] = true;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++reached;
      const std::size_t x = i % width_;
      const std::size_t y = i / width_;
      const auto visit = [&](std::size_t n) {
        if (!visited[n] && static_cast<std::size_t>(labels_[n]) == label) {
          visited[n] = true;
          stack.push_back(n);
        }
      };
      if (x > 0) visit(i - 1);
      if (x + 1 < width_) visit(i + 1);
      if (y > 0) visit(i - width_);
      if (y + 1 < height_) visit(i + width_);
    }
    if (reached != sizes_by_label[label]) return false;
  }
  return true;
}

}  // namespace evoxplain
