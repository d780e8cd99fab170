#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace evoxplain {

/// Per-pixel superpixel labels in [0, ns). Every label owns at least one pixel.
class SuperpixelMap {
 public:
  using Label = std::int32_t;

  /// Throws Error(Input) when ns == 0, dimensions are zero or inconsistent,
  /// a label is out of range, or some label in [0, ns) owns no pixel.
  SuperpixelMap(std::size_t width, std::size_t height, std::vector<Label> labels,
                std::size_t ns);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t ns() const noexcept { return ns_; }
  std::span<const Label> labels() const noexcept { return labels_; }
  Label at(std::size_t x, std::size_t y) const { return labels_[y * width_ + x]; }

  /// Pixel indices (row-major, ascending) owned by each superpixel.
  std::vector<std::vector<std::size_t>> members() const;

  std::vector<std::size_t> sizes() const;

  /// True when every superpixel's pixel set is 4-connected.
  bool is_four_connected() const;

  friend bool operator==(const SuperpixelMap&, const SuperpixelMap&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Label> labels_;
  std::size_t ns_;
};

}  // namespace evoxplain
