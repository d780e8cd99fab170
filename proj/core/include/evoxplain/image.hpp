#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace evoxplain {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBlack{0, 0, 0};

/// Immutable 8-bit RGB raster, row-major.
class RasterImage {
 public:
  /// Throws Error(Input) on zero area or when pixels.size() != width*height.
  RasterImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels);

  static RasterImage filled(std::size_t width, std::size_t height, Rgb color);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }
  std::span<const Rgb> pixels() const noexcept { return pixels_; }

  const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  bool same_size(std::size_t width, std::size_t height) const noexcept {
    return width_ == width && height_ == height;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Rgb> pixels_;
};

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct LabImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Lab> pixels;

  const Lab& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

}  // namespace evoxplain
