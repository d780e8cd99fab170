#include "evoxplain/image.hpp"

#include <string>

#include "evoxplain/error.hpp"

namespace evoxplain {

RasterImage::RasterImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) {
    fail(ErrorKind::Input, "image must have non-zero width and height");
  }
  if (pixels_.size() != width_ * height_) {
    fail(ErrorKind::Input, "image data has " + std::to_string(pixels_.size()) +
                               " pixels, expected " + std::to_string(width_ * height_));
  }
}

RasterImage RasterImage::filled(std::size_t width, std::size_t height, Rgb color) {
  return RasterImage(width, height, std::vector<Rgb>(width * height, color));
}

}  // namespace evoxplain
