#include "evoxplain/render.hpp"

#include <cstdint>
#include <vector>

namespace evoxplain {
namespace {

std::uint32_t mix(std::uint32_t v) {
  v ^= v >> 16;
  v *= 0x7feb352dU;
  v ^= v >> 15;
  v *= 0x846ca68bU;
  v ^= v >> 16;
  return v;
}

}  // namespace

RasterImage render_label_tint(const SuperpixelMap& map) {
  std::vector<Rgb> pixels;
  pixels.reserve(map.labels().size());
  for (auto label : map.labels()) {
    const std::uint32_t h = mix(static_cast<std::uint32_t>(label) + 1U);
    // Keep every channel away from 0 so no tint reads as a mask.
    pixels.push_back(Rgb{static_cast<std::uint8_t>(64 + (h & 0xBF)),
                         static_cast<std::uint8_t>(64 + ((h >> 8) & 0xBF)),
                         static_cast<std::uint8_t>(64 + ((h >> 16) & 0xBF))});
  }
  return RasterImage(map.width(), map.height(), std::move(pixels));
}

RasterImage render_boundaries(const RasterImage& image, const SuperpixelMap& map, Rgb color) {
  std::vector<Rgb> pixels(image.pixels().begin(), image.pixels().end());
  const std::size_t w = map.width();
  const std::size_t h = map.height();
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto label = map.at(x, y);
      const bool edge = (x + 1 < w && map.at(x + 1, y) != label) ||
                        (y + 1 < h && map.at(x, y + 1) != label);
      if (edge) pixels[y * w + x] = color;
    }
  }
  return RasterImage(image.width(), image.height(), std::move(pixels));
}

}  // namespace evoxplain
