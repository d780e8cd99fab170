#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "evoxplain/image.hpp"

namespace evoxplain {

// PNG decoding accepts gray, palette, RGB and RGBA at 8 or 16 bits; alpha is
// composited over opaque black. Encoding always writes 8-bit RGB.

RasterImage decode_png(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const RasterImage& image);

RasterImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const RasterImage& image);

}  // namespace evoxplain
