#pragma once

#include "evoxplain/image.hpp"

namespace evoxplain {

/// sRGB (D65) to CIELAB. The white point is the sRGB->XYZ matrix applied to
/// (1,1,1), so (255,255,255) maps to exactly (100, 0, 0).
Lab srgb_to_lab(Rgb rgb) noexcept;

LabImage rgb_to_lab(const RasterImage& image);

}  // namespace evoxplain
