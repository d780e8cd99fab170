#pragma once

#include "evoxplain/image.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain {

/// Each superpixel filled with a colour derived from a hash of its label.
RasterImage render_label_tint(const SuperpixelMap& map);

/// The image with superpixel boundaries (pixels whose right or lower
/// neighbour has a different label) drawn in `color`.
RasterImage render_boundaries(const RasterImage& image, const SuperpixelMap& map,
                              Rgb color = Rgb{255, 255, 0});

}  // namespace evoxplain
