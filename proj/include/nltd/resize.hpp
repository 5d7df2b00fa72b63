#pragma once

#include <cstddef>

#include "nltd/image.hpp"

namespace nltd {

// round(n * scale), halves rounded up.
[[nodiscard]] std::size_t scaled_extent(std::size_t n, double scale);

// Separable Catmull-Rom (a = -0.5) interpolation with clamped edges. Pixel
// centers are aligned: source x = (x_out + 0.5) * in / out - 0.5.
[[nodiscard]] Image resize_bicubic(const Image& image, std::size_t height, std::size_t width);

}  // namespace nltd
