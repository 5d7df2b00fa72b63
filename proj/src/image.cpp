#include "nltd/image.hpp"

#include <algorithm>
#include <cmath>

namespace nltd {

Image::Image(Tensor pixels) : pixels_(std::move(pixels)) {
  if (pixels_.order() != 3 || pixels_.shape()[2] != 3) {
    throw DimensionError("image tensor must have shape H x W x 3");
  }
}

bool same_extents(const Image& a, const Image& b) noexcept {
  return a.height() == b.height() && a.width() == b.width();
}

}  // namespace nltd

namespace nltd {

Image quantized(const Image& image) {
  Image out = image;
  for (double& v : out.tensor().data()) v = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
  return out;
}

}  // namespace nltd
