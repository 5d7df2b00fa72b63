#pragma once

#include <cstddef>

#include "nltd/tensor.hpp"

namespace nltd {

// RGB image with real-valued samples on the [0, 255] scale, stored as an
// H x W x 3 tensor (row index fastest). Values are not clamped in memory.
class Image {
 public:
  Image() : Image(1, 1) {}
  Image(std::size_t height, std::size_t width) : pixels_(Shape{height, width, 3}) {}
  explicit Image(Tensor pixels);

  [[nodiscard]] std::size_t height() const noexcept { return pixels_.shape()[0]; }
  [[nodiscard]] std::size_t width() const noexcept { return pixels_.shape()[1]; }

  double& at(std::size_t row, std::size_t col, std::size_t channel) noexcept {
    return pixels_[row + height() * (col + width() * channel)];
  }
  [[nodiscard]] double at(std::size_t row, std::size_t col, std::size_t channel) const noexcept {
    return pixels_[row + height() * (col + width() * channel)];
  }

  [[nodiscard]] const Tensor& tensor() const noexcept { return pixels_; }
  [[nodiscard]] Tensor& tensor() noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  Tensor pixels_;
};

[[nodiscard]] bool same_extents(const Image& a, const Image& b) noexcept;

}  // namespace nltd

namespace nltd {

// Rounds half up and clamps to [0, 255], as done when writing 8-bit files.
[[nodiscard]] Image quantized(const Image& image);

}  // namespace nltd
