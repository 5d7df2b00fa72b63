#include "nltd/resize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace nltd {
namespace {

double catmull_rom(double x) {
  x = std::abs(x);
  if (x < 1.0) return (1.5 * x - 2.5) * x * x + 1.0;
  if (x < 2.0) return ((-0.5 * x + 2.5) * x - 4.0) * x + 2.0;
  return 0.0;
}

struct Taps {
  std::array<std::size_t, 4> index{};
  std::array<double, 4> weight{};
};

std::vector<Taps> taps_for(std::size_t in, std::size_t out) {
  std::vector<Taps> taps(out);
  const double ratio = static_cast<double>(in) / static_cast<double>(out);
  const auto last = static_cast<std::ptrdiff_t>(in) - 1;
  for (std::size_t o = 0; o < out; ++o) {
    const double src = (static_cast<double>(o) + 0.5) * ratio - 0.5;
    const double base = std::floor(src);
    for (int j = 0; j < 4; ++j) {
      const double pos = base - 1.0 + j;
      const auto clamped = std::clamp(static_cast<std::ptrdiff_t>(pos), std::ptrdiff_t{0}, last);
      taps[o].index[j] = static_cast<std::size_t>(clamped);
      taps[o].weight[j] = catmull_rom(src - pos);
    }
  }
  return taps;
}

}  // namespace

std::size_t scaled_extent(std::size_t n, double scale) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * scale + 0.5));
}

Image resize_bicubic(const Image& image, std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) throw SizeError("resize target must be non-empty");
  const std::size_t ih = image.height();
  const std::size_t iw = image.width();
  const auto col_taps = taps_for(iw, width);
  const auto row_taps = taps_for(ih, height);

  // Columns first: ih x width x 3.
  Tensor tmp(Shape{ih, width, 3});
  for (std::size_t ch = 0; ch < 3; ++ch) {
    for (std::size_t c = 0; c < width; ++c) {
      const Taps& t = col_taps[c];
      for (std::size_t r = 0; r < ih; ++r) {
        double v = 0.0;
        for (int j = 0; j < 4; ++j) v += t.weight[j] * image.at(r, t.index[j], ch);
        tmp[r + ih * (c + width * ch)] = v;
      }
    }
  }

  Image out(height, width);
  for (std::size_t ch = 0; ch < 3; ++ch) {
    for (std::size_t c = 0; c < width; ++c) {
      const double* col = tmp.data().data() + ih * (c + width * ch);
      for (std::size_t r = 0; r < height; ++r) {
        const Taps& t = row_taps[r];
        double v = 0.0;
        for (int j = 0; j < 4; ++j) v += t.weight[j] * col[t.index[j]];
        out.at(r, c, ch) = v;
      }
    }
  }
  return out;
}

}  // namespace nltd
