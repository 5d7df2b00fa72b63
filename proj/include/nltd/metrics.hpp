#pragma once

#include "nltd/image.hpp"

namespace nltd {

struct MetricOptions {
  // Quantize both images to 8 bits before measuring.
  bool quantize = false;
};

// Squared Frobenius difference over all H * W * 3 samples.
[[nodiscard]] double mse(const Image& a, const Image& b, MetricOptions opts = {});

// 10 log10(255^2 / mse); +infinity for identical inputs.
[[nodiscard]] double psnr(const Image& a, const Image& b, MetricOptions opts = {});

struct SsimResult {
  double value = 1.0;
  bool window_shrunk = false;  // image smaller than the 11 x 11 window
};

// Mean SSIM on the luminance plane: 11 x 11 Gaussian window (std 1.5),
// valid positions only, C1 = (0.01 * 255)^2, C2 = (0.03 * 255)^2.
[[nodiscard]] SsimResult ssim_detailed(const Image& a, const Image& b, MetricOptions opts = {});
[[nodiscard]] double ssim(const Image& a, const Image& b, MetricOptions opts = {});

}  // namespace nltd
