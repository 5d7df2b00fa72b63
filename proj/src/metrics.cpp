#include "nltd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nltd/color.hpp"

namespace nltd {
namespace {

void require_same(const Image& a, const Image& b) {
  if (!same_extents(a, b)) throw DimensionError("metric inputs differ in extents");
}

std::vector<double> gaussian_window(std::size_t n, double sd) {
  std::vector<double> w(n);
  const double c = (static_cast<double>(n) - 1.0) / 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) - c;
    w[i] = std::exp(-x * x / (2.0 * sd * sd));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Valid-mode separable filtering of an h x w plane (row index fastest).
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t h, std::size_t w,
                                 const std::vector<double>& k) {
  const std::size_t n = k.size();
  const std::size_t oh = h - n + 1;
  const std::size_t ow = w - n + 1;
  std::vector<double> rows(oh * w);
  for (std::size_t c = 0; c < w; ++c) {
    for (std::size_t r = 0; r < oh; ++r) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += k[j] * src[r + j + h * c];
      rows[r + oh * c] = v;
    }
  }
  std::vector<double> out(oh * ow);
  for (std::size_t c = 0; c < ow; ++c) {
    for (std::size_t r = 0; r < oh; ++r) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += k[j] * rows[r + oh * (c + j)];
      out[r + oh * c] = v;
    }
  }
  return out;
}

}  // namespace

double mse(const Image& a, const Image& b, MetricOptions opts) {
  require_same(a, b);
  if (opts.quantize) return mse(quantized(a), quantized(b));
  const auto x = a.tensor().data();
  const auto y = b.tensor().data();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return sum / static_cast<double>(x.size());
}

double psnr(const Image& a, const Image& b, MetricOptions opts) {
  const double m = mse(a, b, opts);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

SsimResult ssim_detailed(const Image& a, const Image& b, MetricOptions opts) {
  require_same(a, b);
  if (opts.quantize) return ssim_detailed(quantized(a), quantized(b));
  constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

  const std::size_t h = a.height();
  const std::size_t w = a.width();
  SsimResult result;
  std::size_t n = 11;
  if (std::min(h, w) < n) {
    n = std::min(h, w);
    result.window_shrunk = true;
  }
  const auto kernel = gaussian_window(n, 1.5);

  const Tensor la = luminance(a.tensor());
  const Tensor lb = luminance(b.tensor());
  std::vector<double> x(la.data().begin(), la.data().end());
  std::vector<double> y(lb.data().begin(), lb.data().end());
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, h, w, kernel);
  const auto my = filter_valid(y, h, w, kernel);
  const auto sxx = filter_valid(xx, h, w, kernel);
  const auto syy = filter_valid(yy, h, w, kernel);
  const auto sxy = filter_valid(xy, h, w, kernel);

  double sum = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double mux = mx[i];
    const double muy = my[i];
    const double vx = sxx[i] - mux * mux;
    const double vy = syy[i] - muy * muy;
    const double cov = sxy[i] - mux * muy;
    sum += ((2.0 * mux * muy + kC1) * (2.0 * cov + kC2)) /
           ((mux * mux + muy * muy + kC1) * (vx + vy + kC2));
  }
  result.value = sum / static_cast<double>(mx.size());
  return result;
}

double ssim(const Image& a, const Image& b, MetricOptions opts) {
  return ssim_detailed(a, b, opts).value;
}

}  // namespace nltd
