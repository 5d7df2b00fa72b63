#include "nltd/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace nltd {

Image synth_awgn(const Image& clean, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  Image noisy = clean;
  if (sigma == 0.0) return noisy;
  std::mt19937_64 gen(seed);
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  for (double& v : noisy.tensor().data()) {
    const double u = static_cast<double>((gen() >> 11) + 1) * kScale;
    const double w = static_cast<double>(gen() >> 11) * kScale;
    v += sigma * std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * w);
  }
  return noisy;
}

Image mean_ground_truth(std::span<const Image> frames) {
  if (frames.size() < 2) throw SizeError("mean ground truth needs at least two frames");
  Image mean(frames.front().height(), frames.front().width());
  auto acc = mean.tensor().data();
  for (const Image& f : frames) {
    if (!same_extents(f, frames.front())) throw DimensionError("frames differ in extents");
    const auto src = f.tensor().data();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += src[i];
  }
  const double n = static_cast<double>(frames.size());
  for (double& v : acc) v /= n;
  return mean;
}

}  // namespace nltd
