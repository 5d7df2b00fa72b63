#pragma once

#include <cstdint>
#include <span>

#include "nltd/image.hpp"

namespace nltd {

// Adds i.i.d. N(0, sigma^2) noise, no clipping.
//
// Stream: std::mt19937_64 seeded with `seed`. Each deviate consumes two
// 64-bit draws a, b mapped to u = ((a >> 11) + 1) * 2^-53 and
// v = (b >> 11) * 2^-53, giving sqrt(-2 ln u) * cos(2 pi v). Deviates are
// added in storage order (row fastest, then column, then channel).
// sigma = 0 returns the input unchanged.
[[nodiscard]] Image synth_awgn(const Image& clean, double sigma, std::uint64_t seed);

// Per-pixel mean of at least two frames of equal extents.
[[nodiscard]] Image mean_ground_truth(std::span<const Image> frames);

}  // namespace nltd
