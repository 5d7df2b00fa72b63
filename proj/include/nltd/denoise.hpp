#pragma once

// Collaborative filters and the grouping / filtering / aggregation pipeline.
//
// Every filter maps a p x p x 3 x K group to a filtered group of the same
// shape: forward transforms, hard thresholding of the coefficients, inverse
// transforms. With sigma = 0 the threshold is 0 and each filter reproduces
// its input up to rounding.

#include <array>
#include <cstddef>

#include "nltd/config.hpp"
#include "nltd/image.hpp"
#include "nltd/tensor.hpp"

namespace nltd {

struct FilterOutput {
  Tensor group;
  std::size_t retained = 0;       // coefficients surviving the threshold
  double coefficient_norm = 0.0;  // Frobenius norm of the (noise-whitened) coefficients
  double max_imag_residue = 0.0;  // imaginary part discarded on return to RGB
};

// lambda * sigma * sqrt(2 ln n); zero for n <= 1.
[[nodiscard]] double universal_threshold(double lambda, double sigma, std::size_t n) noexcept;

// Orthonormal DCT-II matrix, rows are frequencies.
[[nodiscard]] RealMatrix dct_matrix(std::size_t n);

// Learned 4D HOSVD: all four factors from the group's own unfoldings.
// Threshold lambda sigma sqrt(2 ln n), n = p^2 * 3 * K.
[[nodiscard]] FilterOutput filter_hosvd4d(const Tensor& group, const DenoiseConfig& cfg);

// Color 3-point DFT, then per-Fourier-channel HOSVD. Only channels 0 and 1
// are processed; channel 2 is rebuilt as the conjugate of channel 1. The
// group factor is learned from the luminance channel and shared.
// Threshold lambda * sqrt(3) sigma * sqrt(2 ln n), n = p^2 * K.
[[nodiscard]] FilterOutput filter_mstsvd(const Tensor& group, const DenoiseConfig& cfg);

// Group-mode factor MS-TSVD learns from the luminance channel.
[[nodiscard]] RealMatrix mstsvd_group_factor(const Tensor& group);

// Opponent color + separable DCT-II on rows, columns and the group mode.
[[nodiscard]] FilterOutput filter_cdct(const Tensor& group, const DenoiseConfig& cfg);

// Per opponent channel thresholds lambda sigma r_c sqrt(2 ln n), n = p^2 * 3 * K.
[[nodiscard]] std::array<double, 3> cdct_channel_thresholds(const DenoiseConfig& cfg,
                                                            std::size_t patch,
                                                            std::size_t count);

[[nodiscard]] FilterOutput filter_group(const Tensor& group, const DenoiseConfig& cfg);

// Full pipeline at the image's own resolution (cfg.resize is ignored).
[[nodiscard]] Image denoise(const Image& noisy, const DenoiseConfig& cfg);

// Bicubic downscale by `scale`, denoise, bicubic upscale to the input extents.
[[nodiscard]] Image denoise_resized(const Image& noisy, double scale, const DenoiseConfig& cfg);

// denoise_resized when cfg.resize is set, denoise otherwise.
[[nodiscard]] Image run_denoiser(const Image& noisy, const DenoiseConfig& cfg);

}  // namespace nltd
