#include "nltd/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numbers>
#include <thread>

#include "nltd/color.hpp"
#include "nltd/patch.hpp"
#include "nltd/resize.hpp"

namespace nltd {
namespace {

void require_group(const Tensor& group) {
  if (group.order() != 4 || group.shape()[2] != 3 || group.shape()[0] != group.shape()[1]) {
    throw DimensionError("group must have shape p x p x 3 x K");
  }
}

const RealMatrix& cached_dct(std::size_t n) {
  thread_local std::map<std::size_t, RealMatrix> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, dct_matrix(n)).first;
  return it->second;
}

// Channel c of a p x p x 3 x K tensor as p x p x K.
template <class T>
BasicTensor<T> take_channel(const BasicTensor<T>& t, std::size_t channel) {
  const std::size_t p = t.shape()[0] * t.shape()[1];
  const std::size_t k = t.shape()[3];
  BasicTensor<T> out(Shape{t.shape()[0], t.shape()[1], k});
  for (std::size_t j = 0; j < k; ++j) {
    std::copy_n(t.data().begin() + static_cast<std::ptrdiff_t>(p * (channel + 3 * j)), p,
                out.data().begin() + static_cast<std::ptrdiff_t>(p * j));
  }
  return out;
}

template <class T>
void put_channel(BasicTensor<T>& t, std::size_t channel, const BasicTensor<T>& slice) {
  const std::size_t p = t.shape()[0] * t.shape()[1];
  const std::size_t k = t.shape()[3];
  for (std::size_t j = 0; j < k; ++j) {
    std::copy_n(slice.data().begin() + static_cast<std::ptrdiff_t>(p * j), p,
                t.data().begin() + static_cast<std::ptrdiff_t>(p * (channel + 3 * j)));
  }
}

// t x_0 A x_1 B x_2 C for an order-3 tensor.
template <class T>
BasicTensor<T> apply3(const BasicTensor<T>& t, const Matrix<T>& a, const Matrix<T>& b,
                      const Matrix<T>& c) {
  return mode_product(mode_product(mode_product(t, a, 0), b, 1), c, 2);
}

}  // namespace

double universal_threshold(double lambda, double sigma, std::size_t n) noexcept {
  if (n <= 1) return 0.0;
  return lambda * sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

RealMatrix dct_matrix(std::size_t n) {
  RealMatrix d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double alpha = k == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
    for (std::size_t i = 0; i < n; ++i) {
      d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
          alpha * std::cos(std::numbers::pi * (2.0 * static_cast<double>(i) + 1.0) *
                           static_cast<double>(k) / (2.0 * nn));
    }
  }
  return d;
}

FilterOutput filter_hosvd4d(const Tensor& group, const DenoiseConfig& cfg) {
  require_group(group);
  const std::size_t p = group.shape()[0];
  const std::size_t k = group.shape()[3];
  if (p == 1 && k == 1) return {group, group.size(), frobenius(group), 0.0};

  static constexpr std::array<std::size_t, 4> kModes{0, 1, 2, 3};
  const auto u = hosvd_factors(group, kModes);

  Tensor core = group;
  for (std::size_t m = 0; m < 4; ++m) core = mode_product(core, RealMatrix(u[m].transpose()), m);

  FilterOutput out;
  out.coefficient_norm = frobenius(core);
  out.retained =
      hard_threshold_inplace(core, universal_threshold(cfg.lambda, cfg.sigma, p * p * 3 * k));
  for (std::size_t m = 0; m < 4; ++m) core = mode_product(core, u[m], m);
  out.group = std::move(core);
  return out;
}

RealMatrix mstsvd_group_factor(const Tensor& group) {
  require_group(group);
  static constexpr std::array<std::size_t, 1> kGroupMode{2};
  return hosvd_factors(luminance(group), kGroupMode).front();
}

FilterOutput filter_mstsvd(const Tensor& group, const DenoiseConfig& cfg) {
  require_group(group);
  const std::size_t p = group.shape()[0];
  const std::size_t k = group.shape()[3];
  const double tau =
      universal_threshold(cfg.lambda, std::sqrt(3.0) * cfg.sigma, p * p * k);

  const ComplexTensor spectrum = dft3_forward(group);

  // Channel 0 is real: it is three times the luminance.
  const Tensor lum = real_part(take_channel(spectrum, 0));
  static constexpr std::array<std::size_t, 3> kAll{0, 1, 2};
  static constexpr std::array<std::size_t, 2> kSpatial{0, 1};
  const auto u_lum = hosvd_factors(lum, kAll);
  const RealMatrix& u_group = u_lum[2];

  Tensor core_lum = apply3(lum, RealMatrix(u_lum[0].transpose()),
                           RealMatrix(u_lum[1].transpose()), RealMatrix(u_group.transpose()));

  const ComplexTensor chroma = take_channel(spectrum, 1);
  const auto u_chroma = hosvd_factors(chroma, kSpatial);
  const ComplexMatrix u_group_c = u_group.cast<Complex>();
  ComplexTensor core_chroma = apply3(chroma, ComplexMatrix(u_chroma[0].adjoint()),
                                     ComplexMatrix(u_chroma[1].adjoint()),
                                     ComplexMatrix(u_group_c.transpose()));

  FilterOutput out;
  const double n0 = frobenius(core_lum);
  const double n1 = frobenius(core_chroma);
  out.coefficient_norm = std::sqrt(n0 * n0 + 2.0 * n1 * n1);
  out.retained = hard_threshold_inplace(core_lum, tau);
  out.retained += 2 * hard_threshold_inplace(core_chroma, tau);

  const Tensor lum_hat = apply3(core_lum, u_lum[0], u_lum[1], u_group);
  const ComplexTensor chroma_hat = apply3(core_chroma, u_chroma[0], u_chroma[1], u_group_c);

  ComplexTensor filtered(spectrum.shape());
  put_channel(filtered, 0, to_complex(lum_hat));
  put_channel(filtered, 1, chroma_hat);
  put_channel(filtered, 2, conj(chroma_hat));

  Dft3Inverse back = dft3_inverse_with_residue(filtered);
  out.group = std::move(back.tensor);
  out.max_imag_residue = back.max_imag_residue;
  return out;
}

std::array<double, 3> cdct_channel_thresholds(const DenoiseConfig& cfg, std::size_t patch,
                                              std::size_t count) {
  const double base = universal_threshold(cfg.lambda, cfg.sigma, patch * patch * 3 * count);
  const auto r = opponent_row_norms();
  return {base * r[0], base * r[1], base * r[2]};
}

FilterOutput filter_cdct(const Tensor& group, const DenoiseConfig& cfg) {
  require_group(group);
  const std::size_t p = group.shape()[0];
  const std::size_t k = group.shape()[3];
  const RealMatrix& dp = cached_dct(p);
  const RealMatrix& dk = cached_dct(k);

  Tensor coef = opponent_forward(group);
  coef = mode_product(coef, dp, 0);
  coef = mode_product(coef, dp, 1);
  coef = mode_product(coef, dk, 3);

  const auto tau = cdct_channel_thresholds(cfg, p, k);
  const auto r = opponent_row_norms();
  const std::size_t plane = p * p;
  auto c = coef.data();
  FilterOutput out;
  double energy = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t ch = (i / plane) % 3;
    // Opponent rows are mutually orthogonal; dividing by their norms whitens
    // the coefficients, so this energy equals ||group||^2.
    energy += (c[i] / r[ch]) * (c[i] / r[ch]);
    if (std::abs(c[i]) <= tau[ch]) {
      c[i] = 0.0;
    } else {
      ++out.retained;
    }
  }
  out.coefficient_norm = std::sqrt(energy);

  coef = mode_product(coef, RealMatrix(dk.transpose()), 3);
  coef = mode_product(coef, RealMatrix(dp.transpose()), 1);
  coef = mode_product(coef, RealMatrix(dp.transpose()), 0);
  out.group = opponent_inverse(coef);
  return out;
}

FilterOutput filter_group(const Tensor& group, const DenoiseConfig& cfg) {
  switch (cfg.method) {
    case Method::mstsvd: return filter_mstsvd(group, cfg);
    case Method::hosvd4d: return filter_hosvd4d(group, cfg);
    case Method::cdct: return filter_cdct(group, cfg);
  }
  throw ConfigError("unknown method");
}

Image denoise(const Image& noisy, const DenoiseConfig& cfg) {
  cfg.validate();
  const std::size_t h = noisy.height();
  const std::size_t w = noisy.width();
  const std::size_t ps = cfg.patch_size;
  if (h < ps || w < ps) throw SizeError("image is smaller than the patch size");

  const Tensor lum = luminance(noisy.tensor());
  const std::vector<Coord> refs = reference_positions(h, w, ps, cfg.step);
  AggregationBuffer buffer(h, w);

  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(workers, 1);

  struct Slot {
    std::vector<Coord> coords;
    FilterOutput filtered;
  };
  // Groups are filtered in parallel in fixed-size batches and written back
  // sequentially in reference order, so the result is independent of the
  // worker count.
  constexpr std::size_t kBatch = 512;
  std::vector<Slot> slots(std::min(kBatch, refs.size()));

  auto work = [&](std::size_t begin, std::size_t end, std::size_t first, std::size_t stride) {
    for (std::size_t i = begin + first; i < end; i += stride) {
      Slot& s = slots[i - begin];
      Match m = match_block(lum, refs[i], cfg);
      PatchGroup g = assemble_group(noisy, m.coords, ps);
      s.filtered = filter_group(g.data, cfg);
      s.coords = std::move(m.coords);
    }
  };

  for (std::size_t begin = 0; begin < refs.size(); begin += kBatch) {
    const std::size_t end = std::min(refs.size(), begin + kBatch);
    if (workers == 1) {
      work(begin, end, 0, 1);
    } else {
      std::vector<std::exception_ptr> errors(workers);
      {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
          pool.emplace_back([&, t] {
            try {
              work(begin, end, t, workers);
            } catch (...) {
              errors[t] = std::current_exception();
            }
          });
        }
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t i = begin; i < end; ++i) {
      const Slot& s = slots[i - begin];
      const double weight = cfg.weighting == AggregationWeighting::uniform
                                ? 1.0
                                : 1.0 / (1.0 + static_cast<double>(s.filtered.retained));
      buffer.add(s.filtered.group, s.coords, weight);
    }
  }
  return buffer.finalize();
}

Image denoise_resized(const Image& noisy, double scale, const DenoiseConfig& cfg) {
  if (!(scale > 0.0 && scale < 1.0)) throw ConfigError("resize scale must lie in (0, 1)");
  const std::size_t sh = scaled_extent(noisy.height(), scale);
  const std::size_t sw = scaled_extent(noisy.width(), scale);
  if (sh < cfg.patch_size || sw < cfg.patch_size) {
    throw SizeError("downscaled image is smaller than the patch size");
  }
  const Image small = resize_bicubic(noisy, sh, sw);
  const Image cleaned = denoise(small, cfg);
  return resize_bicubic(cleaned, noisy.height(), noisy.width());
}

Image run_denoiser(const Image& noisy, const DenoiseConfig& cfg) {
  if (cfg.resize) return denoise_resized(noisy, *cfg.resize, cfg);
  return denoise(noisy, cfg);
}

}  // namespace nltd
