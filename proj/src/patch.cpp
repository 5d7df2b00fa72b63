#include "nltd/patch.hpp"

#include <algorithm>
#include <utility>

namespace nltd {

std::vector<std::size_t> axis_positions(std::size_t extent, std::size_t patch, std::size_t step) {
  if (patch == 0 || step == 0) throw SizeError("patch size and step must be positive");
  if (extent < patch) {
    throw SizeError("image extent " + std::to_string(extent) + " is smaller than patch size " +
                    std::to_string(patch));
  }
  const std::size_t last = extent - patch;
  // Strides wider than the patch would leave uncovered pixels.
  const std::size_t stride = std::min(step, patch);
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < last; p += stride) out.push_back(p);
  out.push_back(last);
  return out;
}

std::vector<Coord> reference_positions(std::size_t height, std::size_t width, std::size_t patch,
                                       std::size_t step) {
  const auto rows = axis_positions(height, patch, step);
  const auto cols = axis_positions(width, patch, step);
  std::vector<Coord> out;
  out.reserve(rows.size() * cols.size());
  for (std::size_t r : rows) {
    for (std::size_t c : cols) out.push_back({r, c});
  }
  return out;
}

namespace {

struct Window {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
};

Window window_along(std::size_t center, std::size_t extent, std::size_t patch, std::size_t side) {
  const auto half = static_cast<std::ptrdiff_t>(side / 2);
  const auto last = static_cast<std::ptrdiff_t>(extent - patch);
  const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(center) - half;
  const std::ptrdiff_t hi = lo + static_cast<std::ptrdiff_t>(side) - 1;
  return {static_cast<std::size_t>(std::max<std::ptrdiff_t>(lo, 0)),
          static_cast<std::size_t>(std::min(hi, last))};
}

}  // namespace

Match match_block(const Tensor& lum, Coord ref, const DenoiseConfig& cfg) {
  if (lum.order() != 2) throw DimensionError("match_block expects a single-channel image");
  const std::size_t h = lum.shape()[0];
  const std::size_t w = lum.shape()[1];
  const std::size_t ps = cfg.patch_size;
  if (h < ps || w < ps) throw SizeError("image smaller than patch");
  if (ref.row > h - ps || ref.col > w - ps) throw BoundsError("reference patch out of bounds");

  const Window rows = window_along(ref.row, h, ps, cfg.search_window);
  const Window cols = window_along(ref.col, w, ps, cfg.search_window);
  const auto pix = lum.data();
  const double norm = 1.0 / static_cast<double>(ps * ps);

  // (distance, scan index) for every candidate except the reference.
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve((rows.hi - rows.lo + 1) * (cols.hi - cols.lo + 1));
  const std::size_t win_w = cols.hi - cols.lo + 1;
  for (std::size_t r = rows.lo; r <= rows.hi; ++r) {
    for (std::size_t c = cols.lo; c <= cols.hi; ++c) {
      if (r == ref.row && c == ref.col) continue;
      double ssd = 0.0;
      for (std::size_t dc = 0; dc < ps; ++dc) {
        const double* a = pix.data() + ref.row + h * (ref.col + dc);
        const double* b = pix.data() + r + h * (c + dc);
        for (std::size_t dr = 0; dr < ps; ++dr) {
          const double d = a[dr] - b[dr];
          ssd += d * d;
        }
      }
      cand.emplace_back(ssd * norm, (r - rows.lo) * win_w + (c - cols.lo));
    }
  }

  const std::size_t k = std::max<std::size_t>(cfg.group_size, 1);
  const std::size_t take = std::min(k - 1, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());

  Match m;
  m.incomplete = cand.size() + 1 < k;
  m.coords.reserve(take + 1);
  m.distances.reserve(take + 1);
  m.coords.push_back(ref);
  m.distances.push_back(0.0);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t scan = cand[i].second;
    m.coords.push_back({rows.lo + scan / win_w, cols.lo + scan % win_w});
    m.distances.push_back(cand[i].first);
  }
  return m;
}

namespace {

void check_footprint(std::size_t h, std::size_t w, Coord at, std::size_t patch) {
  if (at.row + patch > h || at.col + patch > w) {
    throw BoundsError("patch at (" + std::to_string(at.row) + ", " + std::to_string(at.col) +
                      ") exceeds image bounds");
  }
}

}  // namespace

Tensor extract_patch(const Image& image, Coord at, std::size_t patch) {
  check_footprint(image.height(), image.width(), at, patch);
  Tensor out(Shape{patch, patch, 3});
  std::size_t i = 0;
  for (std::size_t ch = 0; ch < 3; ++ch) {
    for (std::size_t c = 0; c < patch; ++c) {
      for (std::size_t r = 0; r < patch; ++r) out[i++] = image.at(at.row + r, at.col + c, ch);
    }
  }
  return out;
}

PatchGroup assemble_group(const Image& image, std::span<const Coord> coords, std::size_t patch) {
  if (coords.empty()) throw SizeError("cannot assemble an empty group");
  PatchGroup g;
  g.data = Tensor(Shape{patch, patch, 3, coords.size()});
  g.coords.assign(coords.begin(), coords.end());
  const std::size_t h = image.height();
  const auto src = image.tensor().data();
  auto dst = g.data.data();
  std::size_t i = 0;
  for (const Coord& at : coords) {
    check_footprint(h, image.width(), at, patch);
    for (std::size_t ch = 0; ch < 3; ++ch) {
      for (std::size_t c = 0; c < patch; ++c) {
        const double* col = src.data() + at.row + h * (at.col + c + image.width() * ch);
        std::copy(col, col + patch, dst.data() + i);
        i += patch;
      }
    }
  }
  return g;
}

Tensor group_patch(const Tensor& group, std::size_t k) {
  if (group.order() != 4 || group.shape()[2] != 3) {
    throw DimensionError("group must have shape p x p x 3 x K");
  }
  if (k >= group.shape()[3]) throw BoundsError("group slice out of range");
  const std::size_t n = group.shape()[0] * group.shape()[1] * 3;
  Tensor out(Shape{group.shape()[0], group.shape()[1], 3});
  std::copy_n(group.data().begin() + static_cast<std::ptrdiff_t>(k * n), n, out.data().begin());
  return out;
}

AggregationBuffer::AggregationBuffer(std::size_t height, std::size_t width)
    : height_(height),
      width_(width),
      numerator_(Shape{height, width, 3}),
      weights_(Shape{height, width}) {}

void AggregationBuffer::add(const Tensor& group, std::span<const Coord> coords, double weight) {
  if (group.order() != 4 || group.shape()[2] != 3 || group.shape()[3] != coords.size()) {
    throw DimensionError("aggregation: group shape does not match coordinates");
  }
  const std::size_t p = group.shape()[0];
  const std::size_t q = group.shape()[1];
  const auto src = group.data();
  auto num = numerator_.data();
  auto wts = weights_.data();
  std::size_t i = 0;
  for (const Coord& at : coords) {
    if (at.row + p > height_ || at.col + q > width_) {
      throw BoundsError("aggregation footprint exceeds image bounds");
    }
    for (std::size_t ch = 0; ch < 3; ++ch) {
      for (std::size_t c = 0; c < q; ++c) {
        double* dst = num.data() + at.row + height_ * (at.col + c + width_ * ch);
        for (std::size_t r = 0; r < p; ++r) dst[r] += weight * src[i++];
      }
    }
    for (std::size_t c = 0; c < q; ++c) {
      double* dst = wts.data() + at.row + height_ * (at.col + c);
      for (std::size_t r = 0; r < p; ++r) dst[r] += weight;
    }
  }
}

void AggregationBuffer::merge(const AggregationBuffer& other) {
  if (other.height_ != height_ || other.width_ != width_) {
    throw DimensionError("aggregation: merging buffers of different extents");
  }
  auto num = numerator_.data();
  auto wts = weights_.data();
  const auto onum = other.numerator_.data();
  const auto owts = other.weights_.data();
  for (std::size_t i = 0; i < num.size(); ++i) num[i] += onum[i];
  for (std::size_t i = 0; i < wts.size(); ++i) wts[i] += owts[i];
}

Image AggregationBuffer::finalize() const {
  Image out(height_, width_);
  const auto num = numerator_.data();
  const auto wts = weights_.data();
  auto dst = out.tensor().data();
  const std::size_t plane = height_ * width_;
  for (std::size_t i = 0; i < plane; ++i) {
    if (!(wts[i] > 0.0)) {
      throw CoverageError("pixel (" + std::to_string(i % height_) + ", " +
                          std::to_string(i / height_) + ") received no aggregation weight");
    }
    for (std::size_t ch = 0; ch < 3; ++ch) dst[i + plane * ch] = num[i + plane * ch] / wts[i];
  }
  return out;
}

}  // namespace nltd
