#pragma once

// Grouping and aggregation: the reference grid, block matching on the
// luminance plane, group assembly and the weighted write-back buffer.
// Coordinates are 0-based top-left corners.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "nltd/config.hpp"
#include "nltd/image.hpp"
#include "nltd/tensor.hpp"

namespace nltd {

struct Coord {
  std::size_t row = 0;
  std::size_t col = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

// Offsets {0, step, 2 step, ...} along one axis, with the last admissible
// offset (extent - patch) always present. Throws SizeError if extent < patch.
[[nodiscard]] std::vector<std::size_t> axis_positions(std::size_t extent, std::size_t patch,
                                                      std::size_t step);

// Cartesian product of the row and column grids, row-major.
[[nodiscard]] std::vector<Coord> reference_positions(std::size_t height, std::size_t width,
                                                     std::size_t patch, std::size_t step);

struct Match {
  std::vector<Coord> coords;       // coords[0] is the reference
  std::vector<double> distances;   // ascending, SSD / patch^2
  bool incomplete = false;         // fewer candidates than the requested group size
};

// K nearest patches to `ref` under luminance SSD inside the search window
// centered on ref (clipped to the image). Ties resolve in row-major window
// scan order; the reference itself always comes first.
[[nodiscard]] Match match_block(const Tensor& lum, Coord ref, const DenoiseConfig& cfg);

struct PatchGroup {
  Tensor data;  // patch x patch x 3 x K
  std::vector<Coord> coords;
  std::vector<double> distances;
  bool incomplete = false;

  [[nodiscard]] std::size_t patch_size() const noexcept { return data.shape()[0]; }
  [[nodiscard]] std::size_t count() const noexcept { return data.shape()[3]; }
};

// patch x patch x 3 block whose top-left corner is `at`.
[[nodiscard]] Tensor extract_patch(const Image& image, Coord at, std::size_t patch);

[[nodiscard]] PatchGroup assemble_group(const Image& image, std::span<const Coord> coords,
                                        std::size_t patch);

// Slice k of the group mode, as a patch x patch x 3 tensor.
[[nodiscard]] Tensor group_patch(const Tensor& group, std::size_t k);

class AggregationBuffer {
 public:
  AggregationBuffer(std::size_t height, std::size_t width);

  // Accumulates weight * patch k of `group` at coords[k]. Throws BoundsError
  // for a footprint outside the image.
  void add(const Tensor& group, std::span<const Coord> coords, double weight);

  // Element-wise sum with another buffer of the same extents.
  void merge(const AggregationBuffer& other);

  // Per-pixel weighted mean. Throws CoverageError if a pixel has zero weight.
  [[nodiscard]] Image finalize() const;

  [[nodiscard]] const Tensor& numerator() const noexcept { return numerator_; }
  [[nodiscard]] const Tensor& weights() const noexcept { return weights_; }

 private:
  std::size_t height_;
  std::size_t width_;
  Tensor numerator_;  // H x W x 3
  Tensor weights_;    // H x W
};

}  // namespace nltd
