#pragma once

// Dense small-tensor algebra used by the collaborative filters.
//
// Storage is "first index fastest": element (i_0, ..., i_{N-1}) lives at
// i_0 + I_0 * (i_1 + I_1 * (i_2 + ...)). Modes are 0-based throughout.
// The mode-n unfolding maps that element to row i_n and column
//   j = sum_{k != n} i_k * J_k,  J_k = prod_{m < k, m != n} I_m,
// i.e. the remaining indices in their natural order, first fastest.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nltd/errors.hpp"

namespace nltd {

using Complex = std::complex<double>;

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

using Shape = std::vector<std::size_t>;

template <class T>
class BasicTensor {
 public:
  using value_type = T;

  // A 1-element order-1 tensor holding zero.
  BasicTensor() : shape_{1}, data_(1, T{}) {}

  explicit BasicTensor(Shape shape) : shape_(std::move(shape)) {
    data_.assign(checked_size(shape_), T{});
  }

  BasicTensor(Shape shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != checked_size(shape_)) {
      throw DimensionError("tensor data length does not match its shape");
    }
  }

  [[nodiscard]] std::size_t order() const noexcept { return shape_.size(); }
  [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t extent(std::size_t mode) const {
    if (mode >= shape_.size()) {
      throw ModeRangeError("mode " + std::to_string(mode) + " out of range for order " +
                           std::to_string(shape_.size()));
    }
    return shape_[mode];
  }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

  [[nodiscard]] std::span<T> data() noexcept { return data_; }
  [[nodiscard]] std::span<const T> data() const noexcept { return data_; }

  T& operator[](std::size_t linear) noexcept { return data_[linear]; }
  const T& operator[](std::size_t linear) const noexcept { return data_[linear]; }

  // Multi-index access, first index fastest.
  T& at(std::span<const std::size_t> index) { return data_[linear_index(index)]; }
  const T& at(std::span<const std::size_t> index) const { return data_[linear_index(index)]; }

  [[nodiscard]] std::size_t linear_index(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size()) {
      throw DimensionError("index arity does not match tensor order");
    }
    std::size_t linear = 0;
    for (std::size_t k = index.size(); k-- > 0;) {
      if (index[k] >= shape_[k]) throw BoundsError("tensor index out of bounds");
      linear = linear * shape_[k] + index[k];
    }
    return linear;
  }

  friend bool operator==(const BasicTensor&, const BasicTensor&) = default;

 private:
  static std::size_t checked_size(const Shape& shape) {
    if (shape.empty()) throw DimensionError("tensor order must be at least 1");
    std::size_t n = 1;
    for (std::size_t e : shape) {
      if (e == 0) throw DimensionError("tensor extents must be positive");
      n *= e;
    }
    return n;
  }

  Shape shape_;
  std::vector<T> data_;
};

using Tensor = BasicTensor<double>;
using ComplexTensor = BasicTensor<Complex>;

template <class T>
[[nodiscard]] Matrix<T> unfold(const BasicTensor<T>& t, std::size_t mode);

template <class T>
[[nodiscard]] BasicTensor<T> fold(const Matrix<T>& m, std::size_t mode, const Shape& shape);

// t x_mode M: contracts mode `mode` of t with the columns of M.
template <class T>
[[nodiscard]] BasicTensor<T> mode_product(const BasicTensor<T>& t, const Matrix<T>& m,
                                          std::size_t mode);

// Gram matrix of the mode-n unfolding, A_(n) * A_(n)^H, without forming the unfolding.
template <class T>
[[nodiscard]] Matrix<T> mode_gram(const BasicTensor<T>& t, std::size_t mode);

template <class T>
[[nodiscard]] double frobenius(const BasicTensor<T>& t) noexcept;

template <class T>
struct SvdResult {
  Matrix<T> u;
  Eigen::VectorXd s;  // descending, nonnegative
  Matrix<T> v;
};

// Thin SVD, M = U diag(s) V^H. Throws NumericError on non-finite input.
template <class T>
[[nodiscard]] SvdResult<T> svd(const Matrix<T>& m);

// Full square left-singular-vector factor for each requested mode, ordered by
// descending singular value. Column phases are normalized so the entry of
// largest magnitude is real and positive.
template <class T>
[[nodiscard]] std::vector<Matrix<T>> hosvd_factors(const BasicTensor<T>& t,
                                                   std::span<const std::size_t> modes);

template <class T>
struct ThresholdResult {
  BasicTensor<T> tensor;
  std::size_t retained = 0;
};

// Zeroes every coefficient with |c| <= tau; returns the survivors' count.
template <class T>
[[nodiscard]] ThresholdResult<T> hard_threshold(const BasicTensor<T>& t, double tau);

// In-place variant used on hot paths.
template <class T>
std::size_t hard_threshold_inplace(BasicTensor<T>& t, double tau);

[[nodiscard]] ComplexTensor to_complex(const Tensor& t);
[[nodiscard]] Tensor real_part(const ComplexTensor& t);
[[nodiscard]] ComplexTensor conj(const ComplexTensor& t);

}  // namespace nltd
