#pragma once

// Fixed 3x3 color-mode transforms: the opponent (luminance/chrominance) matrix
// and the 3-point DFT matrix that diagonalizes the block-circulant RGB layout.
// Every function takes the index of the color mode, which must have extent 3.

#include <array>

#include "nltd/tensor.hpp"

namespace nltd {

inline constexpr std::size_t kDefaultColorMode = 2;

template <class T>
struct ColorMatrix {
  Matrix<T> forward;
  Matrix<T> inverse;
};

// Rows (1/3, 1/3, 1/3), (1/2, 0, -1/2), (1/4, -1/2, 1/4).
[[nodiscard]] const ColorMatrix<double>& opponent_color();

// Unnormalized DFT: forward * forward^H = 3 I, inverse = forward^H / 3.
[[nodiscard]] const ColorMatrix<Complex>& dft3_color();

// Euclidean norms of the opponent rows: (1/sqrt 3, 1/sqrt 2, sqrt(3/8)).
// White noise of std sigma maps to std sigma * norm[c] in opponent channel c.
[[nodiscard]] std::array<double, 3> opponent_row_norms();

[[nodiscard]] Tensor opponent_forward(const Tensor& t, std::size_t color_mode = kDefaultColorMode);
[[nodiscard]] Tensor opponent_inverse(const Tensor& t, std::size_t color_mode = kDefaultColorMode);

[[nodiscard]] ComplexTensor dft3_forward(const Tensor& t,
                                         std::size_t color_mode = kDefaultColorMode);

struct Dft3Inverse {
  Tensor tensor;
  double max_imag_residue = 0.0;
};

// Throws SymmetryError when the largest imaginary residue of the inverse
// exceeds 1e-6 * ||t||_F; smaller residues are discarded.
[[nodiscard]] Tensor dft3_inverse(const ComplexTensor& t,
                                  std::size_t color_mode = kDefaultColorMode);
[[nodiscard]] Dft3Inverse dft3_inverse_with_residue(const ComplexTensor& t,
                                                    std::size_t color_mode = kDefaultColorMode);

// Mean of the three channels; the color mode is removed from the shape.
[[nodiscard]] Tensor luminance(const Tensor& t, std::size_t color_mode = kDefaultColorMode);

}  // namespace nltd
