#include "nltd/color.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace nltd {
namespace {

void require_color_mode(const Shape& shape, std::size_t color_mode) {
  if (color_mode >= shape.size()) throw ModeRangeError("color mode out of range");
  if (shape[color_mode] != 3) {
    throw DimensionError("color mode must have extent 3, got " +
                         std::to_string(shape[color_mode]));
  }
}

}  // namespace

const ColorMatrix<double>& opponent_color() {
  static const ColorMatrix<double> m = [] {
    ColorMatrix<double> c;
    c.forward.resize(3, 3);
    c.forward << 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0,
                 0.5, 0.0, -0.5,
                 0.25, -0.5, 0.25;
    c.inverse = c.forward.inverse();
    return c;
  }();
  return m;
}

const ColorMatrix<Complex>& dft3_color() {
  static const ColorMatrix<Complex> m = [] {
    const double h = std::sqrt(3.0) / 2.0;
    const Complex w(-0.5, -h);
    const Complex wc(-0.5, h);
    ColorMatrix<Complex> c;
    c.forward.resize(3, 3);
    c.forward << 1.0, 1.0, 1.0,
                 1.0, w, wc,
                 1.0, wc, w;
    c.inverse = c.forward.adjoint() / 3.0;
    return c;
  }();
  return m;
}

std::array<double, 3> opponent_row_norms() {
  const auto& f = opponent_color().forward;
  return {f.row(0).norm(), f.row(1).norm(), f.row(2).norm()};
}

Tensor opponent_forward(const Tensor& t, std::size_t color_mode) {
  require_color_mode(t.shape(), color_mode);
  return mode_product(t, opponent_color().forward, color_mode);
}

Tensor opponent_inverse(const Tensor& t, std::size_t color_mode) {
  require_color_mode(t.shape(), color_mode);
  return mode_product(t, opponent_color().inverse, color_mode);
}

ComplexTensor dft3_forward(const Tensor& t, std::size_t color_mode) {
  require_color_mode(t.shape(), color_mode);
  return mode_product(to_complex(t), dft3_color().forward, color_mode);
}

Dft3Inverse dft3_inverse_with_residue(const ComplexTensor& t, std::size_t color_mode) {
  require_color_mode(t.shape(), color_mode);
  const ComplexTensor spatial = mode_product(t, dft3_color().inverse, color_mode);
  Dft3Inverse out{real_part(spatial), 0.0};
  for (const Complex& c : spatial.data()) {
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(c.imag()));
  }
  if (out.max_imag_residue > 1e-6 * frobenius(t)) {
    throw SymmetryError("dft3_inverse: input is not conjugate-symmetric (imaginary residue " +
                        std::to_string(out.max_imag_residue) + ")");
  }
  return out;
}

Tensor dft3_inverse(const ComplexTensor& t, std::size_t color_mode) {
  return dft3_inverse_with_residue(t, color_mode).tensor;
}

Tensor luminance(const Tensor& t, std::size_t color_mode) {
  require_color_mode(t.shape(), color_mode);
  Shape out_shape = t.shape();
  out_shape.erase(out_shape.begin() + static_cast<std::ptrdiff_t>(color_mode));
  if (out_shape.empty()) out_shape.push_back(1);

  std::size_t left = 1;
  for (std::size_t k = 0; k < color_mode; ++k) left *= t.shape()[k];
  const std::size_t right = t.size() / (3 * left);

  Tensor out(out_shape);
  const auto src = t.data();
  auto dst = out.data();
  for (std::size_t r = 0; r < right; ++r) {
    const double* base = src.data() + 3 * left * r;
    for (std::size_t l = 0; l < left; ++l) {
      dst[l + left * r] = (base[l] + base[l + left] + base[l + 2 * left]) / 3.0;
    }
  }
  return out;
}

}  // namespace nltd
