#include "nltd/tensor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nltd {
namespace {

struct Slabs {
  std::size_t left = 1;   // product of extents before the mode
  std::size_t mid = 1;    // extent of the mode
  std::size_t right = 1;  // product of extents after the mode
};

Slabs slabs_of(const Shape& shape, std::size_t mode) {
  if (mode >= shape.size()) {
    throw ModeRangeError("mode " + std::to_string(mode) + " out of range for order " +
                         std::to_string(shape.size()));
  }
  Slabs s;
  for (std::size_t k = 0; k < mode; ++k) s.left *= shape[k];
  s.mid = shape[mode];
  for (std::size_t k = mode + 1; k < shape.size(); ++k) s.right *= shape[k];
  return s;
}

template <class T>
using MapC = Eigen::Map<const Matrix<T>>;
template <class T>
using Map = Eigen::Map<Matrix<T>>;

template <class T>
bool all_finite(const Matrix<T>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(std::abs(m(i, j)))) return false;
    }
  }
  return true;
}

// Rotate each column so its largest-magnitude entry is real and positive.
template <class T>
void normalize_phases(Matrix<T>& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, j));
      if (mag > best_mag + 1e-12) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag <= 0.0) continue;
    if constexpr (std::is_same_v<T, Complex>) {
      const Complex phase = u(best, j) / best_mag;
      u.col(j) *= std::conj(phase);
      u(best, j) = Complex(std::abs(u(best, j)), 0.0);
    } else {
      if (u(best, j) < 0.0) u.col(j) *= -1.0;
    }
  }
}

}  // namespace

template <class T>
Matrix<T> unfold(const BasicTensor<T>& t, std::size_t mode) {
  const Slabs s = slabs_of(t.shape(), mode);
  Matrix<T> m(static_cast<Eigen::Index>(s.mid), static_cast<Eigen::Index>(s.left * s.right));
  const auto src = t.data();
  for (std::size_t r = 0; r < s.right; ++r) {
    for (std::size_t i = 0; i < s.mid; ++i) {
      const T* row = src.data() + s.left * (i + s.mid * r);
      for (std::size_t l = 0; l < s.left; ++l) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l + s.left * r)) = row[l];
      }
    }
  }
  return m;
}

template <class T>
BasicTensor<T> fold(const Matrix<T>& m, std::size_t mode, const Shape& shape) {
  const Slabs s = slabs_of(shape, mode);
  if (static_cast<std::size_t>(m.rows()) != s.mid ||
      static_cast<std::size_t>(m.cols()) != s.left * s.right) {
    throw DimensionError("fold: matrix dimensions inconsistent with shape and mode");
  }
  BasicTensor<T> t(shape);
  auto dst = t.data();
  for (std::size_t r = 0; r < s.right; ++r) {
    for (std::size_t i = 0; i < s.mid; ++i) {
      T* row = dst.data() + s.left * (i + s.mid * r);
      for (std::size_t l = 0; l < s.left; ++l) {
        row[l] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l + s.left * r));
      }
    }
  }
  return t;
}

template <class T>
BasicTensor<T> mode_product(const BasicTensor<T>& t, const Matrix<T>& m, std::size_t mode) {
  const Slabs s = slabs_of(t.shape(), mode);
  if (static_cast<std::size_t>(m.cols()) != s.mid) {
    throw DimensionError("mode_product: matrix columns (" + std::to_string(m.cols()) +
                         ") differ from mode extent (" + std::to_string(s.mid) + ")");
  }
  const auto p = static_cast<std::size_t>(m.rows());
  Shape out_shape = t.shape();
  out_shape[mode] = p;
  BasicTensor<T> out(out_shape);

  const auto L = static_cast<Eigen::Index>(s.left);
  const auto I = static_cast<Eigen::Index>(s.mid);
  const auto P = static_cast<Eigen::Index>(p);
  if (s.left == 1) {
    MapC<T> a(t.data().data(), I, static_cast<Eigen::Index>(s.right));
    Map<T> b(out.data().data(), P, static_cast<Eigen::Index>(s.right));
    b.noalias() = m * a;
    return out;
  }
  const Matrix<T> mt = m.transpose();
  for (std::size_t r = 0; r < s.right; ++r) {
    MapC<T> a(t.data().data() + r * s.left * s.mid, L, I);
    Map<T> b(out.data().data() + r * s.left * p, L, P);
    b.noalias() = a * mt;
  }
  return out;
}

template <class T>
Matrix<T> mode_gram(const BasicTensor<T>& t, std::size_t mode) {
  const Slabs s = slabs_of(t.shape(), mode);
  const auto L = static_cast<Eigen::Index>(s.left);
  const auto I = static_cast<Eigen::Index>(s.mid);
  if (s.left == 1) {
    MapC<T> a(t.data().data(), I, static_cast<Eigen::Index>(s.right));
    return a * a.adjoint();
  }
  Matrix<T> g = Matrix<T>::Zero(I, I);
  for (std::size_t r = 0; r < s.right; ++r) {
    MapC<T> a(t.data().data() + r * s.left * s.mid, L, I);
    g.noalias() += a.transpose() * a.conjugate();
  }
  return g;
}

template <class T>
double frobenius(const BasicTensor<T>& t) noexcept {
  double sum = 0.0;
  for (const T& v : t.data()) sum += std::norm(v);
  return std::sqrt(sum);
}

template <class T>
SvdResult<T> svd(const Matrix<T>& m) {
  if (!all_finite(m)) throw NumericError("svd: non-finite input");
  Eigen::JacobiSVD<Matrix<T>> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

template <class T>
std::vector<Matrix<T>> hosvd_factors(const BasicTensor<T>& t, std::span<const std::size_t> modes) {
  std::vector<Matrix<T>> factors;
  factors.reserve(modes.size());
  for (std::size_t mode : modes) {
    Matrix<T> g = mode_gram(t, mode);
    if (!all_finite(g)) throw NumericError("hosvd_factors: non-finite input");
    g = (0.5 * (g + g.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Matrix<T>> eig(g);
    if (eig.info() != Eigen::Success) throw NumericError("hosvd_factors: eigensolver failed");
    // Eigenvalues come out ascending; singular values are wanted descending.
    Matrix<T> u = eig.eigenvectors().rowwise().reverse();
    normalize_phases(u);
    factors.push_back(std::move(u));
  }
  return factors;
}

template <class T>
std::size_t hard_threshold_inplace(BasicTensor<T>& t, double tau) {
  std::size_t retained = 0;
  for (T& c : t.data()) {
    if (std::abs(c) <= tau) {
      c = T{};
    } else {
      ++retained;
    }
  }
  return retained;
}

template <class T>
ThresholdResult<T> hard_threshold(const BasicTensor<T>& t, double tau) {
  ThresholdResult<T> r{t, 0};
  r.retained = hard_threshold_inplace(r.tensor, tau);
  return r;
}

ComplexTensor to_complex(const Tensor& t) {
  ComplexTensor out(t.shape());
  std::copy(t.data().begin(), t.data().end(), out.data().begin());
  return out;
}

Tensor real_part(const ComplexTensor& t) {
  Tensor out(t.shape());
  std::transform(t.data().begin(), t.data().end(), out.data().begin(),
                 [](const Complex& c) { return c.real(); });
  return out;
}

ComplexTensor conj(const ComplexTensor& t) {
  ComplexTensor out(t.shape());
  std::transform(t.data().begin(), t.data().end(), out.data().begin(),
                 [](const Complex& c) { return std::conj(c); });
  return out;
}

#define NLTD_INSTANTIATE(T)                                                                   \
  template Matrix<T> unfold(const BasicTensor<T>&, std::size_t);                              \
  template BasicTensor<T> fold(const Matrix<T>&, std::size_t, const Shape&);                  \
  template BasicTensor<T> mode_product(const BasicTensor<T>&, const Matrix<T>&, std::size_t); \
  template Matrix<T> mode_gram(const BasicTensor<T>&, std::size_t);                           \
  template double frobenius(const BasicTensor<T>&) noexcept;                                  \
  template SvdResult<T> svd(const Matrix<T>&);                                                \
  template std::vector<Matrix<T>> hosvd_factors(const BasicTensor<T>&,                        \
                                                std::span<const std::size_t>);                \
  template ThresholdResult<T> hard_threshold(const BasicTensor<T>&, double);                  \
  template std::size_t hard_threshold_inplace(BasicTensor<T>&, double);

NLTD_INSTANTIATE(double)
NLTD_INSTANTIATE(Complex)

#undef NLTD_INSTANTIATE

}  // namespace nltd
