#ifndef KCHEEGER_DENSE_MATRIX_HPP
#define KCHEEGER_DENSE_MATRIX_HPP

#include <cassert>
#include <cmath>
#include <span>
#include <vector>

namespace kcheeger {

/// Row-major square matrix of doubles.
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  std::vector<double> multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = 0.0;
      const double* r = data_.data() + i * n_;
      for (std::size_t j = 0; j < n_; ++j) acc += r[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  /// x^T M y
  double bilinear(std::span<const double> x, std::span<const double> y) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0.0) continue;
      const double* r = data_.data() + i * n_;
      double row_acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) row_acc += r[j] * y[j];
      acc += x[i] * row_acc;
    }
    return acc;
  }

  double max_asymmetry() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    return worst;
  }

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

} // namespace kcheeger

#endif // KCHEEGER_DENSE_MATRIX_HPP
