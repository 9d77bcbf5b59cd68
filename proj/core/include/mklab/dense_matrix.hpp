#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mklab {

/// Small square matrix over an arbitrary ring, row-major. Used where exact
/// (rational) entries are needed; floating work goes through Eigen.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static DenseMatrix diagonal(const std::vector<T>& d) {
    DenseMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t dim() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
    DenseMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t l = 0; l < a.n_; ++l) {
        const T& ail = a(i, l);
        if (ail == T(0)) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += ail * b(l, j);
      }
    }
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace mklab
