#pragma once

#include "sftdim/errors.hpp"
#include "sftdim/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sftdim {

/// Dense row-major matrix over an exact ring (Integer or Rational).
///
/// Row vectors are 1xK matrices and column vectors Kx1 matrices, so vector
/// and matrix products share one code path.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw Error(ErrorCode::dimension_mismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  static Matrix row_vector(std::vector<T> entries) {
    Matrix m;
    m.rows_ = 1;
    m.cols_ = entries.size();
    m.data_ = std::move(entries);
    return m;
  }
  static Matrix column_vector(std::vector<T> entries) {
    Matrix m;
    m.rows_ = entries.size();
    m.cols_ = 1;
    m.data_ = std::move(entries);
    return m;
  }
  /// Standard basis matrix with a single 1 at (i, j).
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i,
                     std::size_t j) {
    Matrix m(rows, cols);
    m(i, j) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> entries() noexcept { return data_; }
  std::span<const T> entries() const noexcept { return data_; }
  std::span<const T> row(std::size_t i) const {
    return std::span<const T>(data_).subspan(i * cols_, cols_);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T& x) { return x == 0; });
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix column(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorCode::dimension_mismatch,
                  "matrix product " + a.shape() + " * " + b.shape());
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorCode::dimension_mismatch,
                  "shape " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> pow(const Matrix<T>& m, std::size_t e) {
  Matrix<T> result = Matrix<T>::identity(m.rows());
  Matrix<T> base = m;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

/// Matrix of the linear map X -> P X Q acting on row-major vec(X).
template <class T>
Matrix<T> sandwich_operator(const Matrix<T>& p, const Matrix<T>& q) {
  const std::size_t r = p.rows(), c = q.cols();
  const std::size_t ir = p.cols(), ic = q.rows();
  Matrix<T> op(r * c, ir * ic);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t a = 0; a < ir; ++a) {
        if (p(i, a) == 0) continue;
        for (std::size_t b = 0; b < ic; ++b)
          op(i * c + j, a * ic + b) = p(i, a) * q(b, j);
      }
  return op;
}

/// Row-major flattening into a column vector.
template <class T>
Matrix<T> vec(const Matrix<T>& m) {
  return Matrix<T>::column_vector(
      std::vector<T>(m.entries().begin(), m.entries().end()));
}

template <class T>
Matrix<T> unvec(const Matrix<T>& column, std::size_t rows, std::size_t cols) {
  if (column.size() != rows * cols)
    throw Error(ErrorCode::dimension_mismatch, "unvec size");
  Matrix<T> m(rows, cols);
  std::copy(column.entries().begin(), column.entries().end(),
            m.entries().begin());
  return m;
}

/// Columns side by side; all inputs must share a row count.
template <class T>
Matrix<T> hstack(std::span<const Matrix<T>> blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks.front().rows(), cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows)
      throw Error(ErrorCode::dimension_mismatch, "hstack row count");
    cols += b.cols();
  }
  Matrix<T> out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, offset + j) = b(i, j);
    offset += b.cols();
  }
  return out;
}

template <class T>
Matrix<T> hstack(std::initializer_list<Matrix<T>> blocks) {
  return hstack(std::span<const Matrix<T>>(blocks.begin(), blocks.size()));
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

inline bool is_nonnegative(const IntMatrix& m) {
  return std::all_of(m.entries().begin(), m.entries().end(),
                     [](const Integer& x) { return x >= 0; });
}

template <class T>
std::string to_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << to_string(m(i, j));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  return os << to_string(m);
}

}  // namespace sftdim
