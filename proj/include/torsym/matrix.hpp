#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "torsym/error.hpp"
#include "torsym/numeric.hpp"

namespace torsym {

// Dense exact matrix, row-major. Dimensions here are tiny (n <= 5 or so);
// everything favours exactness and determinism over speed.
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      require(r.size() == cols_, errc::bad_input, "ragged matrix literal");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    std::vector<T> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  void set_col(std::size_t j, const std::vector<T>& v) {
    require(v.size() == rows_, errc::dimension_mismatch, "set_col");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  static Mat from_cols(std::size_t rows, const std::vector<std::vector<T>>& cols) {
    Mat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat drop_col(std::size_t j) const {
    Mat m(rows_, cols_ - 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::size_t jj = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        if (k == j) continue;
        m(i, jj++) = (*this)(i, k);
      }
    }
    return m;
  }

  Mat with_col(std::size_t j, const std::vector<T>& v) const {
    Mat m = *this;
    m.set_col(j, v);
    return m;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    require(a.cols_ == b.rows_, errc::dimension_mismatch, "matrix product");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    require(v.size() == cols_, errc::dimension_mismatch, "matrix apply");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  // total order: shape first, then entries row-major; used for canonical term keys
  friend bool operator<(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.a_ < b.a_;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

using IMat = Mat<Integer>;
using QMat = Mat<Rational>;

inline QMat to_qmat(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

// exact determinant by fraction-free Gaussian elimination
template <typename T>
Rational det_exact(const Mat<T>& m) {
  require(m.rows() == m.cols(), errc::dimension_mismatch, "det of non-square matrix");
  std::size_t n = m.rows();
  QMat w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = Rational(m(i, j));
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      det = -det;
    }
    det *= w(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (w(i, c) == 0) continue;
      Rational f = w(i, c) / w(c, c);
      for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return det;
}

inline Integer det_int(const IMat& m) {
  Rational d = det_exact(m);
  return numerator(d);  // exact elimination of an integer matrix gives an integer
}

template <typename T>
std::size_t rank_exact(const Mat<T>& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  QMat w(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) w(i, j) = Rational(m(i, j));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && w(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(w(p, j), w(rank, j));
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (w(i, c) == 0) continue;
      Rational f = w(i, c) / w(rank, c);
      for (std::size_t j = c; j < cols; ++j) w(i, j) -= f * w(rank, j);
    }
    ++rank;
  }
  return rank;
}

// adjugate via cofactor expansion; adj(A)*A = det(A)*I
inline IMat adjugate(const IMat& m) {
  require(m.rows() == m.cols(), errc::dimension_mismatch, "adjugate of non-square matrix");
  std::size_t n = m.rows();
  if (n == 1) return IMat::identity(1);
  IMat adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IMat minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Integer cof = det_int(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;
    }
  return adj;
}

inline QMat inverse(const QMat& m) {
  require(m.rows() == m.cols(), errc::dimension_mismatch, "inverse of non-square matrix");
  std::size_t n = m.rows();
  QMat w = m, inv = QMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c) == 0) ++p;
    require(p < n, errc::singular, "matrix not invertible");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(p, j), w(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational piv = w(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      w(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w(i, c) == 0) continue;
      Rational f = w(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace torsym
