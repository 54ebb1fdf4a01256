#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"

namespace tropjac {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int &p, const Int &q = 1) {
  require(q != 0, ErrorCode::Internal, "zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline Rat parse_rational(const std::string &s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0)
    fail(ErrorCode::ParseError, "not a rational: '" + s + "'");
  if (r.get_den() == 0)
    fail(ErrorCode::ParseError, "zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Int &v) { return v.get_str(); }
inline std::string to_string(const Rat &v) { return v.get_str(); }

inline Int floor_int(const Rat &x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Fractional part in [0,1).
inline Rat frac(const Rat &x) { return x - Rat(floor_int(x)); }

// x mod m into [0,m), m > 0.
inline Rat mod_positive(const Rat &x, const Rat &m) {
  Rat q = x / m;
  return x - Rat(floor_int(q)) * m;
}

template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto &row : init) {
      require(row.size() == cols_, ErrorCode::ShapeMismatch, "ragged initializer");
      for (auto &x : row)
        data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }
  static Matrix column(const std::vector<T> &v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
      m(i, 0) = v[i];
    return m;
  }
  static Matrix row(const std::vector<T> &v) {
    Matrix m(1, v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      m(0, i) = v[i];
    return m;
  }
  static Matrix diagonal(const std::vector<T> &v) {
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      m(i, i) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row_vec(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  Matrix columns(std::size_t from, std::size_t to) const {
    Matrix m(rows_, to - from);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = from; j < to; ++j)
        m(i, j - from) = (*this)(i, j);
    return m;
  }
  Matrix rows_range(std::size_t from, std::size_t to) const {
    return transpose().columns(from, to).transpose();
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const T &k) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(a, j) += k * (*this)(b, j);
  }
  void add_col(std::size_t a, std::size_t b, const T &k) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, a) += k * (*this)(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(a, j) = -(*this)(a, j);
  }
  void negate_col(std::size_t a) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, a) = -(*this)(i, a);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T &x) { return x == 0; });
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    require(a.cols_ == b.rows_, ErrorCode::ShapeMismatch,
            "product of " + a.shape() + " and " + b.shape());
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::ShapeMismatch, "sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix &b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::ShapeMismatch, "difference");
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a) {
    for (auto &x : a.data_)
      x = -x;
    return a;
  }
  friend Matrix operator*(const T &k, Matrix a) {
    for (auto &x : a.data_)
      x *= k;
    return a;
  }

  std::vector<T> apply(const std::vector<T> &v) const {
    require(v.size() == cols_, ErrorCode::ShapeMismatch, "matrix-vector product");
    std::vector<T> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r[i] += (*this)(i, j) * v[j];
    return r;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  const std::vector<T> &data() const { return data_; }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

template <class T>
std::ostream &operator<<(std::ostream &os, const Matrix<T> &m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? "," : "") << m(i, j).get_str();
    os << ']';
  }
  return os << ']';
}

template <class T> Matrix<T> hstack(const Matrix<T> &a, const Matrix<T> &b) {
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "hstack");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
      m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <class T> Matrix<T> vstack(const Matrix<T> &a, const Matrix<T> &b) {
  return hstack(a.transpose(), b.transpose()).transpose();
}

template <class T> Matrix<T> block_diag(const Matrix<T> &a, const Matrix<T> &b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline RatMatrix to_rat(const IntMatrix &a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = Rat(a(i, j));
  return r;
}

inline bool is_integral(const RatMatrix &a) {
  for (auto &x : a.data())
    if (x.get_den() != 1)
      return false;
  return true;
}

inline IntMatrix to_int(const RatMatrix &a) {
  require(is_integral(a), ErrorCode::Internal, "matrix is not integral");
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = a(i, j).get_num();
  return r;
}

inline Int common_denominator(const RatMatrix &a) {
  Int d = 1;
  for (auto &x : a.data())
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix &a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0)
      ++p;
    if (p == a.rows())
      continue;
    a.swap_rows(p, r);
    Rat inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0)
        a.add_row(i, r, -a(i, c));
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const RatMatrix &a) {
  RatMatrix t = a;
  return rref(t).size();
}
inline std::size_t rank(const IntMatrix &a) { return rank(to_rat(a)); }

inline Rat determinant(RatMatrix a) {
  require(a.square(), ErrorCode::ShapeMismatch, "determinant of " + a.shape());
  Rat det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i)
      if (a(i, c) != 0)
        a.add_row(i, c, -a(i, c) / a(c, c));
  }
  return det;
}
inline Int determinant(const IntMatrix &a) {
  return determinant(to_rat(a)).get_num();
}

inline RatMatrix inverse(const RatMatrix &a) {
  require(a.square(), ErrorCode::ShapeMismatch, "inverse of " + a.shape());
  const std::size_t n = a.rows();
  RatMatrix aug = hstack(a, RatMatrix::identity(n));
  auto piv = rref(aug);
  require(piv.size() == n && (n == 0 || piv.back() == n - 1), ErrorCode::Internal,
          "singular matrix");
  return aug.columns(n, 2 * n);
}

// Unique X with A X = B when A has full column rank; nullopt if inconsistent.
inline std::optional<RatMatrix> solve_left(const RatMatrix &a, const RatMatrix &b) {
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "solve");
  RatMatrix aug = hstack(a, b);
  auto piv = rref(aug);
  const std::size_t n = a.cols();
  for (std::size_t k = 0; k < piv.size(); ++k)
    if (piv[k] >= n)
      return std::nullopt;
  require(piv.size() == n, ErrorCode::Internal, "solve: coefficient matrix lacks full column rank");
  RatMatrix x(n, b.cols());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x(k, j) = aug(k, n + j);
  return x;
}

inline bool is_symmetric(const RatMatrix &a) { return a.square() && a == a.transpose(); }

// Sylvester: all leading principal minors positive.
inline bool is_positive_definite(const RatMatrix &a) {
  if (!is_symmetric(a))
    return false;
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    RatMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        m(i, j) = a(i, j);
    if (determinant(m) <= 0)
      return false;
  }
  return true;
}

} // namespace tropjac
