#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "k3real/arith.hpp"

namespace k3real {

// Dense integer matrix, row-major. Vectors of a basis are stored as columns.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long long x : row) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Integer>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<IntVector> columns() const {
    std::vector<IntVector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    IntVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// u * m * v == d, d diagonal with non-negative entries d_0 | d_1 | ...,
// u and v unimodular.
struct SmithForm {
  IntMatrix u, d, v;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(d.rows(), d.cols()) && d(r, r) != 0) ++r;
    return r;
  }
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(d(i, i));
    return out;
  }
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& d = s.d;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (!pivot || abs(d(i, j)) < best)) {
            pivot = {i, j};
            best = abs(d(i, j));
          }
      if (!pivot) return s;
      d.swap_rows(t, pivot->first);
      s.u.swap_rows(t, pivot->first);
      d.swap_cols(t, pivot->second);
      s.v.swap_cols(t, pivot->second);

      bool cleared = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        s.u.add_row(i, t, -q);
        if (d(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        s.v.add_col(j, t, -q);
        if (d(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, 1);
            s.u.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
    }
  }
  return s;
}

// Row Hermite normal form: row echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Zero rows are dropped.
inline IntMatrix row_hermite_form(IntMatrix a) {
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    for (std::size_t i = pivot_row + 1; i < a.rows(); ++i) {
      while (a(i, c) != 0) {
        if (a(pivot_row, c) == 0) {
          a.swap_rows(pivot_row, i);
          continue;
        }
        Integer q = a(i, c) / a(pivot_row, c);
        a.add_row(i, pivot_row, -q);
        if (a(i, c) != 0) a.swap_rows(pivot_row, i);
      }
    }
    if (a(pivot_row, c) == 0) continue;
    if (a(pivot_row, c) < 0) a.negate_row(pivot_row);
    const Integer p = a(pivot_row, c);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Integer q = a(i, c) / p;
      if (a(i, c) % p < 0) q -= 1;
      a.add_row(i, pivot_row, -q);
    }
    ++pivot_row;
  }
  IntMatrix out(pivot_row, a.cols());
  for (std::size_t i = 0; i < pivot_row; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

// Canonical basis (as columns) of the lattice spanned by the columns of b.
inline IntMatrix canonical_column_basis(const IntMatrix& b) {
  if (b.cols() == 0) return b;
  return row_hermite_form(b.transpose()).transpose();
}

// Saturated integer kernel {x : m x = 0}, canonical basis as columns.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntMatrix::identity(n);
  SmithForm s = smith_normal_form(m);
  const std::size_t r = s.rank();
  IntMatrix k(n, n - r);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - r) = s.v(i, j);
  return canonical_column_basis(k);
}

inline std::size_t matrix_rank(const IntMatrix& m) {
  return smith_normal_form(m).rank();
}

// Fraction-free Bareiss elimination.
inline Integer determinant(IntMatrix a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && a(i, k) == 0) ++i;
      if (i == n) return 0;
      a.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Exact inverse of a unimodular matrix; throws if the input is not unimodular.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DomainError("matrix is singular");
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (boost::multiprecision::denominator(a[i][n + j]) != 1)
        throw DomainError("matrix is not unimodular");
      out(i, j) = boost::multiprecision::numerator(a[i][n + j]);
    }
  return out;
}

// Solution of a x = b over GF(2); `nullity` is the dimension of the solution
// space of the homogeneous system.
struct Mod2Solution {
  std::vector<std::uint8_t> x;
  std::size_t nullity = 0;
};

inline std::optional<Mod2Solution> solve_mod2(const IntMatrix& a, const IntVector& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::vector<std::uint8_t>> m(rows, std::vector<std::uint8_t>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = static_cast<std::uint8_t>(mod(a(i, j), Integer(2)) != 0);
    m[i][cols] = static_cast<std::uint8_t>(mod(b[i], Integer(2)) != 0);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && !m[p][c]) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c])
        for (std::size_t j = c; j <= cols; ++j) m[i][j] ^= m[r][j];
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols]) return std::nullopt;
  Mod2Solution sol;
  sol.x.assign(cols, 0);
  for (std::size_t i = 0; i < r; ++i) sol.x[pivot_cols[i]] = m[i][cols];
  sol.nullity = cols - r;
  return sol;
}

}  // namespace k3real
