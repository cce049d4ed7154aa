#pragma once

#include <daeforms/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace daeforms {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over the rationals. Zero rows or zero columns are
/// legal; a 3x0 matrix still remembers that it has three rows.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Integer literal convenience for tests and fixtures.
  Mat(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("ragged row data");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Rational> entries() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r == 0; });
  }

  bool is_square() const { return rows_ == cols_; }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Mat b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  Mat rows_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
  Mat cols_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  Mat column(std::size_t j) const { return cols_range(j, 1); }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Mat select_rows(std::span<const std::size_t> idx) const {
    Mat m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  Mat select_cols(std::span<const std::size_t> idx) const {
    Mat m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  Mat& operator-=(const Mat& o) {
    check_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  Mat& operator*=(const Rational& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const Rational& s) { return a *= s; }
  friend Mat operator*(const Rational& s, Mat a) { return a *= s; }
  friend Mat operator-(Mat a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("product of " + a.shape() + " and " + b.shape());
    }
    Mat c(a.rows_, b.cols_);
    Rational t;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(k, j) == 0) continue;
          t = aik * b(k, j);
          c(i, j) += t;
        }
      }
    }
    return c;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const Mat& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("operator") + op + " on " + shape() + " and " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Mat& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << "] (" << m.shape() << ')';
}

/// Horizontal concatenation; all operands must share the row count.
inline Mat hcat(std::initializer_list<const Mat*> parts) {
  std::size_t rows = (*parts.begin())->rows();
  std::size_t cols = 0;
  for (const Mat* p : parts) {
    if (p->rows() != rows) throw DimensionError("hcat row mismatch");
    cols += p->cols();
  }
  Mat out(rows, cols);
  std::size_t c = 0;
  for (const Mat* p : parts) {
    out.set_block(0, c, *p);
    c += p->cols();
  }
  return out;
}

inline Mat hcat(const Mat& a, const Mat& b) { return hcat({&a, &b}); }
inline Mat hcat(const Mat& a, const Mat& b, const Mat& c) { return hcat({&a, &b, &c}); }
inline Mat hcat(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  return hcat({&a, &b, &c, &d});
}

inline Mat vcat(std::initializer_list<const Mat*> parts) {
  std::size_t cols = (*parts.begin())->cols();
  std::size_t rows = 0;
  for (const Mat* p : parts) {
    if (p->cols() != cols) throw DimensionError("vcat column mismatch");
    rows += p->rows();
  }
  Mat out(rows, cols);
  std::size_t r = 0;
  for (const Mat* p : parts) {
    out.set_block(r, 0, *p);
    r += p->rows();
  }
  return out;
}

inline Mat vcat(const Mat& a, const Mat& b) { return vcat({&a, &b}); }
inline Mat vcat(const Mat& a, const Mat& b, const Mat& c) { return vcat({&a, &b, &c}); }

/// Block diagonal assembly; zero-sized blocks still contribute their
/// nonzero dimension.
inline Mat block_diag(const std::vector<Mat>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat out(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

/// Kronecker product.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

/// Column-major vectorisation, vec(AXB) = (B^T kron A) vec(X).
inline Mat vec(const Mat& m) {
  Mat v(m.rows() * m.cols(), 1);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v(j * m.rows() + i, 0) = m(i, j);
  return v;
}

inline Mat unvec(const Mat& v, std::size_t offset, std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v(offset + j * rows + i, 0);
  return m;
}

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Reduced row echelon form by Gauss-Jordan elimination. The pivot is the
/// first nonzero entry in each column, which keeps the result
/// deterministic; over an exact field the RREF is unique anyway.
inline RrefResult rref(Mat m) {
  RrefResult out;
  std::size_t row = 0;
  Rational factor, scratch;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));

    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (sgn(m(row, j)) != 0) m(row, j) *= inv;

    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (sgn(m(row, j)) == 0) continue;
        // In-place update; avoids a temporary per entry.
        mpq_mul(scratch.get_mpq_t(), factor.get_mpq_t(), m(row, j).get_mpq_t());
        mpq_sub(m(i, j).get_mpq_t(), m(i, j).get_mpq_t(), scratch.get_mpq_t());
      }
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = out.pivot_cols.size();
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

inline bool has_full_column_rank(const Mat& m) { return rank(m) == m.cols(); }
inline bool has_full_row_rank(const Mat& m) { return rank(m) == m.rows(); }

inline bool is_invertible(const Mat& m) { return m.is_square() && rank(m) == m.rows(); }

/// Particular solution of A X = rhs with every free variable set to zero,
/// or std::nullopt when the system is inconsistent.
inline std::optional<Mat> solve_right(const Mat& a, const Mat& rhs) {
  if (a.rows() != rhs.rows()) {
    throw DimensionError("solve_right: " + a.shape() + " vs rhs " + rhs.shape());
  }
  const std::size_t n = a.cols();
  RrefResult r = rref(hcat(a, rhs));
  Mat x(n, rhs.cols());
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t pc = r.pivot_cols[i];
    if (pc >= n) return std::nullopt;
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(pc, j) = r.reduced(i, n + j);
  }
  return x;
}

inline Mat inverse(const Mat& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square " + m.shape());
  auto x = solve_right(m, Mat::identity(m.rows()));
  if (!x || rank(m) != m.rows()) throw std::domain_error("matrix is singular");
  return *x;
}

/// Some left inverse L (L M = I) of a full-column-rank matrix.
inline std::optional<Mat> left_inverse(const Mat& m) {
  if (!has_full_column_rank(m)) return std::nullopt;
  auto lt = solve_right(m.transpose(), Mat::identity(m.cols()));
  if (!lt) return std::nullopt;
  return lt->transpose();
}

/// Some right inverse R (M R = I) of a full-row-rank matrix.
inline std::optional<Mat> right_inverse(const Mat& m) {
  if (!has_full_row_rank(m)) return std::nullopt;
  return solve_right(m, Mat::identity(m.rows()));
}

/// Rows of the identity selected by [first, first + count), i.e. the
/// projection [0, I, 0] onto one block of coordinates.
inline Mat selector(std::size_t total, std::size_t first, std::size_t count) {
  Mat p(count, total);
  for (std::size_t i = 0; i < count; ++i) p(i, first + i) = 1;
  return p;
}

}  // namespace daeforms
