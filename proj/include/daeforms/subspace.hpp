#pragma once

#include <daeforms/matrix.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace daeforms {

/// A linear subspace of Q^k stored by its reduced column echelon basis,
/// which is unique for a given span, so == compares spans.
class Subspace {
 public:
  Subspace() = default;

  /// Span of the columns of `spanning` (any number of columns, any rank).
  static Subspace span(const Mat& spanning) {
    Subspace s;
    s.ambient_ = spanning.rows();
    RrefResult r = rref(spanning.transpose());
    s.basis_ = r.reduced.rows_range(0, r.rank).transpose();
    return s;
  }

  static Subspace zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat(ambient, 0);
    return s;
  }

  static Subspace full(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat::identity(ambient);
    return s;
  }

  /// Coordinate subspace Q^first x {0}, i.e. the span of the first
  /// `count` unit vectors (shifted by `offset`).
  static Subspace coordinate(std::size_t ambient, std::size_t offset, std::size_t count) {
    return span(selector(ambient, offset, count).transpose());
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
};

inline std::ostream& operator<<(std::ostream& os, const Subspace& s) {
  return os << "span" << s.basis() << " in Q^" << s.ambient_dim();
}

inline void require_same_ambient(const Subspace& a, const Subspace& b, const char* what) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionError(std::string(what) + ": ambient dimensions " + std::to_string(a.ambient_dim()) +
                         " and " + std::to_string(b.ambient_dim()));
  }
}

/// {x : M x = 0}. Basis vectors come from the free columns of rref(M).
inline Subspace kernel_basis(const Mat& m) {
  RrefResult r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : r.pivot_cols) is_pivot[p] = true;

  Mat k(n, n - r.rank);
  std::size_t c = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    k(free, c) = 1;
    for (std::size_t i = 0; i < r.rank; ++i) k(r.pivot_cols[i], c) = -r.reduced(i, free);
    ++c;
  }
  return Subspace::span(k);
}

inline Subspace image_basis(const Mat& m) { return Subspace::span(m); }

/// M S, the image of a subspace under M.
inline Subspace map(const Mat& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw DimensionError("map: " + m.shape() + " on Q^" + std::to_string(s.ambient_dim()));
  return Subspace::span(m * s.basis());
}

/// Rows P with ker P = S, read off the canonical basis: each non-pivot
/// coordinate r gives e_r^T minus its expansion over the pivot rows.
inline Mat annihilator(const Subspace& s) {
  const Mat& b = s.basis();
  const std::size_t amb = s.ambient_dim();
  std::vector<std::size_t> pivot(b.cols());
  std::vector<bool> is_pivot(amb, false);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::size_t r = 0;
    while (sgn(b(r, j)) == 0) ++r;
    pivot[j] = r;
    is_pivot[r] = true;
  }
  Mat p(amb - b.cols(), amb);
  std::size_t row = 0;
  for (std::size_t r = 0; r < amb; ++r) {
    if (is_pivot[r]) continue;
    p(row, r) = 1;
    for (std::size_t j = 0; j < b.cols(); ++j) p(row, pivot[j]) = -b(r, j);
    ++row;
  }
  return p;
}

/// {x : M x in S} = ker(P M) with P an annihilator of S.
inline Subspace preimage(const Mat& m, const Subspace& s) {
  if (m.rows() != s.ambient_dim()) {
    throw DimensionError("preimage: " + m.shape() + " into Q^" + std::to_string(s.ambient_dim()));
  }
  if (s.is_full()) return Subspace::full(m.cols());
  return kernel_basis(annihilator(s) * m);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "sum");
  return Subspace::span(hcat(a.basis(), b.basis()));
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "intersect");
  if (b.is_full()) return a;
  return map(a.basis(), kernel_basis(annihilator(b) * a.basis()));
}

/// a is a subset of b.
inline bool contained_in(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "contained_in");
  return rank(hcat(b.basis(), a.basis())) == b.dim();
}

inline bool contains_columns(const Subspace& s, const Mat& cols) {
  return rank(hcat(s.basis(), cols)) == s.dim();
}

enum class CandidateOrder { forward, reversed };

/// Columns C with im inner (+) im C = outer. Candidates are tried greedily:
/// the columns of `preferred` that lie in `outer` first, then the canonical
/// basis of `outer`; `order` reverses both candidate lists.
inline Mat complement(const Subspace& inner, const Subspace& outer, const std::optional<Mat>& preferred = std::nullopt,
                      CandidateOrder order = CandidateOrder::forward) {
  require_same_ambient(inner, outer, "complement");
  if (!contained_in(inner, outer)) throw std::invalid_argument("complement: inner space is not contained in outer");

  std::vector<Mat> candidates;
  auto push_columns = [&](const Mat& m, bool only_in_outer) {
    std::vector<Mat> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Mat c = m.column(j);
      if (only_in_outer && !contains_columns(outer, c)) continue;
      cols.push_back(std::move(c));
    }
    if (order == CandidateOrder::reversed) std::reverse(cols.begin(), cols.end());
    for (auto& c : cols) candidates.push_back(std::move(c));
  };
  if (preferred) {
    if (preferred->rows() != outer.ambient_dim()) throw DimensionError("complement: preferred columns have wrong height");
    push_columns(*preferred, true);
  }
  push_columns(outer.basis(), false);

  const std::size_t need = outer.dim() - inner.dim();
  Mat current = inner.basis();
  std::size_t current_rank = inner.dim();
  Mat chosen(outer.ambient_dim(), 0);
  for (const Mat& c : candidates) {
    if (chosen.cols() == need) break;
    Mat trial = hcat(current, c);
    const std::size_t r = rank(trial);
    if (r == current_rank) continue;
    current = std::move(trial);
    current_rank = r;
    chosen = hcat(chosen, c);
  }
  return chosen;
}

}  // namespace daeforms
