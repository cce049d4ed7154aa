#pragma once

#include <daeforms/poly.hpp>

#include <stdexcept>
#include <vector>

namespace daeforms {

/// s E - A.
inline PolyMat pencil(const Mat& e, const Mat& a) {
  if (e.rows() != a.rows() || e.cols() != a.cols()) {
    throw DimensionError("pencil: E is " + e.shape() + " but A is " + a.shape());
  }
  PolyMat p(e.rows(), e.cols());
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j) p(i, j) = Poly::linear(e(i, j), -a(i, j));
  return p;
}

/// Rank over Q(s). Fraction-free elimination: row_i <- piv*row_i - a_i*row_p,
/// then each row is divided by the gcd of its entries to curb degree growth.
inline std::size_t normal_rank(const PolyMat& p) {
  std::vector<std::vector<Poly>> m(p.rows(), std::vector<Poly>(p.cols()));
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) m[i][j] = p(i, j);

  std::size_t row = 0;
  for (std::size_t col = 0; col < p.cols() && row < p.rows(); ++col) {
    std::size_t piv = row;
    while (piv < p.rows() && m[piv][col].is_zero()) ++piv;
    if (piv == p.rows()) continue;
    std::swap(m[piv], m[row]);
    for (std::size_t i = row + 1; i < p.rows(); ++i) {
      if (m[i][col].is_zero()) continue;
      const Poly a = m[i][col];
      const Poly b = m[row][col];
      Poly content;
      for (std::size_t j = col; j < p.cols(); ++j) {
        m[i][j] = b * m[i][j] - a * m[row][j];
        content = gcd(content, m[i][j]);
      }
      if (!content.is_zero() && !content.is_constant())
        for (std::size_t j = col; j < p.cols(); ++j) m[i][j] = divmod(m[i][j], content).first;
    }
    ++row;
  }
  return row;
}

/// Determinant by elimination with row-swap sign tracking.
inline Rational scalar_determinant(Mat m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square " + m.shape());
  Rational det = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t piv = c;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Determinant of a square polynomial matrix by evaluation at deg+1 points
/// and interpolation; deg is bounded by the sum of the row degrees.
inline Poly determinant(const PolyMat& p) {
  if (p.rows() != p.cols()) throw DimensionError("determinant of non-square polynomial matrix");
  long bound = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const long d = p.row_degree(i);
    if (d < 0) return {};
    bound += d;
  }
  std::vector<Rational> xs, ys;
  for (long k = 0; k <= bound; ++k) {
    const Rational x(k);
    xs.push_back(x);
    ys.push_back(scalar_determinant(p.evaluate(x)));
  }
  return interpolate(xs, ys);
}

namespace detail {

/// Calls f(indices) for each increasing k-subset of {0..n-1}; f returns
/// false to stop early.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline PolyMat submatrix(const PolyMat& p, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  PolyMat s(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) s(i, j) = p(r[i], c[j]);
  return s;
}

}  // namespace detail

/// Monic gcd of all target x target minors. The zero polynomial means every
/// such minor vanishes; a constant 1 means no finite rank drop below target.
/// For target 0 the empty minor is 1.
inline Poly minor_gcd(const PolyMat& p, std::size_t target) {
  if (target == 0) return Poly(Rational(1));
  Poly g;
  detail::for_each_subset(p.rows(), target, [&](const std::vector<std::size_t>& rs) {
    return detail::for_each_subset(p.cols(), target, [&](const std::vector<std::size_t>& cs) {
      g = gcd(g, determinant(detail::submatrix(p, rs, cs)));
      return !(g.is_constant() && !g.is_zero());
    });
  });
  return g;
}

enum class RankOrientation { row, column, any };

/// True iff rank P(lambda) = target for every complex lambda.
inline bool full_rank_all_finite(const PolyMat& p, std::size_t target, RankOrientation orientation = RankOrientation::any) {
  if (target > std::min(p.rows(), p.cols())) throw std::invalid_argument("full_rank_all_finite: target exceeds min dimension");
  if (orientation == RankOrientation::row && target != p.rows())
    throw std::invalid_argument("full_rank_all_finite: row orientation needs target = rows");
  if (orientation == RankOrientation::column && target != p.cols())
    throw std::invalid_argument("full_rank_all_finite: column orientation needs target = cols");
  if (normal_rank(p) != target) return false;
  const Poly g = minor_gcd(p, target);
  return !g.is_zero() && g.is_constant();
}

/// Rank of the pencil at lambda = infinity, i.e. the rank of the s-coefficient.
inline std::size_t rank_at_infinity(const PolyMat& p) { return rank(p.coefficient(1)); }

/// Whether two pencils drop below their normal ranks at a common point of
/// C union {infinity}.
inline bool simultaneous_rank_drop(const PolyMat& p, const PolyMat& q) {
  const std::size_t rp = normal_rank(p);
  const std::size_t rq = normal_rank(q);
  if (rank_at_infinity(p) < rp && rank_at_infinity(q) < rq) return true;
  const Poly g = gcd(minor_gcd(p, rp), minor_gcd(q, rq));
  return !g.is_constant();
}

}  // namespace daeforms
