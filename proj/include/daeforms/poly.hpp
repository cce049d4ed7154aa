#pragma once

#include <daeforms/matrix.hpp>

#include <ostream>
#include <utility>
#include <vector>

namespace daeforms {

/// Univariate polynomial over Q in s, coefficients stored low degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.push_back(c);
  }
  explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// a*s + b
  static Poly linear(const Rational& a, const Rational& b) { return Poly(std::vector<Rational>{b, a}); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Degree, with -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Quotient and remainder of a / b, b nonzero.
  friend std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, std::move(a)};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Rational lead = b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
      const Rational f = a.leading() / lead;
      q[shift] = f;
      for (std::size_t k = 0; k < b.coeffs_.size(); ++k) a.coeffs_[shift + k] -= f * b.coeffs_[k];
      a.trim();
    }
    return {Poly(std::move(q)), std::move(a)};
  }

  Poly monic() const {
    if (is_zero()) return {};
    Poly p = *this;
    const Rational lead = leading();
    for (auto& c : p.coeffs_) c /= lead;
    return p;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
  if (p.is_zero()) return os << '0';
  bool first = true;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const Rational& c = p.coeffs()[k];
    if (c == 0) continue;
    os << (first ? "" : " + ") << '(' << c << ')';
    if (k >= 1) os << "*s";
    if (k >= 2) os << '^' << k;
    first = false;
  }
  return os;
}

/// Newton interpolation through (x_i, y_i) with distinct x_i.
inline Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  Poly p;
  for (std::size_t i = n; i-- > 0;) p = p * Poly::linear(1, -xs[i]) + Poly(dd[i]);
  return p;
}

/// Matrix of polynomials in s.
class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Mat evaluate(const Rational& x) const {
    Mat m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j)(x);
    return m;
  }

  /// Coefficient matrix of s^k.
  Mat coefficient(std::size_t k) const {
    Mat m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).coeff(k);
    return m;
  }

  long max_degree() const {
    long d = -1;
    for (const auto& p : data_) d = std::max(d, p.degree());
    return d;
  }

  long row_degree(std::size_t i) const {
    long d = -1;
    for (std::size_t j = 0; j < cols_; ++j) d = std::max(d, (*this)(i, j).degree());
    return d;
  }

  friend bool operator==(const PolyMat&, const PolyMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

}  // namespace daeforms
