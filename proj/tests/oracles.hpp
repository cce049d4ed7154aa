#pragma once

// Brute-force reference computations that share no code with the library's
// elimination routines. Only suitable for small matrices.

#include <daeforms/matrix.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

using daeforms::Mat;
using daeforms::Rational;

/// Determinant by the permutation expansion.
inline Rational leibniz_det(const Mat& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order;
/// stops early when f returns true.
template <class F>
bool any_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Rank as the size of the largest nonvanishing minor.
inline std::size_t minor_rank(const Mat& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    const bool found = any_subset(m.rows(), k, [&](const std::vector<std::size_t>& r) {
      return any_subset(m.cols(), k, [&](const std::vector<std::size_t>& c) {
        return leibniz_det(m.select_rows(r).select_cols(c)) != 0;
      });
    });
    if (found) return k;
  }
  return 0;
}

/// Column x lies in the column span of m.
inline bool in_span(const Mat& m, const Mat& x) {
  return minor_rank(daeforms::hcat(m, x)) == minor_rank(m);
}

}  // namespace oracle
