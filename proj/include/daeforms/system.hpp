#pragma once

#include <daeforms/matrix.hpp>

#include <numeric>
#include <vector>

namespace daeforms {

/// Descriptor control system E x' = A x + B u with E, A in Q^{l x n} and
/// B in Q^{l x m}.
struct SystemTriple {
  Mat E;
  Mat A;
  Mat B;

  SystemTriple() = default;
  SystemTriple(Mat e, Mat a, Mat b) : E(std::move(e)), A(std::move(a)), B(std::move(b)) { validate(); }

  std::size_t l() const { return E.rows(); }
  std::size_t n() const { return E.cols(); }
  std::size_t m() const { return B.cols(); }

  void validate() const {
    if (E.rows() != A.rows() || E.cols() != A.cols()) {
      throw DimensionError("system: E is " + E.shape() + " but A is " + A.shape());
    }
    if (B.rows() != E.rows()) throw DimensionError("system: B has " + std::to_string(B.rows()) + " rows, expected " + std::to_string(E.rows()));
  }

  friend bool operator==(const SystemTriple&, const SystemTriple&) = default;
};

/// Partition of a dimension into consecutive blocks.
inline std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), off.begin() + 1);
  return off;
}

/// Block (i, j) of m under the given row and column partitions.
inline Mat sub_block(const Mat& m, const std::vector<std::size_t>& row_sizes, const std::vector<std::size_t>& col_sizes,
                     std::size_t i, std::size_t j) {
  const auto ro = block_offsets(row_sizes);
  const auto co = block_offsets(col_sizes);
  return m.block(ro[i], co[j], row_sizes[i], col_sizes[j]);
}

}  // namespace daeforms
