#pragma once

#include <daeforms/check_report.hpp>
#include <daeforms/matrix.hpp>
#include <daeforms/system.hpp>

#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace daeforms {

using MultiIndex = std::vector<std::size_t>;

inline std::size_t total(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), std::size_t{0}); }

/// k x k nilpotent shift with ones on the subdiagonal.
inline Mat nilpotent_block(std::size_t k) {
  Mat n(k, k);
  for (std::size_t i = 1; i < k; ++i) n(i, i - 1) = 1;
  return n;
}

/// (k-1) x k matrix [0, I_{k-1}].
inline Mat k_block(std::size_t k) {
  Mat m(k - 1, k);
  for (std::size_t i = 0; i + 1 < k; ++i) m(i, i + 1) = 1;
  return m;
}

/// (k-1) x k matrix [I_{k-1}, 0].
inline Mat l_block(std::size_t k) {
  Mat m(k - 1, k);
  for (std::size_t i = 0; i + 1 < k; ++i) m(i, i) = 1;
  return m;
}

/// Last unit vector of Q^k as a column.
inline Mat last_unit(std::size_t k) {
  Mat e(k, 1);
  e(k - 1, 0) = 1;
  return e;
}

template <class F>
Mat diag_of(const MultiIndex& idx, F&& make) {
  std::vector<Mat> blocks;
  for (std::size_t k : idx) blocks.push_back(make(k));
  return block_diag(blocks);
}

inline Mat nilpotent_diag(const MultiIndex& a) { return diag_of(a, nilpotent_block); }
inline Mat k_diag(const MultiIndex& a) { return diag_of(a, k_block); }
inline Mat l_diag(const MultiIndex& a) { return diag_of(a, l_block); }
inline Mat unit_diag(const MultiIndex& a) { return diag_of(a, last_unit); }

inline void require_positive(const MultiIndex& a, const char* name) {
  for (std::size_t k : a)
    if (k == 0) throw std::invalid_argument(std::string("multi-index ") + name + " has a zero entry");
}

/// Data of the proportional-feedback canonical form. `zero_inputs` counts
/// the input columns that act on nothing; they sit between the beta and the
/// kappa inputs.
struct PffData {
  MultiIndex alpha, beta, gamma, delta, kappa;
  Mat A_cbar;
  std::size_t zero_inputs = 0;

  std::size_t nc() const { return A_cbar.rows(); }
  std::size_t l() const {
    return total(alpha) - alpha.size() + total(beta) + nc() + total(gamma) + total(delta) + total(kappa);
  }
  std::size_t n() const {
    return total(alpha) + total(beta) + nc() + total(gamma) + total(delta) - delta.size() + total(kappa) - kappa.size();
  }
  std::size_t m() const { return beta.size() + zero_inputs + kappa.size(); }
};

/// The template triple the data describes.
inline SystemTriple make_canonical_blocks(const PffData& d) {
  for (const auto* idx : {&d.alpha, &d.beta, &d.gamma, &d.delta, &d.kappa}) require_positive(*idx, "of the form");
  if (!d.A_cbar.is_square()) throw DimensionError("A_cbar must be square, got " + d.A_cbar.shape());
  const std::size_t nc = d.nc();
  Mat e = block_diag({k_diag(d.alpha), Mat::identity(total(d.beta)), Mat::identity(nc), nilpotent_diag(d.gamma),
                      k_diag(d.delta).transpose(), k_diag(d.kappa).transpose()});
  Mat a = block_diag({l_diag(d.alpha), nilpotent_diag(d.beta).transpose(), d.A_cbar, Mat::identity(total(d.gamma)),
                      l_diag(d.delta).transpose(), l_diag(d.kappa).transpose()});
  const std::size_t l = e.rows();
  Mat b(l, d.m());
  const std::size_t beta_row = total(d.alpha) - d.alpha.size();
  b.set_block(beta_row, 0, unit_diag(d.beta));
  const std::size_t kappa_row = l - total(d.kappa);
  b.set_block(kappa_row, d.beta.size() + d.zero_inputs, unit_diag(d.kappa));
  return SystemTriple(std::move(e), std::move(a), std::move(b));
}

namespace detail {

/// Compares the rows of each named row block of E, A and B.
inline CheckReport compare_row_blocks(const SystemTriple& sys, const SystemTriple& t,
                                      const std::vector<std::pair<std::string, std::size_t>>& blocks) {
  CheckReport rep;
  const bool shape_ok = t.l() == sys.l() && t.n() == sys.n() && t.m() == sys.m();
  rep.add("dimensions", shape_ok,
          "form data describe " + std::to_string(t.l()) + "x" + std::to_string(t.n()) + "x" + std::to_string(t.m()) +
              ", system is " + std::to_string(sys.l()) + "x" + std::to_string(sys.n()) + "x" + std::to_string(sys.m()));
  if (!shape_ok) return rep;
  std::size_t r = 0;
  for (const auto& [name, rows] : blocks) {
    const bool same = sys.E.rows_range(r, rows) == t.E.rows_range(r, rows) &&
                      sys.A.rows_range(r, rows) == t.A.rows_range(r, rows) &&
                      sys.B.rows_range(r, rows) == t.B.rows_range(r, rows);
    rep.add(name + " block rows", same, same ? "" : "rows " + std::to_string(r) + ".." + std::to_string(r + rows) +
                                                      " differ from the template");
    r += rows;
  }
  return rep;
}

}  // namespace detail

/// Row-block-wise comparison against the template, naming the first block
/// that differs.
inline CheckReport pff_report(const SystemTriple& sys, const PffData& d) {
  return detail::compare_row_blocks(sys, make_canonical_blocks(d),
                                    {{"alpha", total(d.alpha) - d.alpha.size()},
                                     {"beta", total(d.beta)},
                                     {"cbar", d.nc()},
                                     {"gamma", total(d.gamma)},
                                     {"delta", total(d.delta)},
                                     {"kappa", total(d.kappa)}});
}

/// Exact comparison against the template. Throws DimensionError when the
/// data describe a different (l, n, m).
inline bool verify_pff(const SystemTriple& sys, const PffData& d) {
  const SystemTriple t = make_canonical_blocks(d);
  if (t.l() != sys.l() || t.n() != sys.n() || t.m() != sys.m()) {
    throw DimensionError("form data describe " + std::to_string(t.l()) + "x" + std::to_string(t.n()) + "x" +
                         std::to_string(t.m()) + " but the system is " + std::to_string(sys.l()) + "x" +
                         std::to_string(sys.n()) + "x" + std::to_string(sys.m()));
  }
  return t == sys;
}

/// Data of the proportional-derivative canonical form; the `zero_inputs`
/// columns of B come first, followed by the r columns of the identity.
struct PdffData {
  MultiIndex alpha;
  Mat A_cbar;
  MultiIndex beta, gamma;
  std::size_t r = 0;
  std::size_t zero_inputs = 0;

  std::size_t nc() const { return A_cbar.rows(); }
  std::size_t l() const { return total(alpha) - alpha.size() + nc() + total(beta) + total(gamma) + r; }
  std::size_t n() const { return total(alpha) + nc() + total(beta) + total(gamma) - gamma.size(); }
  std::size_t m() const { return zero_inputs + r; }
};

inline SystemTriple make_pdff_blocks(const PdffData& d) {
  for (const auto* idx : {&d.alpha, &d.beta, &d.gamma}) require_positive(*idx, "of the form");
  if (!d.A_cbar.is_square()) throw DimensionError("A_cbar must be square, got " + d.A_cbar.shape());
  const Mat e_top = block_diag({k_diag(d.alpha), Mat::identity(d.nc()), nilpotent_diag(d.beta), k_diag(d.gamma).transpose()});
  const Mat a_top = block_diag({l_diag(d.alpha), d.A_cbar, Mat::identity(total(d.beta)), l_diag(d.gamma).transpose()});
  const Mat pad(d.r, e_top.cols());
  Mat b(e_top.rows() + d.r, d.m());
  b.set_block(e_top.rows(), d.zero_inputs, Mat::identity(d.r));
  return SystemTriple(vcat(e_top, pad), vcat(a_top, pad), std::move(b));
}

inline CheckReport pdff_report(const SystemTriple& sys, const PdffData& d) {
  CheckReport rep = detail::compare_row_blocks(sys, make_pdff_blocks(d),
                                               {{"alpha", total(d.alpha) - d.alpha.size()},
                                                {"cbar", d.nc()},
                                                {"beta", total(d.beta)},
                                                {"gamma", total(d.gamma)},
                                                {"input", d.r}});
  rep.add("r = rk B", d.r == rank(sys.B));
  return rep;
}

/// Exact comparison against the template; additionally r must equal rk B.
inline bool verify_pdff(const SystemTriple& sys, const PdffData& d) {
  const SystemTriple t = make_pdff_blocks(d);
  if (t.l() != sys.l() || t.n() != sys.n() || t.m() != sys.m()) {
    throw DimensionError("form data describe " + std::to_string(t.l()) + "x" + std::to_string(t.n()) + "x" +
                         std::to_string(t.m()) + " but the system is " + std::to_string(sys.l()) + "x" +
                         std::to_string(sys.n()) + "x" + std::to_string(sys.m()));
  }
  return d.r == rank(sys.B) && t == sys;
}

}  // namespace daeforms
