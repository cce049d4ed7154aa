#pragma once

#include <daeforms/canonical_forms.hpp>
#include <daeforms/check_report.hpp>
#include <daeforms/p_feedback.hpp>
#include <daeforms/pencil_rank.hpp>
#include <daeforms/subspace.hpp>
#include <daeforms/sylvester.hpp>
#include <daeforms/system.hpp>
#include <daeforms/wong.hpp>

#include <array>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace daeforms {

/// Proportional-derivative feedback equivalence witness:
///   [s E1 - A1, B1] = S [s E2 - A2, B2] [T 0; s F_D - F_P V].
struct PDTransform {
  Mat S, T, V, F_P, F_D;

  static PDTransform identity(std::size_t l, std::size_t n, std::size_t m) {
    return {Mat::identity(l), Mat::identity(n), Mat::identity(m), Mat(m, n), Mat(m, n)};
  }

  static PDTransform from(const PTransform& p) { return {p.S, p.T, p.V, p.F_P, Mat(p.F_P.rows(), p.F_P.cols())}; }

  void validate() const {
    if (!is_invertible(S)) throw std::invalid_argument("witness S is not invertible");
    if (!is_invertible(T)) throw std::invalid_argument("witness T is not invertible");
    if (!is_invertible(V)) throw std::invalid_argument("witness V is not invertible");
    for (const Mat* f : {&F_P, &F_D}) {
      if (f->rows() != V.rows() || f->cols() != T.rows()) {
        throw DimensionError("witness feedback must be " + std::to_string(V.rows()) + "x" + std::to_string(T.rows()));
      }
    }
  }
};

/// [S (E T + B F_D), S (A T + B F_P), S B V].
inline SystemTriple apply_pd_transform(const SystemTriple& sys, const PDTransform& w) {
  w.validate();
  if (w.S.cols() != sys.l() || w.T.rows() != sys.n() || w.V.rows() != sys.m()) {
    throw DimensionError("witness does not fit a system with l=" + std::to_string(sys.l()) +
                         ", n=" + std::to_string(sys.n()) + ", m=" + std::to_string(sys.m()));
  }
  return SystemTriple(w.S * (sys.E * w.T + sys.B * w.F_D), w.S * (sys.A * w.T + sys.B * w.F_P), w.S * sys.B * w.V);
}

/// Witness equal to applying `first` and then `second`.
inline PDTransform compose(const PDTransform& first, const PDTransform& second) {
  return {second.S * first.S, first.T * second.T, first.V * second.V, first.F_P * second.T + first.V * second.F_P,
          first.F_D * second.T + first.V * second.F_D};
}

inline PDTransform inverse(const PDTransform& w) {
  const Mat ti = inverse(w.T);
  const Mat vi = inverse(w.V);
  return {inverse(w.S), ti, vi, -(vi * w.F_P * ti), -(vi * w.F_D * ti)};
}

/// Row blocks l[0..2] plus a last block of m[1] = rk B rows; state blocks
/// n[0..2]; input blocks m[0] = dim ker B and m[1].
struct QpdffSizes {
  std::array<std::size_t, 3> l{}, n{};
  std::array<std::size_t, 2> m{};

  std::vector<std::size_t> rows() const { return {l[0], l[1], l[2], m[1]}; }
  std::vector<std::size_t> cols() const { return {n[0], n[1], n[2]}; }
  std::vector<std::size_t> inputs() const { return {m[0], m[1]}; }

  friend bool operator==(const QpdffSizes&, const QpdffSizes&) = default;
};

struct QpdffDecomposition {
  SystemTriple transformed;
  PDTransform witness;
  QpdffSizes sizes;
};

/// Quasi proportional-derivative feedback form built from the Wong limits.
/// S^{-1} = [U_S, R_S, O_S, Q_S] with im Q_S = im B placed last.
inline QpdffDecomposition compute_qpdff(const SystemTriple& sys, CandidateOrder order = CandidateOrder::forward) {
  const std::size_t l = sys.l(), m = sys.m();
  const WongReport w = wong_limits(sys);
  const Subspace vw = intersect(w.v_limit, w.w_limit);
  const Subspace im_b = image_basis(sys.B);
  const Subspace evw_b = sum(map(sys.E, vw), im_b);
  const Subspace ev_b = sum(map(sys.E, w.v_limit), im_b);

  const Mat u_t = vw.basis();
  const Mat r_t = complement(vw, w.v_limit, std::nullopt, order);
  const Mat o_t = complement(w.v_limit, Subspace::full(sys.n()), std::nullopt, order);
  const Mat q_s = im_b.basis();
  const Mat u_s = complement(im_b, evw_b, std::nullopt, order);
  const Mat r_s = complement(evw_b, ev_b, std::nullopt, order);
  const Mat o_s = complement(ev_b, Subspace::full(l), std::nullopt, order);

  QpdffSizes sz;
  sz.l = {u_s.cols(), r_s.cols(), o_s.cols()};
  sz.n = {u_t.cols(), r_t.cols(), o_t.cols()};

  PDTransform wt;
  wt.T = hcat(u_t, r_t, o_t);
  wt.S = inverse(hcat(u_s, r_s, o_s, q_s));
  const Mat last = selector(l, l - q_s.cols(), q_s.cols());
  const auto fd = solve_right(last * wt.S * sys.B, -(last * wt.S * sys.E * wt.T));
  const auto fp = solve_right(last * wt.S * sys.B, -(last * wt.S * sys.A * wt.T));
  if (!fd || !fp) throw std::logic_error("qpdff: feedback equations have no solution");
  wt.F_D = *fd;
  wt.F_P = *fp;

  const Subspace ker_b = kernel_basis(sys.B);
  const Mat v2 = complement(ker_b, Subspace::full(m), std::nullopt, order);
  wt.V = hcat(ker_b.basis(), v2);
  sz.m = {ker_b.dim(), v2.cols()};

  return {apply_pd_transform(sys, wt), std::move(wt), sz};
}

/// Checks the block pattern and conditions (i)-(iv) of the quasi
/// proportional-derivative form. An empty first block satisfies (i)
/// vacuously.
inline CheckReport verify_qpdff(const SystemTriple& sys, const QpdffSizes& sz) {
  const auto rs = sz.rows(), cs = sz.cols(), is = sz.inputs();
  detail::require_partition(rs, sys.l(), "row");
  detail::require_partition(cs, sys.n(), "state");
  detail::require_partition(is, sys.m(), "input");
  CheckReport rep;

  using Idx = std::pair<std::size_t, std::size_t>;
  for (auto [i, j] : std::initializer_list<Idx>{{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}}) {
    rep.add("pattern: " + detail::block_name("E", i, j) + " = 0", sub_block(sys.E, rs, cs, i, j).is_zero());
    rep.add("pattern: " + detail::block_name("A", i, j) + " = 0", sub_block(sys.A, rs, cs, i, j).is_zero());
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      if (i == 3 && j == 1) continue;
      rep.add("pattern: " + detail::block_name("B", i, j) + " = 0", sub_block(sys.B, rs, is, i, j).is_zero());
    }

  const std::size_t l1 = sz.l[0], n1 = sz.n[0];
  const Mat e11 = sub_block(sys.E, rs, cs, 0, 0), a11 = sub_block(sys.A, rs, cs, 0, 0);
  if (l1 == 0 && n1 == 0) {
    rep.add("(i) controllable block", true, "empty block");
  } else {
    rep.add("(i) l1 < n1", l1 < n1);
    rep.add("(i) rk E11 = l1", rank(e11) == l1);
    rep.add("(i) rk (lE11 - A11) = l1 for all l",
            l1 <= n1 && full_rank_all_finite(pencil(e11, a11), l1, RankOrientation::row));
  }

  rep.add("(ii) l2 = n2", sz.l[1] == sz.n[1]);
  rep.add("(ii) E22 invertible", is_invertible(sub_block(sys.E, rs, cs, 1, 1)));

  const Mat e33 = sub_block(sys.E, rs, cs, 2, 2), a33 = sub_block(sys.A, rs, cs, 2, 2);
  rep.add("(iii) rk (lE33 - A33) = n3 for all l",
          sz.n[2] <= sz.l[2] && full_rank_all_finite(pencil(e33, a33), sz.n[2], RankOrientation::column));

  const Mat b_hat = sub_block(sys.B, rs, is, 3, 1);
  rep.add("(iv) B-hat invertible", is_invertible(b_hat));
  rep.add("(iv) m2 = rk B", sz.m[1] == rank(sys.B));
  return rep;
}

inline bool is_decoupled_qpdff(const SystemTriple& sys, const QpdffSizes& sz) {
  const auto rs = sz.rows(), cs = sz.cols();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      if (!sub_block(sys.E, rs, cs, i, j).is_zero() || !sub_block(sys.A, rs, cs, i, j).is_zero()) return false;
    }
  return true;
}

struct QpdffDecoupling {
  SystemTriple decoupled;
  PDTransform witness;
  std::vector<Mat> residuals;

  bool residuals_zero() const {
    for (const auto& r : residuals)
      if (!r.is_zero()) return false;
    return true;
  }
};

/// Removes the off-diagonal blocks of a quasi proportional-derivative form.
/// State and input are already separated, so no feedback is needed.
inline QpdffDecoupling decouple_qpdff(const SystemTriple& sys, const QpdffSizes& sz) {
  const CheckReport rep = verify_qpdff(sys, sz);
  if (!rep.passed()) throw std::invalid_argument("decouple_qpdff: input is not in the form (" + rep.first_failure()->name + ")");

  const auto rs = sz.rows(), cs = sz.cols();
  auto E = [&](std::size_t i, std::size_t j) { return sub_block(sys.E, rs, cs, i, j); };
  auto A = [&](std::size_t i, std::size_t j) { return sub_block(sys.A, rs, cs, i, j); };
  const auto [l1, l2, l3] = sz.l;
  const auto [n1, n2, n3] = sz.n;
  auto I = [](std::size_t k) { return Mat::identity(k); };

  QpdffDecoupling out;
  auto take = [&](const LinearMatrixSystem& lms, const char* what) {
    auto sol = lms.solve();
    if (!sol) throw std::logic_error(std::string("decouple_qpdff: no solution for the ") + what + " corrections");
    for (auto& r : lms.residuals(*sol)) out.residuals.push_back(std::move(r));
    return *sol;
  };

  auto couple = [&](Mat a_const, Mat e_const, const Mat& a_left, const Mat& e_left, const Mat& a_right,
                    const Mat& e_right, std::size_t rows_left, std::size_t cols_right, const char* what) {
    LinearMatrixSystem lms;
    const auto tx = lms.add_unknown(a_left.cols(), cols_right);
    const auto ts = lms.add_unknown(rows_left, a_right.rows());
    auto ea = lms.add_equation(std::move(a_const));
    lms.add_term(ea, tx, a_left, I(cols_right));
    lms.add_term(ea, ts, I(rows_left), a_right);
    auto ee = lms.add_equation(std::move(e_const));
    lms.add_term(ee, tx, e_left, I(cols_right));
    lms.add_term(ee, ts, I(rows_left), e_right);
    return take(lms, what);
  };

  const auto g = couple(A(0, 1), E(0, 1), A(0, 0), E(0, 0), A(1, 1), E(1, 1), l1, n2, "first/second block");
  const auto f = couple(A(1, 2), E(1, 2), A(1, 1), E(1, 1), A(2, 2), E(2, 2), l2, n3, "second/third block");
  const auto h = couple(A(0, 1) * f[0] + A(0, 2), E(0, 1) * f[0] + E(0, 2), A(0, 0), E(0, 0), A(2, 2), E(2, 2), l1,
                        n3, "first/third block");

  Mat left = Mat::identity(sys.l());
  left.set_block(0, l1, -g[1]);
  left.set_block(0, l1 + l2, -h[1]);
  left.set_block(l1, l1 + l2, -f[1]);

  PDTransform w = PDTransform::identity(sys.l(), sys.n(), sys.m());
  w.S = inverse(left);
  w.T.set_block(0, n1, g[0]);
  w.T.set_block(0, n1 + n2, h[0]);
  w.T.set_block(n1, n1 + n2, f[0]);
  (void)l3;

  out.decoupled = apply_pd_transform(sys, w);
  out.witness = std::move(w);
  return out;
}

/// Subspace identities a decoupled quasi proportional-derivative form
/// satisfies, plus equality of the Wong limits with and without B.
inline CheckReport check_decoupled_qpdff_identities(const SystemTriple& sys, const QpdffSizes& sz) {
  const WongReport w = wong_limits(sys);
  const WongReport w0 = wong_limits(SystemTriple(sys.E, sys.A, Mat(sys.l(), 0)));
  const Subspace vw = intersect(w.v_limit, w.w_limit);
  const auto [l1, l2, l3] = sz.l;
  const auto [n1, n2, n3] = sz.n;
  const std::size_t l = sys.l(), n = sys.n(), m2 = sz.m[1];
  const Subspace inputs = Subspace::coordinate(l, l1 + l2 + l3, m2);
  const Subspace im_b = image_basis(sys.B);
  CheckReport rep;
  rep.add("V* n W* = Q^n1 x 0", vw == Subspace::coordinate(n, 0, n1));
  rep.add("V* = Q^(n1+n2) x 0", w.v_limit == Subspace::coordinate(n, 0, n1 + n2));
  rep.add("im B = 0 x Q^m2", im_b == inputs);
  rep.add("E(V* n W*) + im B = Q^l1 x 0 x Q^m2",
          sum(map(sys.E, vw), im_b) == sum(Subspace::coordinate(l, 0, l1), inputs));
  rep.add("E V* + im B = Q^(l1+l2) x 0 x Q^m2",
          sum(map(sys.E, w.v_limit), im_b) == sum(Subspace::coordinate(l, 0, l1 + l2), inputs));
  rep.add("V* and W* do not depend on B", w.v_limit == w0.v_limit && w.w_limit == w0.w_limit);
  (void)n3;
  return rep;
}

namespace detail {

inline Mat reversal(std::size_t k) {
  Mat j(k, k);
  for (std::size_t i = 0; i < k; ++i) j(i, k - 1 - i) = 1;
  return j;
}

/// P with P(i, order[i]) = 1, so P M lists the rows of M in `order`.
inline Mat row_permutation(const std::vector<std::size_t>& order) {
  Mat p(order.size(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i) p(i, order[i]) = 1;
  return p;
}

inline void append_range(std::vector<std::size_t>& v, std::size_t first, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) v.push_back(first + k);
}

}  // namespace detail

struct PffToPdff {
  SystemTriple system;
  PDTransform witness;
  PdffData data;
};

/// Rewrites a system in proportional-feedback form into
/// proportional-derivative form. Each beta chain [I, N^T, e_k] becomes
/// [[K_k; 0], [L_k; 0], [0; 1]] by reversing its states and its first k-1
/// equations and feeding back -x'_1; each kappa chain [K_k^T, L_k^T, e_k]
/// becomes [[N_{k-1}; 0], [I_{k-1}; 0], [0; 1]] by feeding back -x'_{k-1}.
/// Rows, states and inputs are then permuted into the target layout.
inline PffToPdff pff_to_pdff(const SystemTriple& sys, const PffData& d) {
  if (!verify_pff(sys, d)) throw std::invalid_argument("pff_to_pdff: system is not in the stated form");
  const std::size_t l = sys.l(), n = sys.n(), m = sys.m();
  const std::size_t nb = d.beta.size(), nk = d.kappa.size(), nc = d.nc();

  const std::size_t r_alpha = 0, r_beta = total(d.alpha) - d.alpha.size();
  const std::size_t r_c = r_beta + total(d.beta), r_gamma = r_c + nc;
  const std::size_t r_delta = r_gamma + total(d.gamma), r_kappa = r_delta + total(d.delta);
  const std::size_t c_alpha = 0, c_beta = total(d.alpha), c_c = c_beta + total(d.beta);
  const std::size_t c_gamma = c_c + nc, c_delta = c_gamma + total(d.gamma);
  const std::size_t c_kappa = c_delta + total(d.delta) - d.delta.size();
  const std::size_t in_kappa = nb + d.zero_inputs;

  PDTransform local = PDTransform::identity(l, n, m);
  std::vector<std::size_t> alpha_rows, alpha_cols, beta_rows, beta_cols, input_rows;
  detail::append_range(alpha_rows, r_alpha, r_beta - r_alpha);
  detail::append_range(alpha_cols, c_alpha, c_beta - c_alpha);

  std::size_t r = r_beta, c = c_beta;
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t k = d.beta[i];
    local.T.set_block(c, c, detail::reversal(k));
    local.S.set_block(r, r, detail::reversal(k - 1));
    local.F_D(i, c) = -1;
    detail::append_range(alpha_rows, r, k - 1);
    detail::append_range(alpha_cols, c, k);
    input_rows.push_back(r + k - 1);
    r += k;
    c += k;
  }

  std::vector<std::size_t> nil_rows, nil_cols;
  detail::append_range(nil_rows, r_gamma, total(d.gamma));
  detail::append_range(nil_cols, c_gamma, total(d.gamma));
  PdffData out;
  out.alpha = d.alpha;
  out.alpha.insert(out.alpha.end(), d.beta.begin(), d.beta.end());
  out.A_cbar = d.A_cbar;
  out.beta = d.gamma;
  out.gamma = d.delta;
  out.r = nb + nk;
  out.zero_inputs = d.zero_inputs;

  r = r_kappa;
  c = c_kappa;
  for (std::size_t i = 0; i < nk; ++i) {
    const std::size_t k = d.kappa[i];
    if (k >= 2) {
      local.F_D(in_kappa + i, c + k - 2) = -1;
      out.beta.push_back(k - 1);
    }
    detail::append_range(nil_rows, r, k - 1);
    detail::append_range(nil_cols, c, k - 1);
    input_rows.push_back(r + k - 1);
    r += k;
    c += k - 1;
  }

  std::vector<std::size_t> row_order = alpha_rows, col_order = alpha_cols, input_order;
  detail::append_range(row_order, r_c, nc);
  detail::append_range(col_order, c_c, nc);
  row_order.insert(row_order.end(), nil_rows.begin(), nil_rows.end());
  col_order.insert(col_order.end(), nil_cols.begin(), nil_cols.end());
  detail::append_range(row_order, r_delta, total(d.delta));
  detail::append_range(col_order, c_delta, total(d.delta) - d.delta.size());
  row_order.insert(row_order.end(), input_rows.begin(), input_rows.end());
  detail::append_range(input_order, nb, d.zero_inputs);
  detail::append_range(input_order, 0, nb);
  detail::append_range(input_order, in_kappa, nk);

  PDTransform perm = PDTransform::identity(l, n, m);
  perm.S = detail::row_permutation(row_order);
  perm.T = detail::row_permutation(col_order).transpose();
  perm.V = detail::row_permutation(input_order).transpose();

  PDTransform w = compose(local, perm);
  SystemTriple result = apply_pd_transform(sys, w);
  return {std::move(result), std::move(w), std::move(out)};
}

}  // namespace daeforms
