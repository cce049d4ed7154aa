#pragma once

#include <daeforms/check_report.hpp>
#include <daeforms/pencil_rank.hpp>
#include <daeforms/subspace.hpp>
#include <daeforms/sylvester.hpp>
#include <daeforms/system.hpp>
#include <daeforms/wong.hpp>

#include <array>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace daeforms {

/// Proportional feedback equivalence witness:
///   [s E1 - A1, -B1] = S [s E2 - A2, -B2] [T 0; F_P V].
struct PTransform {
  Mat S, T, V, F_P;

  static PTransform identity(std::size_t l, std::size_t n, std::size_t m) {
    return {Mat::identity(l), Mat::identity(n), Mat::identity(m), Mat(m, n)};
  }

  void validate() const {
    if (!is_invertible(S)) throw std::invalid_argument("witness S is not invertible");
    if (!is_invertible(T)) throw std::invalid_argument("witness T is not invertible");
    if (!is_invertible(V)) throw std::invalid_argument("witness V is not invertible");
    if (F_P.rows() != V.rows() || F_P.cols() != T.rows()) {
      throw DimensionError("witness F_P must be " + std::to_string(V.rows()) + "x" + std::to_string(T.rows()));
    }
  }
};

/// [S E T, S (A T + B F_P), S B V].
inline SystemTriple apply_p_transform(const SystemTriple& sys, const PTransform& w) {
  w.validate();
  if (w.S.cols() != sys.l() || w.T.rows() != sys.n() || w.V.rows() != sys.m()) {
    throw DimensionError("witness does not fit a system with l=" + std::to_string(sys.l()) +
                         ", n=" + std::to_string(sys.n()) + ", m=" + std::to_string(sys.m()));
  }
  return SystemTriple(w.S * sys.E * w.T, w.S * (sys.A * w.T + sys.B * w.F_P), w.S * sys.B * w.V);
}

/// Witness equal to applying `first` and then `second`.
inline PTransform compose(const PTransform& first, const PTransform& second) {
  return {second.S * first.S, first.T * second.T, first.V * second.V, first.F_P * second.T + first.V * second.F_P};
}

inline PTransform inverse(const PTransform& w) {
  const Mat ti = inverse(w.T);
  const Mat vi = inverse(w.V);
  return {inverse(w.S), ti, vi, -(vi * w.F_P * ti)};
}

struct QpffSizes {
  std::array<std::size_t, 3> l{}, n{}, m{};

  std::vector<std::size_t> rows() const { return {l[0], l[1], l[2]}; }
  std::vector<std::size_t> cols() const { return {n[0], n[1], n[2]}; }
  std::vector<std::size_t> inputs() const { return {m[0], m[1], m[2]}; }

  friend bool operator==(const QpffSizes&, const QpffSizes&) = default;
};

struct BasisSelection {
  Mat U_T, R_T, O_T, U_S, R_S, O_S;
};

/// Bases adapted to the Wong limits. O_S prefers columns of B so that
/// im B lies in im [U_S, O_S].
inline BasisSelection select_bases(const SystemTriple& sys, const WongReport& w,
                                   CandidateOrder order = CandidateOrder::forward) {
  const Subspace vw = intersect(w.v_limit, w.w_limit);
  const Subspace ev = map(sys.E, w.v_limit);
  const Subspace u_s = intersect(ev, sum(map(sys.A, w.w_limit), image_basis(sys.B)));
  BasisSelection b;
  b.U_T = vw.basis();
  b.R_T = complement(vw, w.v_limit, std::nullopt, order);
  b.O_T = complement(w.v_limit, Subspace::full(sys.n()), std::nullopt, order);
  b.U_S = u_s.basis();
  b.R_S = complement(u_s, ev, std::nullopt, order);
  b.O_S = complement(ev, Subspace::full(sys.l()), sys.B, order);
  return b;
}

inline BasisSelection select_bases(const SystemTriple& sys, CandidateOrder order = CandidateOrder::forward) {
  return select_bases(sys, wong_limits(sys), order);
}

struct QpffDecomposition {
  SystemTriple transformed;
  PTransform witness;
  QpffSizes sizes;
};

/// Quasi proportional-feedback form built from the Wong limits.
inline QpffDecomposition compute_qpff(const SystemTriple& sys, CandidateOrder order = CandidateOrder::forward) {
  const std::size_t l = sys.l(), m = sys.m();
  const BasisSelection b = select_bases(sys, wong_limits(sys), order);

  QpffSizes sz;
  sz.l = {b.U_S.cols(), b.R_S.cols(), b.O_S.cols()};
  sz.n = {b.U_T.cols(), b.R_T.cols(), b.O_T.cols()};

  PTransform w;
  w.T = hcat(b.U_T, b.R_T, b.O_T);
  w.S = inverse(hcat(b.U_S, b.R_S, b.O_S));

  const Mat lower = selector(l, sz.l[0], sz.l[1] + sz.l[2]);
  const Mat last = selector(l, sz.l[0] + sz.l[1], sz.l[2]);
  const auto f1 = solve_right(lower * w.S * sys.B, -(lower * w.S * sys.A * b.U_T));
  const auto f2 = solve_right(last * w.S * sys.B, -(last * w.S * sys.A * b.R_T));
  if (!f1 || !f2) throw std::logic_error("qpff: feedback equations have no solution");
  w.F_P = hcat(*f1, *f2, Mat(m, sz.n[2]));

  const Subspace ker_b = kernel_basis(sys.B);
  const Subspace ker_last = kernel_basis(last * w.S * sys.B);
  const Mat v1 = complement(ker_b, ker_last, std::nullopt, order);
  const Mat v3 = complement(ker_last, Subspace::full(m), std::nullopt, order);
  w.V = hcat(v1, ker_b.basis(), v3);
  sz.m = {v1.cols(), ker_b.dim(), v3.cols()};

  return {apply_p_transform(sys, w), std::move(w), sz};
}

namespace detail {

inline std::string block_name(const char* mat, std::size_t i, std::size_t j) {
  return std::string(mat) + std::to_string(i + 1) + std::to_string(j + 1);
}

inline void require_partition(const std::vector<std::size_t>& parts, std::size_t whole, const char* what) {
  std::size_t s = 0;
  for (auto p : parts) s += p;
  if (s != whole) {
    throw DimensionError(std::string(what) + " partition sums to " + std::to_string(s) + ", expected " +
                         std::to_string(whole));
  }
}

}  // namespace detail

/// Checks the block pattern and the three diagonal-block conditions of the
/// quasi proportional-feedback form. An empty first block satisfies its
/// condition vacuously.
inline CheckReport verify_qpff(const SystemTriple& sys, const QpffSizes& sz) {
  const auto rs = sz.rows(), cs = sz.cols(), is = sz.inputs();
  detail::require_partition(rs, sys.l(), "row");
  detail::require_partition(cs, sys.n(), "state");
  detail::require_partition(is, sys.m(), "input");
  CheckReport rep;

  for (auto [i, j] : std::initializer_list<std::pair<std::size_t, std::size_t>>{{1, 0}, {2, 0}, {2, 1}}) {
    rep.add("pattern: " + detail::block_name("E", i, j) + " = 0", sub_block(sys.E, rs, cs, i, j).is_zero());
    rep.add("pattern: " + detail::block_name("A", i, j) + " = 0", sub_block(sys.A, rs, cs, i, j).is_zero());
  }
  for (auto [i, j] : std::initializer_list<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}}) {
    rep.add("pattern: " + detail::block_name("B", i, j) + " = 0", sub_block(sys.B, rs, is, i, j).is_zero());
  }

  const Mat e11 = sub_block(sys.E, rs, cs, 0, 0), a11 = sub_block(sys.A, rs, cs, 0, 0);
  const Mat b11 = sub_block(sys.B, rs, is, 0, 0);
  const std::size_t l1 = sz.l[0], n1 = sz.n[0], m1 = sz.m[0];
  if (l1 == 0 && n1 == 0 && m1 == 0) {
    rep.add("(i) controllable block", true, "empty block");
  } else {
    rep.add("(i) l1 < n1 + m1", l1 < n1 + m1);
    rep.add("(i) rk E11 = l1", rank(e11) == l1);
    rep.add("(i) rk [lE11 - A11, B11] = l1 for all l",
            l1 <= n1 + m1 &&
                full_rank_all_finite(pencil(hcat(e11, Mat(l1, m1)), hcat(a11, -b11)), l1, RankOrientation::row));
    rep.add("(i) rk B11 = m1", rank(b11) == m1);
  }

  const Mat e22 = sub_block(sys.E, rs, cs, 1, 1);
  rep.add("(ii) l2 = n2", sz.l[1] == sz.n[1]);
  rep.add("(ii) E22 invertible", is_invertible(e22));

  const Mat e33 = sub_block(sys.E, rs, cs, 2, 2), a33 = sub_block(sys.A, rs, cs, 2, 2);
  const Mat b33 = sub_block(sys.B, rs, is, 2, 2);
  const std::size_t l3 = sz.l[2], n3 = sz.n[2], m3 = sz.m[2];
  const bool fits = n3 + m3 <= l3;
  rep.add("(iii) rk [lE33 - A33, B33] = n3 + m3 for all l",
          fits && full_rank_all_finite(pencil(hcat(e33, Mat(l3, m3)), hcat(a33, -b33)), n3 + m3,
                                       RankOrientation::column));
  return rep;
}

/// True when every off-diagonal block of E and A, and B13, vanish.
inline bool is_decoupled_qpff(const SystemTriple& sys, const QpffSizes& sz) {
  const auto rs = sz.rows(), cs = sz.cols(), is = sz.inputs();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      if (!sub_block(sys.E, rs, cs, i, j).is_zero() || !sub_block(sys.A, rs, cs, i, j).is_zero()) return false;
      if (!sub_block(sys.B, rs, is, i, j).is_zero()) return false;
    }
  return true;
}

struct QpffDecoupling {
  SystemTriple decoupled;
  PTransform witness;
  /// Every equation of the three coupling systems evaluated at the solution.
  std::vector<Mat> residuals;

  bool residuals_zero() const {
    for (const auto& r : residuals)
      if (!r.is_zero()) return false;
    return true;
  }
};

/// Removes the off-diagonal blocks of a quasi proportional-feedback form.
/// Three linear matrix systems give the corrections; each is solved by one
/// joint flattening. The resulting witness has V = I.
inline QpffDecoupling decouple_qpff(const SystemTriple& sys, const QpffSizes& sz) {
  const CheckReport rep = verify_qpff(sys, sz);
  if (!rep.passed()) throw std::invalid_argument("decouple_qpff: input is not in the form (" + rep.first_failure()->name + ")");

  const auto rs = sz.rows(), cs = sz.cols(), is = sz.inputs();
  auto E = [&](std::size_t i, std::size_t j) { return sub_block(sys.E, rs, cs, i, j); };
  auto A = [&](std::size_t i, std::size_t j) { return sub_block(sys.A, rs, cs, i, j); };
  auto B = [&](std::size_t i, std::size_t j) { return sub_block(sys.B, rs, is, i, j); };
  const auto [l1, l2, l3] = sz.l;
  const auto [n1, n2, n3] = sz.n;
  const std::size_t m1 = sz.m[0];
  auto I = [](std::size_t k) { return Mat::identity(k); };

  QpffDecoupling out;
  auto take = [&](const LinearMatrixSystem& lms, const char* what) {
    auto sol = lms.solve();
    if (!sol) throw std::logic_error(std::string("decouple_qpff: no solution for the ") + what + " corrections");
    for (auto& r : lms.residuals(*sol)) out.residuals.push_back(std::move(r));
    return *sol;
  };

  // Couplings between blocks 1 and 2.
  LinearMatrixSystem g;
  const auto gx = g.add_unknown(n1, n2), gu = g.add_unknown(m1, n2), gs = g.add_unknown(l1, l2);
  auto ga = g.add_equation(A(0, 1));
  g.add_term(ga, gx, A(0, 0), I(n2));
  g.add_term(ga, gu, -B(0, 0), I(n2));
  g.add_term(ga, gs, I(l1), A(1, 1));
  auto ge = g.add_equation(E(0, 1));
  g.add_term(ge, gx, E(0, 0), I(n2));
  g.add_term(ge, gs, I(l1), E(1, 1));
  const auto gsol = take(g, "first/second block");

  // Couplings between blocks 2 and 3.
  LinearMatrixSystem f;
  const auto fx = f.add_unknown(n2, n3), fs = f.add_unknown(l2, l3);
  auto fa = f.add_equation(A(1, 2));
  f.add_term(fa, fx, A(1, 1), I(n3));
  f.add_term(fa, fs, I(l2), A(2, 2));
  auto fb = f.add_equation(Mat(l2, sz.m[2]));
  f.add_term(fb, fs, I(l2), -B(2, 2));
  auto fe = f.add_equation(E(1, 2));
  f.add_term(fe, fx, E(1, 1), I(n3));
  f.add_term(fe, fs, I(l2), E(2, 2));
  const auto fsol = take(f, "second/third block");

  // Couplings between blocks 1 and 3, after the 2/3 correction.
  LinearMatrixSystem h;
  const auto hx = h.add_unknown(n1, n3), hu = h.add_unknown(m1, n3), hs = h.add_unknown(l1, l3);
  auto ha = h.add_equation(A(0, 1) * fsol[fx] + A(0, 2));
  h.add_term(ha, hx, A(0, 0), I(n3));
  h.add_term(ha, hu, -B(0, 0), I(n3));
  h.add_term(ha, hs, I(l1), A(2, 2));
  auto he = h.add_equation(E(0, 1) * fsol[fx] + E(0, 2));
  h.add_term(he, hx, E(0, 0), I(n3));
  h.add_term(he, hs, I(l1), E(2, 2));
  auto hb = h.add_equation(-B(0, 2));
  h.add_term(hb, hs, -I(l1), B(2, 2));
  const auto hsol = take(h, "first/third block");

  Mat left = Mat::identity(sys.l());
  left.set_block(0, l1, -gsol[gs]);
  left.set_block(0, l1 + l2, -hsol[hs]);
  left.set_block(l1, l1 + l2, -fsol[fs]);

  PTransform w;
  w.S = inverse(left);
  w.T = Mat::identity(sys.n());
  w.T.set_block(0, n1, gsol[gx]);
  w.T.set_block(0, n1 + n2, hsol[hx]);
  w.T.set_block(n1, n1 + n2, fsol[fx]);
  w.V = Mat::identity(sys.m());
  w.F_P = Mat(sys.m(), sys.n());
  w.F_P.set_block(0, n1, -gsol[gu]);
  w.F_P.set_block(0, n1 + n2, -hsol[hu]);

  out.decoupled = apply_p_transform(sys, w);
  out.witness = std::move(w);
  return out;
}

/// Subspace identities a decoupled quasi proportional-feedback form
/// satisfies: V* n W*, V*, E(V* n W*) and E V* are coordinate subspaces,
/// and m1 = m - m2 - m3 with m2 = dim ker B and m3 = dim(im B n last rows).
inline CheckReport check_decoupled_qpff_identities(const SystemTriple& sys, const QpffSizes& sz) {
  const WongReport w = wong_limits(sys);
  const Subspace vw = intersect(w.v_limit, w.w_limit);
  const auto [l1, l2, l3] = sz.l;
  const auto [n1, n2, n3] = sz.n;
  const std::size_t l = sys.l(), n = sys.n();
  CheckReport rep;
  rep.add("V* n W* = Q^n1 x 0", vw == Subspace::coordinate(n, 0, n1));
  rep.add("V* = Q^(n1+n2) x 0", w.v_limit == Subspace::coordinate(n, 0, n1 + n2));
  rep.add("E(V* n W*) = Q^l1 x 0", map(sys.E, vw) == Subspace::coordinate(l, 0, l1));
  rep.add("E V* = Q^(l1+l2) x 0", map(sys.E, w.v_limit) == Subspace::coordinate(l, 0, l1 + l2));
  const std::size_t m2 = kernel_basis(sys.B).dim();
  const std::size_t m3 = intersect(image_basis(sys.B), Subspace::coordinate(l, l1 + l2, l3)).dim();
  rep.add("m2 = dim ker B", sz.m[1] == m2);
  rep.add("m3 = dim(im B n (0 x Q^l3))", sz.m[2] == m3);
  rep.add("m1 = m - m2 - m3", sz.m[0] + m2 + m3 == sys.m());
  (void)n3;
  return rep;
}

struct ControllabilityClassification {
  QpffSizes sizes;
  std::array<std::string, 3> labels{"completely controllable; input neither constrained nor redundant",
                                    "uncontrollable ODE",
                                    "only the trivial solution; input maximally constrained"};
  std::size_t redundant_inputs = 0;   // dim ker B
  std::size_t constrained_inputs = 0; // dim of im B within the last row block
};

/// Block structure of the quasi form with the meaning of each block.
inline ControllabilityClassification classify_controllability(const SystemTriple& sys) {
  const QpffDecomposition q = compute_qpff(sys);
  ControllabilityClassification c;
  c.sizes = q.sizes;
  c.redundant_inputs = kernel_basis(sys.B).dim();
  const Subspace last_rows = Subspace::coordinate(sys.l(), q.sizes.l[0] + q.sizes.l[1], q.sizes.l[2]);
  c.constrained_inputs = intersect(image_basis(q.transformed.B), last_rows).dim();
  return c;
}

}  // namespace daeforms
