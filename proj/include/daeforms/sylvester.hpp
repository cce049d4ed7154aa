#pragma once

#include <daeforms/matrix.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace daeforms {

/// A system of linear matrix equations
///   0 = C_k + sum_t P_t X_{u(t)} Q_t      (one equation per k)
/// in unknown matrices X_0, X_1, ... Everything is flattened with
/// vec(P X Q) = (Q^T kron P) vec(X) into one linear system.
class LinearMatrixSystem {
 public:
  std::size_t add_unknown(std::size_t rows, std::size_t cols) {
    unknowns_.push_back({rows, cols, total_unknowns_});
    total_unknowns_ += rows * cols;
    return unknowns_.size() - 1;
  }

  /// New equation 0 = constant + (terms added later).
  std::size_t add_equation(Mat constant) {
    equations_.push_back({std::move(constant), {}});
    return equations_.size() - 1;
  }

  /// Adds left * X_unknown * right to an equation.
  void add_term(std::size_t equation, std::size_t unknown, Mat left, Mat right) {
    const auto& u = unknowns_.at(unknown);
    auto& eq = equations_.at(equation);
    if (left.cols() != u.rows || right.rows() != u.cols || left.rows() != eq.constant.rows() ||
        right.cols() != eq.constant.cols()) {
      throw DimensionError("term " + left.shape() + " * X(" + std::to_string(u.rows) + "x" + std::to_string(u.cols) +
                           ") * " + right.shape() + " in equation of shape " + eq.constant.shape());
    }
    eq.terms.push_back({unknown, std::move(left), std::move(right)});
  }

  /// One solution with free variables zeroed, or std::nullopt.
  std::optional<std::vector<Mat>> solve() const {
    std::size_t total_rows = 0;
    for (const auto& eq : equations_) total_rows += eq.constant.rows() * eq.constant.cols();
    Mat coeff(total_rows, total_unknowns_);
    Mat rhs(total_rows, 1);
    std::size_t r0 = 0;
    for (const auto& eq : equations_) {
      const std::size_t h = eq.constant.rows() * eq.constant.cols();
      rhs.set_block(r0, 0, -vec(eq.constant));
      for (const auto& t : eq.terms) {
        const auto& u = unknowns_[t.unknown];
        Mat k = kron(t.right.transpose(), t.left);
        k += coeff.block(r0, u.offset, h, u.rows * u.cols);
        coeff.set_block(r0, u.offset, k);
      }
      r0 += h;
    }
    auto x = solve_right(coeff, rhs);
    if (!x) return std::nullopt;
    std::vector<Mat> out;
    for (const auto& u : unknowns_) out.push_back(unvec(*x, u.offset, u.rows, u.cols));
    return out;
  }

  /// Value of each equation's right-hand side at the given unknowns.
  std::vector<Mat> residuals(const std::vector<Mat>& values) const {
    std::vector<Mat> res;
    for (const auto& eq : equations_) {
      Mat r = eq.constant;
      for (const auto& t : eq.terms) r += t.left * values.at(t.unknown) * t.right;
      res.push_back(std::move(r));
    }
    return res;
  }

 private:
  struct Unknown {
    std::size_t rows, cols, offset;
  };
  struct Term {
    std::size_t unknown;
    Mat left, right;
  };
  struct Equation {
    Mat constant;
    std::vector<Term> terms;
  };
  std::vector<Unknown> unknowns_;
  std::vector<Equation> equations_;
  std::size_t total_unknowns_ = 0;
};

/// A X B - C X D = E with A, C in Q^{m x n}, B, D in Q^{p x q}, E in Q^{m x q}.
struct GenSylvesterInstance {
  Mat A, B, C, D, E;

  void validate() const {
    if (A.rows() != C.rows() || A.cols() != C.cols()) throw DimensionError("A and C must share a shape");
    if (B.rows() != D.rows() || B.cols() != D.cols()) throw DimensionError("B and D must share a shape");
    if (E.rows() != A.rows() || E.cols() != B.cols()) throw DimensionError("E must be " + std::to_string(A.rows()) + "x" + std::to_string(B.cols()));
  }

  Mat residual(const Mat& x) const { return A * x * B - C * x * D - E; }
};

inline std::optional<Mat> solve_gen_sylvester(const GenSylvesterInstance& in) {
  in.validate();
  LinearMatrixSystem sys;
  const auto x = sys.add_unknown(in.A.cols(), in.B.rows());
  const auto eq = sys.add_equation(-in.E);
  sys.add_term(eq, x, in.A, in.B);
  sys.add_term(eq, x, -in.C, in.D);
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return std::move((*sol)[0]);
}

inline std::optional<Mat> solve_gen_sylvester(const Mat& a, const Mat& b, const Mat& c, const Mat& d, const Mat& e) {
  return solve_gen_sylvester(GenSylvesterInstance{a, b, c, d, e});
}

/// The coupled pair 0 = E + A Y + Z D, 0 = F + C Y + Z B with
/// A, C in Q^{m x n}, B, D in Q^{p x q}, E, F in Q^{m x q}.
struct TwoEqInstance {
  Mat A, C, B, D, E, F;

  void validate() const {
    if (A.rows() != C.rows() || A.cols() != C.cols()) throw DimensionError("A and C must share a shape");
    if (B.rows() != D.rows() || B.cols() != D.cols()) throw DimensionError("B and D must share a shape");
    if (E.rows() != A.rows() || E.cols() != B.cols() || F.rows() != E.rows() || F.cols() != E.cols()) {
      throw DimensionError("E and F must be " + std::to_string(A.rows()) + "x" + std::to_string(B.cols()));
    }
  }

  std::pair<Mat, Mat> residuals(const Mat& y, const Mat& z) const { return {E + A * y + z * D, F + C * y + z * B}; }
};

struct TwoEqSolution {
  Mat Y, Z;
};

inline std::optional<TwoEqSolution> solve_two_equations(const TwoEqInstance& in) {
  in.validate();
  LinearMatrixSystem sys;
  const auto y = sys.add_unknown(in.A.cols(), in.B.cols());
  const auto z = sys.add_unknown(in.A.rows(), in.B.rows());
  const auto e1 = sys.add_equation(in.E);
  sys.add_term(e1, y, in.A, Mat::identity(in.B.cols()));
  sys.add_term(e1, z, Mat::identity(in.A.rows()), in.D);
  const auto e2 = sys.add_equation(in.F);
  sys.add_term(e2, y, in.C, Mat::identity(in.B.cols()));
  sys.add_term(e2, z, Mat::identity(in.A.rows()), in.B);
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return TwoEqSolution{std::move((*sol)[0]), std::move((*sol)[1])};
}

enum class ReductionSide { left_inverse_of_input_pencil, right_inverse_of_state_pencil };

/// A generalized Sylvester equation equivalent to a TwoEqInstance together
/// with what is needed to map its solution X back to (Y, Z).
///
/// Left route, M = lambda B - D with left inverse M+, G = (E - lambda F) M+:
///   A X B - C X D = -F - G B,  Y = X M,  Z = (A - lambda C) X + G.
/// Right route, N = lambda C - A with right inverse R:
///   A X B - C X D = -F + C R (lambda F - E),
///   Y = X M + R (E - lambda F),  Z = -N X.
struct ReducedInstance {
  GenSylvesterInstance equation;
  Rational lambda;
  ReductionSide side = ReductionSide::left_inverse_of_input_pencil;
  Mat pseudo_inverse;

  TwoEqSolution back_substitute(const TwoEqInstance& in, const Mat& x) const {
    const Mat m = lambda * in.B - in.D;
    if (side == ReductionSide::left_inverse_of_input_pencil) {
      const Mat g = (in.E - lambda * in.F) * pseudo_inverse;
      return {x * m, (in.A - lambda * in.C) * x + g};
    }
    const Mat nn = lambda * in.C - in.A;
    return {x * m + pseudo_inverse * (in.E - lambda * in.F), -(nn * x)};
  }
};

/// Reduction for a fixed lambda; std::nullopt when lambda B - D has no left
/// inverse.
inline std::optional<ReducedInstance> reduce_left(const TwoEqInstance& in, const Rational& lambda) {
  in.validate();
  auto li = left_inverse(lambda * in.B - in.D);
  if (!li) return std::nullopt;
  const Mat g = (in.E - lambda * in.F) * *li;
  return ReducedInstance{GenSylvesterInstance{in.A, in.B, in.C, in.D, -in.F - g * in.B}, lambda,
                         ReductionSide::left_inverse_of_input_pencil, *li};
}

/// Transposed reduction; std::nullopt when lambda C - A has no right inverse.
inline std::optional<ReducedInstance> reduce_right(const TwoEqInstance& in, const Rational& lambda) {
  in.validate();
  auto ri = right_inverse(lambda * in.C - in.A);
  if (!ri) return std::nullopt;
  return ReducedInstance{GenSylvesterInstance{in.A, in.B, in.C, in.D, -in.F + in.C * *ri * (lambda * in.F - in.E)},
                         lambda, ReductionSide::right_inverse_of_state_pencil, *ri};
}

/// Candidate values 0, 1, -1, 2, -2, ...
inline std::vector<Rational> lambda_candidates(std::size_t count) {
  std::vector<Rational> out{Rational(0)};
  for (long k = 1; out.size() < count; ++k) {
    out.emplace_back(k);
    if (out.size() < count) out.emplace_back(-k);
  }
  return out;
}

/// First lambda in the search order for which the chosen reduction applies.
/// A pencil of full polynomial rank drops rank at no more points than its
/// size, so the search is bounded.
inline std::optional<ReducedInstance> find_reduction(const TwoEqInstance& in, ReductionSide side) {
  const std::size_t bound = std::max({in.A.rows(), in.A.cols(), in.B.rows(), in.B.cols()}) + 2;
  for (const Rational& lambda : lambda_candidates(bound)) {
    auto r = side == ReductionSide::left_inverse_of_input_pencil ? reduce_left(in, lambda) : reduce_right(in, lambda);
    if (r) return r;
  }
  return std::nullopt;
}

/// Solves the pair by reduction to one generalized Sylvester equation.
inline std::optional<TwoEqSolution> solve_two_equations_reduced(const TwoEqInstance& in, ReductionSide side) {
  auto red = find_reduction(in, side);
  if (!red) return std::nullopt;
  auto x = solve_gen_sylvester(red->equation);
  if (!x) return std::nullopt;
  return red->back_substitute(in, *x);
}

}  // namespace daeforms
