#include "fixtures.hpp"
#include "properties.hpp"

#include <daeforms/pencil_rank.hpp>
#include <daeforms/sylvester.hpp>

#include <gtest/gtest.h>

using namespace daeforms;

TEST(LinearMatrixSystem, SolvesCoupledEquations) {
  // 0 = C + X - Y, 0 = D + 2 Y.
  LinearMatrixSystem lms;
  const auto x = lms.add_unknown(2, 1), y = lms.add_unknown(2, 1);
  const auto e1 = lms.add_equation(Mat{{1}, {2}});
  lms.add_term(e1, x, Mat::identity(2), Mat::identity(1));
  lms.add_term(e1, y, -Mat::identity(2), Mat::identity(1));
  const auto e2 = lms.add_equation(Mat{{4}, {-2}});
  lms.add_term(e2, y, Rational(2) * Mat::identity(2), Mat::identity(1));
  const auto sol = lms.solve();
  ASSERT_TRUE(sol);
  EXPECT_EQ((*sol)[1], (Mat{{-2}, {1}}));
  EXPECT_EQ((*sol)[0], (Mat{{-3}, {-1}}));
  for (const auto& r : lms.residuals(*sol)) EXPECT_TRUE(r.is_zero());
  EXPECT_THROW(lms.add_term(e1, x, Mat::identity(3), Mat::identity(1)), DimensionError);
}

TEST(GenSylvester, ClassicalSylvesterEquation) {
  // A X - X D = E with disjoint spectra {1, 2} and {3}.
  const Mat a{{1, 1}, {0, 2}}, d{{3}}, e{{1}, {1}};
  const auto x = solve_gen_sylvester(a, Mat::identity(1), Mat::identity(2), d, e);
  ASSERT_TRUE(x);
  EXPECT_EQ(a * *x - *x * d, e);
}

TEST(GenSylvester, ReportsInconsistency) {
  EXPECT_FALSE(solve_gen_sylvester(Mat(1, 1), Mat(1, 1), Mat(1, 1), Mat(1, 1), Mat{{1}}));
  EXPECT_THROW(solve_gen_sylvester(Mat(1, 2), Mat(1, 1), Mat(1, 1), Mat(1, 1), Mat{{1}}), DimensionError);
}

TEST(GenSylvester, SolvableUnderRankHypotheses) {
  std::mt19937_64 rng(fixtures::seed() + 40);
  std::size_t eligible_count = 0;
  for (int k = 0; k < 150; ++k) {
    bool eligible = false;
    std::string text;
    EXPECT_TRUE(properties::sylvester_instance(rng, eligible, text)) << text;
    eligible_count += eligible;
  }
  EXPECT_GT(eligible_count, 20u);
}

namespace {

TwoEqInstance random_two_eq(std::mt19937_64& rng, std::size_t m, std::size_t n, std::size_t p, std::size_t q) {
  return {fixtures::random_matrix(rng, m, n), fixtures::random_matrix(rng, m, n), fixtures::random_matrix(rng, p, q),
          fixtures::random_matrix(rng, p, q), fixtures::random_matrix(rng, m, q), fixtures::random_matrix(rng, m, q)};
}

bool residuals_zero(const TwoEqInstance& in, const TwoEqSolution& s) {
  const auto [r1, r2] = in.residuals(s.Y, s.Z);
  return r1.is_zero() && r2.is_zero();
}

}  // namespace

TEST(TwoEquations, ReductionRoutesAgreeWithDirectSolve) {
  std::mt19937_64 rng(fixtures::seed() + 41);
  std::size_t left_routes = 0, right_routes = 0;
  for (int k = 0; k < 200; ++k) {
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    std::size_t m = dim(rng), n = dim(rng), p = dim(rng), q = dim(rng);
    if (m > n) std::swap(m, n);
    if (q > p) std::swap(p, q);
    const TwoEqInstance in = random_two_eq(rng, m, n, p, q);
    const PolyMat ca = pencil(in.C, in.A), bd = pencil(in.B, in.D);
    const bool hyp = full_rank_all_finite(ca, m, RankOrientation::row) &&
                     full_rank_all_finite(bd, q, RankOrientation::column) && !simultaneous_rank_drop(ca, bd);
    const auto direct = solve_two_equations(in);
    if (hyp) {
      ASSERT_TRUE(direct);
    }
    if (direct) {
      EXPECT_TRUE(residuals_zero(in, *direct));
    }

    if (normal_rank(bd) == q) {
      const auto red = find_reduction(in, ReductionSide::left_inverse_of_input_pencil);
      ASSERT_TRUE(red);
      const auto x = solve_gen_sylvester(red->equation);
      if (x) {
        ++left_routes;
        EXPECT_TRUE(residuals_zero(in, red->back_substitute(in, *x)));
      }
      if (hyp) {
        EXPECT_TRUE(x);
      }
    }
    if (normal_rank(ca) == m) {
      const auto red = find_reduction(in, ReductionSide::right_inverse_of_state_pencil);
      ASSERT_TRUE(red);
      const auto x = solve_gen_sylvester(red->equation);
      if (x) {
        ++right_routes;
        EXPECT_TRUE(residuals_zero(in, red->back_substitute(in, *x)));
      }
      if (hyp) {
        EXPECT_TRUE(x);
      }
    }
  }
  EXPECT_GT(left_routes, 20u);
  EXPECT_GT(right_routes, 20u);
}

TEST(TwoEquations, ReductionFailsWithoutOneSidedInverse) {
  TwoEqInstance in{Mat{{1}}, Mat{{1}}, Mat{{0}}, Mat{{0}}, Mat{{1}}, Mat{{1}}};
  EXPECT_FALSE(find_reduction(in, ReductionSide::left_inverse_of_input_pencil));
  EXPECT_TRUE(find_reduction(in, ReductionSide::right_inverse_of_state_pencil));
}

TEST(TwoEquations, LambdaSearchOrder) {
  EXPECT_EQ(lambda_candidates(5), (std::vector<Rational>{0, 1, -1, 2, -2}));
}
