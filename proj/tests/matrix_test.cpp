#include "fixtures.hpp"
#include "oracles.hpp"

#include <daeforms/matrix.hpp>

#include <gtest/gtest.h>

using namespace daeforms;

TEST(Mat, LiteralAndAccess) {
  const Mat m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 2), Rational(6));
  EXPECT_EQ(m.transpose()(2, 1), Rational(6));
  EXPECT_THROW((Mat{{1, 2}, {3}}), DimensionError);
}

TEST(Mat, ArithmeticChecksShapes) {
  const Mat a{{1, 2}, {3, 4}};
  const Mat b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (Mat{{2, 1}, {4, 3}}));
  EXPECT_EQ(a + b, (Mat{{1, 3}, {4, 4}}));
  EXPECT_EQ(a - a, Mat(2, 2));
  EXPECT_EQ(Rational(1, 2) * a, fixtures::rat({{"1/2", "1"}, {"3/2", "2"}}));
  EXPECT_THROW(a * Mat(3, 1), DimensionError);
  EXPECT_THROW(a + Mat(2, 3), DimensionError);
}

TEST(Mat, ZeroDimensionsCompose) {
  const Mat a(3, 0), b(0, 2);
  EXPECT_EQ(a * b, Mat(3, 2));
  EXPECT_EQ(b.transpose().rows(), 2u);
  EXPECT_EQ(hcat(Mat(2, 0), Mat{{1}, {2}}), (Mat{{1}, {2}}));
  EXPECT_EQ(vcat(Mat(0, 2), Mat{{1, 2}}), (Mat{{1, 2}}));
  EXPECT_EQ(block_diag({Mat(0, 0), Mat{{1}}, Mat(1, 0)}), (Mat{{1}, {0}}));
  EXPECT_EQ(rank(Mat(0, 4)), 0u);
  EXPECT_TRUE(is_invertible(Mat(0, 0)));
}

TEST(Mat, BlocksAndSelections) {
  Mat m(3, 3);
  m.set_block(1, 1, Mat{{1, 2}, {3, 4}});
  EXPECT_EQ(m.block(1, 1, 2, 2), (Mat{{1, 2}, {3, 4}}));
  EXPECT_EQ(m.column(2), (Mat{{0}, {2}, {4}}));
  const std::vector<std::size_t> rows{2, 0};
  EXPECT_EQ(m.select_rows(rows), (Mat{{0, 3, 4}, {0, 0, 0}}));
  EXPECT_EQ(selector(4, 1, 2), (Mat{{0, 1, 0, 0}, {0, 0, 1, 0}}));
}

TEST(Mat, KroneckerVectorizationIdentity) {
  std::mt19937_64 rng(fixtures::seed());
  for (int k = 0; k < 20; ++k) {
    const Mat p = fixtures::random_matrix(rng, 2, 3), x = fixtures::random_matrix(rng, 3, 2),
              q = fixtures::random_matrix(rng, 2, 4);
    EXPECT_EQ(vec(p * x * q), kron(q.transpose(), p) * vec(x));
    EXPECT_EQ(unvec(vec(x), 0, 3, 2), x);
  }
}

TEST(Rref, RankMatchesMinorOracle) {
  std::mt19937_64 rng(fixtures::seed() + 1);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int k = 0; k < 150; ++k) {
    const Mat m = fixtures::random_matrix(rng, dim(rng), dim(rng), -1, 1);
    EXPECT_EQ(rank(m), oracle::minor_rank(m)) << m;
  }
}

TEST(Rref, IsReducedAndRowEquivalent) {
  const Mat m{{0, 2, 4}, {1, 1, 1}, {2, 4, 6}};
  const RrefResult r = rref(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivot_cols, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.reduced, (Mat{{1, 0, -1}, {0, 1, 2}, {0, 0, 0}}));
}

TEST(Solve, ParticularSolutionZerosFreeVariables) {
  const Mat a{{1, 1, 0}, {0, 0, 1}};
  const auto x = solve_right(a, Mat{{3}, {4}});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Mat{{3}, {0}, {4}}));
  EXPECT_FALSE(solve_right(Mat{{1, 1}, {1, 1}}, Mat{{1}, {2}}));
}

TEST(Solve, InversesAgreeWithDeterminantOracle) {
  std::mt19937_64 rng(fixtures::seed() + 2);
  for (int k = 0; k < 60; ++k) {
    const Mat m = fixtures::random_matrix(rng, 3, 3);
    const bool invertible = oracle::leibniz_det(m) != 0;
    EXPECT_EQ(is_invertible(m), invertible);
    if (invertible) {
      EXPECT_EQ(inverse(m) * m, Mat::identity(3));
    } else {
      EXPECT_THROW(inverse(m), std::domain_error);
    }
  }
}

TEST(Solve, OneSidedInverses) {
  const Mat tall{{1, 0}, {2, 1}, {0, 3}};
  const auto li = left_inverse(tall);
  ASSERT_TRUE(li);
  EXPECT_EQ(*li * tall, Mat::identity(2));
  const auto ri = right_inverse(tall.transpose());
  ASSERT_TRUE(ri);
  EXPECT_EQ(tall.transpose() * *ri, Mat::identity(2));
  EXPECT_FALSE(left_inverse(tall.transpose()));
  EXPECT_FALSE(right_inverse(tall));
}
