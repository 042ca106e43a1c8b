#include <latinc/core.hpp>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

namespace latinc {
namespace {

using testing::vec;

LatticeVector q(std::initializer_list<Scalar> xs) { return LatticeVector(xs); }

TEST(InnerProduct, Examples) {
  EXPECT_EQ(inner_product(vec({1, 0}), vec({0, 1})), 0);
  EXPECT_EQ(inner_product(vec({1, 1}), vec({1, -1})), 0);
  EXPECT_EQ(inner_product(q({Scalar(1, 2), 3}), q({2, Scalar(1, 3)})), 2);
}

TEST(InnerProduct, DimensionMismatchThrows) {
  EXPECT_THROW(inner_product(vec({1, 0}), vec({1, 0, 0})), DimensionMismatch);
}

TEST(NormSq, Examples) {
  EXPECT_EQ(norm_sq(vec({0, 0})), 0);
  EXPECT_EQ(norm_sq(vec({1, 1})), 2);
  EXPECT_EQ(norm_sq(q({Scalar(3, 2), 2})), Scalar(25, 4));
}

TEST(InnerProduct, SymmetricAndNormPositive) {
  testing::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    auto u = testing::random_vector(4, -9, 9, rng);
    auto v = testing::random_vector(4, -9, 9, rng);
    EXPECT_EQ(inner_product(u, v), inner_product(v, u));
    EXPECT_GE(norm_sq(u), 0);
    EXPECT_EQ(sgn(norm_sq(u)) == 0, u.is_zero());
  }
}

TEST(Scalar, CanonicalOnConstruction) {
  LatticeVector v(std::vector<Scalar>{Scalar(2, 4), Scalar(-6, 3)});
  EXPECT_EQ(v[0].get_num(), 1);
  EXPECT_EQ(v[0].get_den(), 2);
  EXPECT_EQ(v[1].get_den(), 1);
}

IntegerMatrix ints(std::initializer_list<std::initializer_list<long>> rows) {
  IntegerMatrix m;
  for (auto r : rows) {
    std::vector<Integer> row;
    for (long x : r) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  return m;
}

TEST(Hnf, Examples) {
  EXPECT_EQ(hnf(ints({{1, 0}, {0, 1}, {1, 1}}), 2), ints({{1, 0}, {0, 1}}));
  EXPECT_EQ(hnf(ints({{4}, {6}}), 1), ints({{2}}));
  // {(a, b) : a = b mod 2}; lower echelon with pivots 2 and 1.
  EXPECT_EQ(hnf(ints({{2, 0}, {1, 1}}), 2), ints({{2, 0}, {1, 1}}));
  EXPECT_EQ(hnf(ints({{1, 1}, {0, 2}}), 2), ints({{2, 0}, {1, 1}}));
}

TEST(Hnf, EmptyAndZeroInput) {
  EXPECT_TRUE(hnf({}, 3).empty());
  EXPECT_TRUE(hnf(ints({{0, 0}}), 2).empty());
}

TEST(Hnf, RankDeficient) {
  // Z(2,4) + Z(3,6) = Z(1,2): single row with pivot in the last column.
  EXPECT_EQ(hnf(ints({{2, 4}, {3, 6}}), 2), ints({{1, 2}}));
}

// Pivots move right row by row and are positive; entries of later rows in
// earlier pivot columns lie in [0, pivot).
void expect_hnf_shape(const IntegerMatrix& h) {
  std::vector<std::size_t> pivots;
  for (const auto& row : h) {
    std::size_t p = row.size();
    while (p-- > 0 && sgn(row[p]) == 0) {}
    ASSERT_LT(p, row.size());
    EXPECT_GT(sgn(row[p]), 0);
    if (!pivots.empty()) EXPECT_GT(p, pivots.back());
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      EXPECT_GE(sgn(row[pivots[k]]), 0);
      EXPECT_LT(row[pivots[k]], h[k][pivots[k]]);
    }
    pivots.push_back(p);
  }
}

TEST(Hnf, PermutationInvariantAndIdempotent) {
  testing::Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + t % 4;
    auto rows = testing::random_vectors(d, d + 3, -12, 12, rng);
    const auto h = rational_hnf(rows, d);
    IntegerMatrix hi = scaled_integer_rows(h, 1);
    expect_hnf_shape(hi);
    EXPECT_EQ(hnf(hi, d), hi);
    testing::shuffle(rows, rng);
    EXPECT_EQ(rational_hnf(rows, d), h);
  }
}

TEST(Hnf, RationalScaleIndependent) {
  std::vector<LatticeVector> a{q({Scalar(1, 2), 0}), q({0, Scalar(1, 3)})};
  auto h = rational_hnf(a, 2);
  EXPECT_EQ(h, (std::vector<LatticeVector>{q({Scalar(1, 2), 0}), q({0, Scalar(1, 3)})}));
  std::vector<LatticeVector> b{q({Scalar(1, 2), Scalar(1, 3)}), q({0, Scalar(1, 3)})};
  EXPECT_EQ(rational_hnf(b, 2), h);
}

TEST(SolveInSpan, Examples) {
  LatticeBasis z2(2, testing::identity_rows(2));
  EXPECT_EQ(solve_in_span(z2, vec({3, -5})), (std::vector<Scalar>{3, -5}));
  LatticeBasis diag(2, {vec({1, 1})});
  EXPECT_EQ(solve_in_span(diag, vec({2, 2})), (std::vector<Scalar>{2}));
  EXPECT_FALSE(solve_in_span(diag, vec({1, 0})).has_value());
}

TEST(SolveInSpan, EmptyBasis) {
  LatticeBasis empty(3);
  EXPECT_EQ(solve_in_span(empty, vec({0, 0, 0})), std::vector<Scalar>{});
  EXPECT_FALSE(solve_in_span(empty, vec({0, 1, 0})).has_value());
}

TEST(IsMember, Examples) {
  LatticeBasis z2(2, testing::identity_rows(2));
  EXPECT_TRUE(is_member(z2, vec({3, -5})));
  LatticeBasis checker(2, {vec({1, 1}), vec({1, -1})});
  EXPECT_TRUE(is_member(checker, vec({2, 0})));
  EXPECT_FALSE(is_member(checker, vec({1, 0})));
}

TEST(IsMember, SubgroupClosure) {
  testing::Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2 + t % 3;
    LatticeBasis b = testing::random_full_rank_basis(d, -4, 4, rng);
    std::uniform_int_distribution<long> coef(-3, 3);
    auto member = [&] {
      LatticeVector v(d);
      for (const auto& bi : b.vectors()) v.subtract_multiple(Scalar(coef(rng)), bi);
      return v;
    };
    const auto v = member();
    const auto w = member();
    ASSERT_TRUE(is_member(b, v));
    ASSERT_TRUE(is_member(b, w));
    EXPECT_TRUE(is_member(b, v + w));
    EXPECT_TRUE(is_member(b, -v));
    // A non-member plus a member stays outside.
    const auto x = testing::random_vector(d, -5, 5, rng);
    if (!is_member(b, x)) EXPECT_FALSE(is_member(b, x + v));
  }
}

TEST(VolumeSq, Examples) {
  EXPECT_EQ(volume_sq(LatticeBasis(2, testing::identity_rows(2))), 1);
  EXPECT_EQ(volume_sq(LatticeBasis(2, {vec({1, 1}), vec({1, -1})})), 4);
  EXPECT_EQ(volume_sq(testing::d4_basis()), 4);
  EXPECT_EQ(volume_sq(LatticeBasis(3)), 1);
}

TEST(VolumeSq, MatchesSquaredCoordinateDeterminant) {
  testing::Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = 1 + t % 5;
    LatticeBasis b = testing::random_full_rank_basis(d, -6, 6, rng);
    std::vector<LatticeVector> rows(b.vectors().begin(), b.vectors().end());
    const Scalar det = testing::cofactor_determinant(rows);
    EXPECT_EQ(volume_sq(b), det * det);
  }
}

TEST(Bareiss, IntegerAndRationalAgree) {
  IntegerMatrix m = ints({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  EXPECT_EQ(bareiss_determinant(m), 4);
  RationalMatrix r{{Scalar(1, 2), 1}, {1, Scalar(1, 3)}};
  EXPECT_EQ(bareiss_determinant(r), Scalar(-5, 6));
  EXPECT_EQ(bareiss_determinant(ints({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(bareiss_determinant(ints({{1, 2}, {2, 4}})), 0);
}

TEST(Rank, FractionFree) {
  EXPECT_EQ(rank_of(std::vector<LatticeVector>{vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 0, 1})}), 2u);
  EXPECT_EQ(rank_of(std::vector<LatticeVector>{vec({0, 0}), vec({0, 0})}), 0u);
  EXPECT_EQ(fraction_free_rank(ints({{0, 1, 2}, {0, 2, 4}, {1, 0, 0}})), 2u);
}

TEST(LatticeBasis, RejectsDependentVectors) {
  EXPECT_THROW(LatticeBasis(2, {vec({1, 2}), vec({2, 4})}), PreconditionError);
  EXPECT_THROW(LatticeBasis(2, {vec({1, 2, 3})}), DimensionMismatch);
}

TEST(LatticeBasis, GramMatchesInnerProducts) {
  LatticeBasis b = testing::d4_basis();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(b.gram()[i][j], inner_product(b[i], b[j]));
}

TEST(LatticeEqual, Examples) {
  using V = std::vector<LatticeVector>;
  EXPECT_TRUE(lattice_equal(V{vec({1, 0}), vec({0, 1})}, V{vec({1, 1}), vec({1, 0})}));
  EXPECT_FALSE(lattice_equal(V{vec({2, 0}), vec({0, 1})}, V{vec({1, 0}), vec({0, 1})}));
  EXPECT_TRUE(lattice_equal(V{vec({4}), vec({6})}, V{vec({2})}));
  EXPECT_THROW(lattice_equal(V{vec({1, 0})}, V{vec({1})}), DimensionMismatch);
}

TEST(GeneratingSet, DropsZerosAndChecksBound) {
  GeneratingSet s(2, {vec({1, 0}), vec({0, 0}), vec({0, 1})}, 1, true);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_THROW(GeneratingSet(2, {vec({2, 0})}, 1, true), PreconditionError);
  auto g = GeneratingSet::from_generators(2, {vec({1, 2}), vec({3, 0})});
  EXPECT_EQ(g.bound_sq(), 9);
  EXPECT_FALSE(g.complete());
}

}  // namespace
}  // namespace latinc
