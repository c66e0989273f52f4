#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "freecairn/errors.hpp"
#include "freecairn/interval_checks.hpp"
#include "freecairn/repsplit.hpp"

using namespace freecairn;

namespace {

const IntervalSystem& sys() { return IntervalSystem::standard(); }

Interval lit(const char* s) { return sys().from_literal(parse_interval_literal(s)); }

std::vector<std::size_t> block_counts(const Decomposition& d) {
  std::vector<std::size_t> out;
  for (const auto& level : d.levels) out.push_back(level.blocks.size());
  return out;
}

std::vector<Eigen::Index> level_dims(const Decomposition& d) {
  std::vector<Eigen::Index> out;
  for (const auto& level : d.levels) out.push_back(level.tilde_E.dim());
  return out;
}

GradedCairn merged(const GradedCairn& c, const Interval& X, const Interval& Y) {
  const auto px = *c.position(X);
  const auto py = *c.position(Y);
  return c.with_block(X, join(c.block(px), c.block(py))).with_block(Y, Subspace(c.ambient_dim()));
}

}  // namespace

TEST(LevelSpace, Examples) {
  const auto c = build_graded(sys(), 3);
  EXPECT_TRUE(level_space(c, -1).is_trivial());
  EXPECT_EQ(level_space(c, 3).dim(), c.ambient_dim());
  EXPECT_EQ(level_space(c, 0).dim(), 6);
  EXPECT_THROW(level_space(c, -2), std::invalid_argument);
}

TEST(LevelSpace, Increasing) {
  const auto c = build_graded(sys(), 5, {}, 9);
  for (int n = 0; n <= 5; ++n) EXPECT_TRUE(contains(level_space(c, n), level_space(c, n - 1)));
}

TEST(ReducedBlock, SingletonIsItsBlock) {
  const auto c = build_graded(sys(), 3, {}, 4);
  const auto I = lit("b*I0");
  EXPECT_TRUE(equal(reduced_block(c, I), c.block(*c.position(I)), 1e-8));
}

TEST(ReducedBlock, GradedRecoversFreshBlocks) {
  const auto c = build_graded(sys(), 4, {}, 21);
  for (std::size_t i = 0; i < c.index().size(); ++i) {
    EXPECT_TRUE(equal(reduced_block(c, c.index()[i]), c.block(i), 1e-8)) << to_literal(c.index()[i]);
  }
}

TEST(ReducedBlock, CoordinateModelDegenerates) {
  const CoordinateCairn c(sys(), 3);
  EXPECT_TRUE(reduced_block(c, sys().base_interval(1)).is_trivial());
  EXPECT_TRUE(reduced_block(c, sys().base_interval(3)).is_trivial());
  EXPECT_EQ(reduced_block(c, lit("a*I0")).dim(), 1);
}

TEST(ReducedBlock, OutOfWindow) {
  const auto c = build_graded(sys(), 2);
  EXPECT_THROW(reduced_block(c, sys().base_interval(3)), OutOfWindowError);
  EXPECT_THROW(reduced_block(c, Interval{}), OutOfWindowError);
}

TEST(Decompose, WindowThree) {
  const auto d = decompose(build_graded(sys(), 3));
  EXPECT_EQ(block_counts(d), (std::vector<std::size_t>{6, 4, 2, 1}));
  const auto dims = level_dims(d);
  EXPECT_EQ(std::accumulate(dims.begin(), dims.end(), Eigen::Index{0}), 13);
}

TEST(Decompose, WindowZero) {
  const auto d = decompose(build_graded(sys(), 0));
  ASSERT_EQ(d.levels.size(), 1u);
  EXPECT_EQ(d.levels[0].blocks.size(), 1u);
}

TEST(Decompose, RotationKeepsDimensions) {
  const auto plain = decompose(build_graded(sys(), 4));
  const auto rotated = decompose(build_graded(sys(), 4, {}, 99), {}, 99);
  EXPECT_EQ(level_dims(plain), level_dims(rotated));
}

TEST(Decompose, BlockCountsMatchSubintervalRanks) {
  for (int N = 0; N <= 6; ++N) {
    const auto c = build_graded(sys(), N, {}, 5);
    const auto d = decompose(c);
    std::vector<std::size_t> expected(static_cast<std::size_t>(N + 1), 0);
    for (const auto& key : enumerate_subintervals_by_translates(sys(), N)) ++expected[static_cast<std::size_t>(key.rank)];
    EXPECT_EQ(block_counts(d), expected) << N;
    EXPECT_LE(d.worst_within_level, 1e-9);
    EXPECT_LE(d.worst_across_levels, 1e-9);
    EXPECT_LE(d.completeness_residual, 1e-8);
    EXPECT_LE(d.level_residual, 1e-8);
  }
}

TEST(Decompose, NonOrthogonalBlocksThrow) {
  const auto c = build_graded(sys(), 3);
  const auto X = lit("a*I0");
  const auto Y = lit("A*I0");
  const Matrix mixed = c.block(*c.position(X)).frame() + c.block(*c.position(Y)).frame();
  const auto bad = c.with_block(X, orthonormalize(mixed));
  try {
    decompose(bad);
    FAIL() << "expected DecompositionError";
  } catch (const DecompositionError& e) {
    EXPECT_NE(e.worst_offender().find("a*I0"), std::string::npos);
    EXPECT_GT(e.residual(), 0.1);
  }
}

TEST(Certify, WindowFourValid) {
  const auto c = build_graded(sys(), 4, {}, 13);
  const auto cert = certify_regular_multiple(c, decompose(c));
  EXPECT_TRUE(cert.valid);
  EXPECT_TRUE(cert.witnesses.empty());
  ASSERT_EQ(cert.levels.size(), 5u);
  for (const auto& lc : cert.levels) {
    EXPECT_EQ(lc.stabilizer, std::vector<Word>{Word{}});
    EXPECT_EQ(lc.reachable, lc.translates);
    EXPECT_LE(lc.worst_permutation_residual, 1e-8);
  }
  EXPECT_FALSE(cert.scope.empty());
}

TEST(Certify, MergedBlockIsInvalid) {
  const auto c = build_graded(sys(), 4);
  const auto bad = merged(c, sys().base_interval(1), lit("A*I1"));
  const auto cert = certify_regular_multiple(bad, decompose(bad));
  EXPECT_FALSE(cert.valid);
  ASSERT_FALSE(cert.witnesses.empty());
  EXPECT_NE(cert.witnesses.front().find("A*I1"), std::string::npos);
}

TEST(Displacement, Star) {
  const auto r = displacement_bound(1);
  EXPECT_NEAR(r.min_eig, 2.0, 1e-8);
  EXPECT_NEAR(r.threshold, 4.0 - 2.0 * std::sqrt(3.0), 1e-15);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.identity_error, 1e-12);
}

TEST(Displacement, SweepPasses) {
  for (int R = 0; R <= 7; ++R) {
    const auto r = displacement_bound(R);
    EXPECT_TRUE(r.pass) << R;
    EXPECT_LE(r.identity_error, 1e-10) << R;
  }
}
