#include <gtest/gtest.h>

#include "dwf/mub.hpp"

using namespace dwf;

class MubTest : public ::testing::TestWithParam<int> {};

TEST_P(MubTest, UnbiasedAfterSubstitution) {
    const int d = GetParam();
    const auto r = check_unbiased(mub_set(d));
    EXPECT_TRUE(r.passed(1e-12)) << r.max_unbiased_deviation;
    EXPECT_EQ(r.cross_pairs, d * d * d * (d + 1) / 2);
}

TEST_P(MubTest, CompletenessPerBasis) {
    const int d = GetParam();
    const auto m = mub_set(d);
    ASSERT_EQ(int(m.bases.size()), d + 1);
    for (int b = 0; b <= d; ++b) {
        Matrix s = Matrix::Zero(d, d);
        for (int j = 0; j < d; ++j) s += m.projector(b, j);
        EXPECT_LT(max_abs(s - identity(d)), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, MubTest, ::testing::Values(2, 3, 4));

TEST(Mub, PrintedQubitAndQutritTablesNeedNoChange) {
    EXPECT_TRUE(mub_set(2).substitutions.empty());
    EXPECT_TRUE(mub_set(3).substitutions.empty());
    EXPECT_TRUE(check_unbiased(mub_set_printed(3)).passed());
}

TEST(Mub, PrintedTwoQubitTableHasOneBadVector) {
    const auto printed = check_unbiased(mub_set_printed(4));
    EXPECT_FALSE(printed.passed());
    const auto m = mub_set(4);
    ASSERT_EQ(m.substitutions.size(), 1u);
    const auto& s = m.substitutions.front();
    EXPECT_EQ(s.basis, 4);
    EXPECT_EQ(s.vector, 2);
    const Complex i(0, 1);
    Vector want(4);
    want << 0.5, -0.5 * i, -0.5, -0.5 * i;
    EXPECT_LT((s.replacement - want).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(s.printed_max_overlap, 0.125, 1e-12);
}

TEST(Mub, CorruptionIsNamed) {
    auto m = mub_set(3);
    m.bases[2][1](0) *= Complex(0, 1);
    m.bases[2][1](1) *= -1.0;
    const auto r = check_unbiased(m);
    EXPECT_FALSE(r.passed());
    ASSERT_FALSE(r.violations.empty());
    EXPECT_NE(r.violations.front().find("basis 3 vector 2"), std::string::npos);
}

TEST(Mub, OnlyPrimePowerDimensionsUpToFour) {
    EXPECT_THROW(mub_set(5), ValidationError);
    EXPECT_THROW(mub_set(6), ValidationError);
}
