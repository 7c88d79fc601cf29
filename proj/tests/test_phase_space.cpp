#include <gtest/gtest.h>

#include <set>

#include "dwf/phase_space.hpp"
#include "oracles.hpp"

using namespace dwf;

class FieldTest : public ::testing::TestWithParam<int> {};

TEST_P(FieldTest, AxiomsHold) {
    const auto f = GaloisField::of_order(GetParam());
    EXPECT_TRUE(field_axiom_violations(f).empty());
}

TEST_P(FieldTest, TablesMatchReference) {
    const int d = GetParam();
    const auto f = GaloisField::of_order(d);
    const auto ref = oracle::field(d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            EXPECT_EQ(f.add(x, y), ref.add[x][y]) << x << "+" << y;
            EXPECT_EQ(f.mul(x, y), ref.mul[x][y]) << x << "*" << y;
        }
}

TEST_P(FieldTest, InversesAndNegatives) {
    const auto f = GaloisField::of_order(GetParam());
    for (int x = 0; x < f.size(); ++x) {
        EXPECT_EQ(f.add(x, f.neg(x)), 0);
        if (x) EXPECT_EQ(f.mul(x, f.inv(x)), 1);
    }
}

INSTANTIATE_TEST_SUITE_P(Orders, FieldTest, ::testing::Values(2, 3, 4));

TEST(Field, Gf4OmegaSquaredIsOmegaPlusOne) {
    const auto f = GaloisField::of_order(4);
    EXPECT_EQ(f.mul(2, 2), 3);
    EXPECT_EQ(f.add(2, 1), 3);
    EXPECT_EQ(f.mul(2, 3), 1);
}

TEST(Field, RejectsNonPrimePowers) {
    EXPECT_THROW(GaloisField::of_order(6), ValidationError);
    EXPECT_THROW(GaloisField::of_order(1), ValidationError);
}

class GeometryTest : public ::testing::TestWithParam<int> {};

TEST_P(GeometryTest, LinesMatchBruteForce) {
    const int d = GetParam();
    const auto lines = enumerate_lines(GaloisField::of_order(d));
    std::set<oracle::LineSet> got;
    for (const auto& l : lines) {
        oracle::LineSet s;
        for (const auto& x : l.points) s.insert({x.q, x.p});
        got.insert(s);
    }
    EXPECT_EQ(int(lines.size()), d * (d + 1));
    EXPECT_EQ(got, oracle::brute_force_lines(d));
}

TEST_P(GeometryTest, StriationsPartitionAndAxiomsHold) {
    const int d = GetParam();
    const PhaseSpace space(d);
    const auto r = verify_geometry(space.striations(), d);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.striation_count, d + 1);
    EXPECT_EQ(r.line_count, d * (d + 1));
    EXPECT_TRUE(r.violations.empty());
}

TEST_P(GeometryTest, LineThroughIsUnique) {
    const int d = GetParam();
    const PhaseSpace space(d);
    for (int s = 0; s <= d; ++s)
        for (const auto& x : space.points()) {
            int hits = 0;
            for (const auto& l : space.striations()[s].lines) hits += l.contains(x);
            EXPECT_EQ(hits, 1);
            EXPECT_TRUE(space.striations()[s].lines[space.line_through(s, x)].contains(x));
        }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, GeometryTest, ::testing::Values(2, 3, 4));

TEST(Geometry, StriationOrder) {
    const PhaseSpace space(3);
    const auto& st = space.striations();
    EXPECT_EQ(st[0].lines[0].a, 1);
    EXPECT_EQ(st[0].lines[0].b, 0);
    EXPECT_EQ(st[1].lines[0].a, 0);
    EXPECT_EQ(st[1].lines[0].b, 1);
    // vertical line q = 0
    for (const auto& x : st[0].lines[0].points) EXPECT_EQ(x.q, 0);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(st[2].lines[c].c, c);
}

TEST(Geometry, DetectsBrokenStriation) {
    const PhaseSpace space(3);
    auto st = space.striations();
    std::swap(st[1].lines[0], st[2].lines[0]);
    const auto r = verify_geometry(st, 3);
    EXPECT_FALSE(r.passed());
    EXPECT_FALSE(r.violations.empty());
}

TEST(Geometry, PointsInTableOrder) {
    const auto pts = PhaseSpace(4).points();
    ASSERT_EQ(pts.size(), 16u);
    for (std::size_t k = 1; k < pts.size(); ++k) EXPECT_TRUE(table_order(pts[k - 1], pts[k]));
    EXPECT_EQ(pts[1].q, 1);
    EXPECT_EQ(pts[1].p, 0);
}
