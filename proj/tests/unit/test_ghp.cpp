#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ghp/ghp.hpp"
#include "ghp/generators.hpp"
#include "helpers.hpp"

using namespace ghp;
using ghp::test::line;

namespace {

const Space& two_point() {
    static const Space s = line({0, 1});
    return s;
}

}  // namespace

TEST(GhExact, Examples) {
    const auto x = line({0, 1, 3}, 2);
    EXPECT_EQ(gh_exact_small(x, x), 0.0);
    EXPECT_DOUBLE_EQ(gh_exact_small(two_point(), Space::singleton()), 0.5);
    EXPECT_DOUBLE_EQ(gh_exact_small(Space::singleton(), two_point()), 0.5);
    EXPECT_DOUBLE_EQ(gh_exact_small(two_point(), line({0, 3})), 1.0);
}

TEST(GhExact, RefusesBeyondBudget) {
    Rng rng(11);
    const auto x = random_space(rng, 10), y = random_space(rng, 10);
    EXPECT_THROW(gh_exact_small(x, y), BudgetExceeded);
    EXPECT_THROW(gh_exact_small(two_point(), line({0, 3}), 3.0), BudgetExceeded);
}

TEST(GhpLower, Examples) {
    const auto x = line({0, 1, 3}, 0, {1, 2, 3});
    EXPECT_EQ(ghp_lower(x, x), 0.0);
    EXPECT_DOUBLE_EQ(ghp_lower(Space::singleton(1.0), Space::singleton(3.0)), 2.0);
    EXPECT_DOUBLE_EQ(ghp_lower(two_point(), Space::singleton()), 1.0);
}

TEST(GhpLower, SegmentAgainstPoint) {
    // A diameter-gap bound would claim 2 here; the true value is 1.
    const auto seg = line({-1, 0, 1}, 1);
    EXPECT_DOUBLE_EQ(ghp_lower(seg, Space::singleton()), 1.0);
    const auto b = ghp_compact(seg, Space::singleton());
    EXPECT_DOUBLE_EQ(b.upper, 1.0);
    EXPECT_TRUE(b.certified);
}

TEST(GhpUpper, Examples) {
    const auto x = line({0, 1, 3}, 1, {1, 0, 2});
    const auto same = ghp_upper(x, x);
    EXPECT_EQ(same.value, 0.0);
    EXPECT_EQ(same.witness, identity_correspondence(x));
    EXPECT_DOUBLE_EQ(ghp_upper(two_point(), Space::singleton()).value, 1.0);
    const auto masses = ghp_upper(Space::singleton(1.0), Space::singleton(3.0));
    EXPECT_DOUBLE_EQ(masses.value, 2.0);
    EXPECT_EQ(masses.cross(0, 0), 0.0);
}

TEST(GhpUpper, SeedRequiredForLocalSearch) {
    Rng rng(12);
    const auto x = random_space(rng, 5), y = random_space(rng, 5);
    SearchConfig cfg;
    cfg.exhaustive_budget = 1.0;
    EXPECT_THROW(ghp_upper(x, y, cfg), InputError);
    cfg.seed = 3;
    cfg.restarts = 2;
    cfg.iterations = 50;
    const auto a = ghp_upper(x, y, cfg), b = ghp_upper(x, y, cfg);
    EXPECT_FALSE(a.exhaustive);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness, b.witness);
}

TEST(GhpCompact, Examples) {
    const auto x = line({0, 1, 3}, 0, {1, 1, 1});
    const auto same = ghp_compact(x, x);
    EXPECT_EQ(same.lower, 0.0);
    EXPECT_EQ(same.upper, 0.0);
    EXPECT_TRUE(same.certified);
    const auto tp = ghp_compact(two_point(), Space::singleton());
    EXPECT_DOUBLE_EQ(tp.lower, 1.0);
    EXPECT_DOUBLE_EQ(tp.upper, 1.0);
    EXPECT_TRUE(tp.certified);
}

TEST(Curve, OnePointMasses) {
    const auto curve = restriction_curve(Space::singleton(1.0), Space::singleton(1.5));
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_EQ(curve[0].r_lo, 0.0);
    EXPECT_TRUE(std::isinf(curve[0].r_hi));
    EXPECT_DOUBLE_EQ(curve[0].bound.lower, 0.5);
    EXPECT_DOUBLE_EQ(curve[0].bound.upper, 0.5);
    const auto e = ghp_extended(Space::singleton(1.0), Space::singleton(1.5));
    EXPECT_NEAR(e.lower, 0.5, 1e-12);
    EXPECT_NEAR(e.upper, 0.5, 1e-12);
}

TEST(Curve, ExtraPointBeyondRadius) {
    const auto x = line({0, 1, 2}, 0, {1, 1, 0}), y = line({0, 1}, 0, {1, 1});
    const auto curve = restriction_curve(x, y);
    ASSERT_EQ(curve.size(), 3u);
    EXPECT_EQ(curve[0].bound.upper, 0.0);
    EXPECT_EQ(curve[1].r_lo, 1.0);
    EXPECT_EQ(curve[1].bound.upper, 0.0);
    EXPECT_EQ(curve[2].r_lo, 2.0);
    EXPECT_GT(curve[2].bound.lower, 0.0);
    const auto e = integrate_curve(curve);
    EXPECT_LE(e.upper, std::exp(-2.0) + 1e-12);
    EXPECT_GT(e.lower, 0.0);
    const auto same = ghp_extended(x, x);
    EXPECT_EQ(same.lower, 0.0);
    EXPECT_EQ(same.upper, 0.0);
}

TEST(Curve, IntegrateClipsAtOne) {
    std::vector<CurveSegment> curve(2);
    curve[0] = {0.0, 1.0, {}};
    curve[0].bound.lower = 0.25;
    curve[0].bound.upper = 3.0;
    curve[1] = {1.0, std::numeric_limits<double>::infinity(), {}};
    curve[1].bound.lower = curve[1].bound.upper = 2.0;
    const auto e = integrate_curve(curve);
    EXPECT_NEAR(e.upper, 1.0, 1e-15);
    EXPECT_NEAR(e.lower, 0.25 * (1 - std::exp(-1.0)) + std::exp(-1.0), 1e-15);
}

TEST(RestrictPairs, RepairsCoverage) {
    const auto x = line({0, 1, 2}), y = line({0, 2});
    const auto rx = restrict_with_map(x, 1.0), ry = restrict_with_map(y, 1.0);
    const auto pairs = restrict_pairs({{0, 0}, {1, 1}, {2, 1}}, rx, ry);
    EXPECT_NO_THROW(make_correspondence(rx.space, ry.space, pairs));
}

class GhpProperties : public ::testing::TestWithParam<int> {};

TEST_P(GhpProperties, BoundsAreOrdered) {
    Rng rng(8000 + GetParam());
    const auto x = random_space(rng, 4), y = random_space(rng, 4);
    const auto b = ghp_compact(x, y);
    const double scale = certification_scale(x, y);
    EXPECT_LE(b.lower, b.upper + 1e-9 * scale);
    EXPECT_GE(b.lower, gh_exact_small(x, y) - 1e-12);
    EXPECT_GE(b.upper, gh_exact_small(x, y) - 1e-12);
    EXPECT_DOUBLE_EQ(ghp_lower(x, y), ghp_lower(y, x));
    const auto same = ghp_compact(x, x);
    EXPECT_EQ(same.upper, 0.0);
    EXPECT_TRUE(same.certified);
}

TEST_P(GhpProperties, NoCorrespondenceUndercutsLower) {
    Rng rng(9000 + GetParam());
    const auto x = random_space(rng, 4), y = random_space(rng, 5);
    const double lower = ghp_lower(x, y), scale = certification_scale(x, y);
    for (int k = 0; k < 10; ++k) {
        const auto r = make_correspondence(x, y, test::random_pairs(rng, x, y));
        EXPECT_GE(evaluate_objective(cross_from_correspondence(x, y, r)), lower - 1e-9 * scale);
        EXPECT_GE(objective_terms(x, y, tight_gluing(x, y, r)).total(), lower - 1e-9 * scale);
    }
}

TEST_P(GhpProperties, ExhaustiveUpperSymmetric) {
    Rng rng(9500 + GetParam());
    const auto x = random_space(rng, 3), y = random_space(rng, 4);
    const auto xy = ghp_upper(x, y), yx = ghp_upper(y, x);
    ASSERT_TRUE(xy.exhaustive);
    ASSERT_TRUE(yx.exhaustive);
    EXPECT_NEAR(xy.value, yx.value, 1e-9 * certification_scale(x, y));
}

TEST_P(GhpProperties, CurveIsRightContinuous) {
    Rng rng(9700 + GetParam());
    const auto x = random_space(rng, 4), y = random_space(rng, 3);
    const auto curve = restriction_curve(x, y);
    for (std::size_t k = 0; k < curve.size(); ++k) {
        const auto& s = curve[k];
        EXPECT_LT(s.r_lo, s.r_hi);
        if (k + 1 < curve.size()) EXPECT_EQ(s.r_hi, curve[k + 1].r_lo);
        const double mid = std::isinf(s.r_hi) ? s.r_lo + 1.0 : 0.5 * (s.r_lo + s.r_hi);
        EXPECT_EQ(restrict(x, mid), restrict(x, s.r_lo));
        EXPECT_EQ(restrict(y, mid), restrict(y, s.r_lo));
        EXPECT_LE(s.bound.lower, s.bound.upper + 1e-9 * certification_scale(x, y));
    }
    const auto e = integrate_curve(curve);
    EXPECT_LE(e.lower, e.upper + 1e-9);
    EXPECT_LE(e.upper, 1.0 + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, GhpProperties, ::testing::Range(0, 10));

TEST(GhpUpper, WedgeGluingBeatsCorrespondences) {
    // Every correspondence pairs both ends with the point, so its gluing costs 2.
    const auto seg = line({-1, 0, 1}, 1);
    const auto up = ghp_upper(seg, Space::singleton());
    EXPECT_TRUE(up.wedge);
    EXPECT_DOUBLE_EQ(up.value, 1.0);
    EXPECT_EQ(up.cross(0, 0), 1.0);
    EXPECT_EQ(up.cross(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(objective_terms(seg, Space::singleton(), tight_gluing(seg, Space::singleton(), up.witness)).total(),
                     2.0);
}
