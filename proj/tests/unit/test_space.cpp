#include <gtest/gtest.h>

#include <random>

#include "ghp/generators.hpp"
#include "ghp/space.hpp"
#include "helpers.hpp"

using namespace ghp;
using ghp::test::line;

TEST(ValidateSpace, SinglePointIsValid) {
    RawSpace raw{{"a"}, {{0.0}}, 0, {1.0}};
    const auto v = validate_space(raw);
    ASSERT_TRUE(v.space.has_value());
    EXPECT_EQ(v.space->size(), 1u);
    EXPECT_DOUBLE_EQ(v.space->total_mass(), 1.0);
}

TEST(ValidateSpace, LineIsValid) {
    const auto x = line({0, 1, 3});
    EXPECT_DOUBLE_EQ(x.d(0, 2), 3.0);
}

TEST(ValidateSpace, TriangleViolationNamesTriple) {
    RawSpace raw{{"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, 0, {0, 0, 0}};
    const auto v = validate_space(raw);
    EXPECT_FALSE(v.space.has_value());
    ASSERT_TRUE(v.report.has(Violation::Triangle));
    bool found = false;
    for (const auto& e : v.report.violations)
        if (e.kind == Violation::Triangle && e.indices == std::vector<std::size_t>{0, 1, 2}) found = true;
    EXPECT_TRUE(found) << v.report.summary();
}

TEST(ValidateSpace, ReportsEveryKindDistinctly) {
    RawSpace raw{{"a", "b"}, {{0, 1}, {2, 0}}, 5, {-1, 0}};
    const auto v = validate_space(raw);
    EXPECT_TRUE(v.report.has(Violation::Asymmetry));
    EXPECT_TRUE(v.report.has(Violation::NegativeMass));
    EXPECT_TRUE(v.report.has(Violation::InvalidRoot));
    for (const auto& e : v.report.violations)
        if (e.kind == Violation::Asymmetry) EXPECT_EQ(e.indices, (std::vector<std::size_t>{0, 1}));

    RawSpace ragged{{"a", "b"}, {{0, 1}, {1}}, 0, {0, 0}};
    EXPECT_TRUE(validate_space(ragged).report.has(Violation::DimensionMismatch));
    RawSpace twins{{"a", "b"}, {{0, 0}, {0, 0}}, 0, {0, 0}};
    EXPECT_TRUE(validate_space(twins).report.has(Violation::Indefinite));
    EXPECT_THROW(Space::from_raw(twins), ValidationError);
}

TEST(Halo, StrictInequality) {
    const auto x = line({0, 1, 3});
    EXPECT_EQ(halo(x, {0}, 1.0), (Subset{0}));
    EXPECT_EQ(halo(x, {0}, 1.5), (Subset{0, 1}));
    EXPECT_EQ(halo(x, {0, 1, 2}, 0.01), (Subset{0, 1, 2}));
    EXPECT_TRUE(halo(x, {}, 1.0).empty());
    EXPECT_THROW(halo(x, {0}, 0.0), InputError);
}

TEST(Restrict, ClosedBall) {
    const auto x = line({0, 1, 2}, 0, {1, 1, 1});
    const auto r1 = restrict(x, 1.0);
    EXPECT_EQ(r1.size(), 2u);
    EXPECT_EQ(r1.measure().mass, (std::vector<double>{1, 1}));
    EXPECT_EQ(restrict(x, 2.0), x);
    EXPECT_EQ(restrict(x, 10.0), x);
    const auto r0 = restrict(x, 0.0);
    EXPECT_EQ(r0.size(), 1u);
    EXPECT_DOUBLE_EQ(r0.total_mass(), 1.0);
    EXPECT_THROW(restrict(x, -1.0), InputError);
}

TEST(Diameter, Examples) {
    EXPECT_EQ(diameter(Space::singleton()), 0.0);
    const auto x = line({0, 1, 3});
    EXPECT_EQ(diameter(x), 3.0);
    EXPECT_EQ(diameter(x, {1, 2}), 2.0);
    EXPECT_EQ(diameter(x, {}), 0.0);
}

TEST(GreedyNet, Examples) {
    const auto x = line({0, 1, 2, 3});
    EXPECT_EQ(greedy_net(x, 1.1), (Subset{0, 3}));
    EXPECT_EQ(greedy_net(x, 4.0), (Subset{0}));
    EXPECT_EQ(greedy_net(x, 0.5), (Subset{0, 1, 2, 3}));
    EXPECT_THROW(greedy_net(x, 0.0), InputError);
}

TEST(Subsets, Errors) {
    const auto x = line({0, 1, 3});
    EXPECT_THROW(check_subset(x, {1, 1}), InputError);
    EXPECT_THROW(check_subset(x, {7}), InputError);
    EXPECT_EQ(check_subset(x, {2, 0}), (Subset{0, 2}));
    EXPECT_THROW(induced_subspace(x, {1, 2}), InputError);
    EXPECT_THROW(check_measure(x, Measure{{1, 2}}), InputError);
    EXPECT_THROW(check_measure(x, Measure{{1, -2, 0}}), InputError);
}

TEST(Breakpoints, SortedDistinctRootDistances) {
    const auto x = line({0, 1, -1, 3});
    EXPECT_EQ(root_distance_breakpoints(x), (std::vector<double>{0, 1, 3}));
}

class SpaceProperties : public ::testing::TestWithParam<int> {};

TEST_P(SpaceProperties, RestrictComposes) {
    Rng rng(100 + GetParam());
    const auto x = random_space(rng, 9);
    std::uniform_real_distribution<double> u(0.0, 12.0);
    for (int k = 0; k < 20; ++k) {
        const double r = u(rng), s = u(rng);
        EXPECT_EQ(restrict(restrict(x, r), s), restrict(x, std::min(r, s)));
        EXPECT_LE(diameter(restrict(x, r)), 2.0 * r + 1e-12);
    }
}

TEST_P(SpaceProperties, HaloMonotone) {
    Rng rng(200 + GetParam());
    const auto x = random_space(rng, 10);
    std::uniform_real_distribution<double> u(0.01, 8.0);
    for (int k = 0; k < 20; ++k) {
        const Subset a = random_subset(rng, x.size());
        Subset b = a;
        for (auto i : random_subset(rng, x.size())) b.push_back(i);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        double e1 = u(rng), e2 = u(rng);
        if (e1 > e2) std::swap(e1, e2);
        EXPECT_TRUE(test::is_subset(a, halo(x, a, e1)));
        EXPECT_TRUE(test::is_subset(halo(x, a, e1), halo(x, a, e2)));
        EXPECT_TRUE(test::is_subset(halo(x, a, e1), halo(x, b, e1)));
    }
}

TEST_P(SpaceProperties, GreedyNetCovers) {
    Rng rng(300 + GetParam());
    const auto x = random_space(rng, 12);
    for (double eps : {0.05, 0.5, 1.0, 2.5, 5.0, 20.0}) {
        const Subset net = greedy_net(x, eps);
        EXPECT_TRUE(std::binary_search(net.begin(), net.end(), x.root()));
        EXPECT_EQ(halo(x, net, eps), all_points(x));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SpaceProperties, ::testing::Range(0, 8));
