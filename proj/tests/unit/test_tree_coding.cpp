#include <gtest/gtest.h>

#include <cmath>

#include "ghp/diagnostics.hpp"
#include "ghp/generators.hpp"
#include "ghp/sparse_table.hpp"
#include "ghp/tree_coding.hpp"

using namespace ghp;

namespace {

SampledFunction tent(std::size_t samples, double length = 2.0, double height = 1.0) {
    SampledFunction f;
    f.grid = uniform_grid(samples, length);
    f.values = tent_values(f.grid, 0.0, length, height);
    return f;
}

SampledFunction scaled(SampledFunction f, double k) {
    for (auto& v : f.values) v *= k;
    return f;
}

}  // namespace

TEST(Sigma, Examples) {
    SampledFunction zero{uniform_grid(5, 1.0), std::vector<double>(5, 0.0)};
    EXPECT_EQ(sigma(zero), 0.0);
    EXPECT_EQ(sigma(tent(9)), 2.0);
    SampledFunction f{uniform_grid(21, 2.0), std::vector<double>(21, 0.0)};
    for (std::size_t i = 1; i < 10; ++i) f.values[i] = 0.3;
    EXPECT_DOUBLE_EQ(sigma(f), 1.0);
}

TEST(CheckFunction, RejectsBrokenInput) {
    EXPECT_THROW(check_function({{0, 1}, {0}}), InputError);
    EXPECT_THROW(check_function({{0, 1, 1}, {0, 1, 0}}), InputError);
    EXPECT_THROW(check_function({{0, 1, 2}, {0, -1, 0}}), InputError);
    EXPECT_THROW(check_function({{0, 1, 2}, {0, 1, 1}}), InputError);
    EXPECT_THROW(check_function({{0.5, 1, 2}, {0, 1, 0}}), InputError);
    EXPECT_NO_THROW(check_function(tent(5)));
}

TEST(TreeDistance, TentExamples) {
    const auto f = tent(9);  // step 0.25
    EXPECT_EQ(tree_distance(f, 3, 3), 0.0);
    EXPECT_DOUBLE_EQ(tree_distance(f, 1, 7), 0.0);
    EXPECT_DOUBLE_EQ(tree_distance(f, 1, 4), 0.75);
    const ExcursionMetric d(f);
    EXPECT_DOUBLE_EQ(d(1, 4), 0.75);
    EXPECT_DOUBLE_EQ(d(4, 1), 0.75);
    EXPECT_THROW(tree_distance(f, 0, 9), InputError);
    EXPECT_THROW(d(9, 0), InputError);
}

TEST(SparseTable, MatchesLinearScan) {
    Rng rng(21);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 100u}) {
        std::vector<double> v(n);
        for (auto& x : v) x = u(rng);
        const SparseTable<double> t{std::span<const double>(v)};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double ref = *std::min_element(v.begin() + i, v.begin() + j + 1);
                EXPECT_EQ(t.min(i, j), ref);
                EXPECT_EQ(t.min(j, i), ref);
            }
        EXPECT_THROW(t.min(0, n), std::out_of_range);
    }
}

TEST(CodeTree, ZeroFunction) {
    const auto t = code_tree({uniform_grid(6, 1.0), std::vector<double>(6, 0.0)});
    EXPECT_EQ(t.space.size(), 1u);
    EXPECT_EQ(t.space.total_mass(), 0.0);
}

TEST(CodeTree, TentIsSegment) {
    const auto f = tent(65);
    const auto t = code_tree(f);
    const double h = max_step(f);
    EXPECT_NEAR(diameter(t.space), 1.0, h);
    EXPECT_NEAR(t.space.total_mass(), sigma(f), 1e-12);
    // Mirror times share a point: only the up-slope and the apex survive.
    EXPECT_EQ(t.space.size(), 33u);
    EXPECT_EQ(t.projection[8], t.projection[56]);
    EXPECT_EQ(t.space.root(), 0u);
    EXPECT_EQ(t.space.labels()[1], "0.03125");
}

TEST(CodeTree, DoubleTentHasTwoBranches) {
    SampledFunction f;
    f.grid = uniform_grid(41, 4.0);
    f.values = tent_values(f.grid, 0.0, 2.0, 1.0);
    const auto second = tent_values(f.grid, 2.0, 2.0, 1.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += second[i];
    const auto t = code_tree(f);
    EXPECT_NEAR(diameter(t.space), 2.0, 1e-12);
    EXPECT_NEAR(t.space.radius(), 1.0, 1e-12);
    EXPECT_NEAR(t.space.total_mass(), 4.0, 1e-12);
    EXPECT_EQ(t.projection[0], t.projection[20]);
    EXPECT_EQ(t.projection[40], t.space.root());
}

TEST(CodeTree, IndicesPastSigmaGoToRoot) {
    SampledFunction f{uniform_grid(9, 2.0), {0, 0.5, 0.5, 0, 0, 0, 0, 0, 0}};
    const auto t = code_tree(f);
    EXPECT_DOUBLE_EQ(sigma(f), 0.75);
    for (std::size_t i = 3; i < 9; ++i) EXPECT_EQ(t.projection[i], t.space.root());
    EXPECT_DOUBLE_EQ(t.space.total_mass(), 0.75);
}

class CodedTreeProperties : public ::testing::TestWithParam<int> {};

TEST_P(CodedTreeProperties, Invariants) {
    Rng rng(400 + GetParam());
    const auto f = random_excursion(rng, 60, 8);
    const auto t = code_tree(f);
    const double scale = std::max(1.0, diameter(t.space));
    for (std::size_t a = 0; a < t.space.size(); ++a) {
        const std::size_t ia = t.representative_index[a];
        EXPECT_EQ(t.space.d(t.space.root(), a), f.values[ia]);
        for (std::size_t b = a + 1; b < t.space.size(); ++b)
            EXPECT_GT(tree_distance(f, ia, t.representative_index[b]), t.quotient_tolerance);
    }
    EXPECT_NEAR(t.space.total_mass(), sigma(f), 1e-12);
    EXPECT_LE(four_point_defect(t.space), 1e-9 * scale);
    EXPECT_LE(midpoint_defect(t.space), 2.0 * max_slope(f) * max_step(f) + 1e-9 * scale);
}

TEST_P(CodedTreeProperties, Prop33Holds) {
    Rng rng(500 + GetParam());
    const auto f = random_excursion(rng, 40, 6);
    const auto g = perturbed_excursion(rng, f, 0.05, 5);
    const auto rep = prop33_certificate(f, g);
    EXPECT_TRUE(rep.ok) << rep.ub << " vs " << rep.rhs << " + " << rep.slack;
}

INSTANTIATE_TEST_SUITE_P(Seeds, CodedTreeProperties, ::testing::Range(0, 10));

TEST(TimeCorrespondence, IdentityHasZeroDistortion) {
    const auto t = code_tree(tent(33));
    const auto r = time_correspondence(t, t);
    EXPECT_EQ(r.distortion, 0.0);
    EXPECT_EQ(r, identity_correspondence(t.space));
}

TEST(TimeCorrespondence, ScaledTent) {
    const auto f = tent(33), g = scaled(f, 1.2);
    const auto r = time_correspondence(code_tree(f), code_tree(g));
    EXPECT_LE(r.distortion, 0.8 + 8.0 * max_step(f) * max_slope(g));
    EXPECT_THROW(time_correspondence(code_tree(f), code_tree(tent(17))), InputError);
}

TEST(TimeCorrespondence, ShiftedCopy) {
    SampledFunction f{uniform_grid(17, 4.0), {}}, g{f.grid, {}};
    f.values = tent_values(f.grid, 0.0, 1.0, 0.5);
    g.values = tent_values(g.grid, 2.0, 1.0, 0.5);
    const auto tf = code_tree(f), tg = code_tree(g);
    const auto r = time_correspondence(tf, tg);
    EXPECT_TRUE(std::isfinite(r.distortion));
    EXPECT_TRUE(std::binary_search(r.pairs.begin(), r.pairs.end(), IndexPair{tf.space.root(), tg.space.root()}));
}

TEST(CommonRefinement, MergesGrids) {
    SampledFunction f{{0, 1, 2}, {0, 1, 0}}, g{{0, 0.5, 1.5}, {0, 2, 0}};
    const auto [rf, rg] = common_refinement(f, g);
    EXPECT_EQ(rf.grid, (std::vector<double>{0, 0.5, 1, 1.5, 2}));
    EXPECT_EQ(rf.values, (std::vector<double>{0, 0.5, 1, 0.5, 0}));
    EXPECT_EQ(rg.values, (std::vector<double>{0, 2, 1, 0, 0}));
}

TEST(Prop33, Examples) {
    const auto f = tent(33);
    const auto same = prop33_certificate(f, f);
    EXPECT_EQ(same.ub, 0.0);
    EXPECT_EQ(same.rhs, 0.0);
    EXPECT_TRUE(same.ok);
    const auto rep = prop33_certificate(f, scaled(f, 1.2));
    EXPECT_NEAR(rep.sup_diff, 0.2, 1e-12);
    EXPECT_NEAR(rep.rhs, 1.2, 1e-12);
    EXPECT_LE(rep.ub, 1.2 + rep.slack);
    EXPECT_TRUE(rep.ok);
}
