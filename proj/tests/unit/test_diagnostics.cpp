#include <gtest/gtest.h>

#include "ghp/diagnostics.hpp"
#include "ghp/generators.hpp"
#include "ghp/tree_coding.hpp"
#include "helpers.hpp"

using namespace ghp;
using ghp::test::line;

namespace {

Space cycle4() {
    return test::from_matrix({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

Space tent_tree(double height) {
    SampledFunction f{uniform_grid(33, 2.0), {}};
    f.values = tent_values(f.grid, 0.0, 2.0, height);
    return code_tree(f).space;
}

}  // namespace

TEST(FourPoint, Examples) {
    EXPECT_EQ(four_point_defect(cycle4()), 2.0);
    EXPECT_EQ(four_point_defect(line({0, 1, 3})), 0.0);
    EXPECT_EQ(four_point_defect(line({0, 1, 3, 7, 8})), 0.0);
    EXPECT_LE(four_point_defect(tent_tree(1.0)), 1e-9);
    const auto r = four_point(cycle4());
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.samples, 0u);
}

TEST(FourPoint, SamplesLargeSpaces) {
    std::vector<double> coords(kFourPointExhaustiveMax + 5);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = 0.5 * double(i);
    const auto r = four_point(line(coords), 1000, 3);
    EXPECT_FALSE(r.exhaustive);
    EXPECT_EQ(r.samples, 1000u);
    EXPECT_EQ(r.defect, 0.0);
}

TEST(Midpoint, Examples) {
    EXPECT_EQ(midpoint_defect(Space::singleton()), 0.0);
    EXPECT_DOUBLE_EQ(midpoint_defect(line({0, 1})), 2.0);
    EXPECT_DOUBLE_EQ(midpoint_defect(line({0, 0.5, 1})), 1.0);
}

TEST(Midpoint, IgnoresRootAndMasses) {
    Rng rng(31);
    const auto x = random_space(rng, 7);
    auto raw = x.to_raw();
    raw.root = (raw.root + 3) % 7;
    std::swap(raw.masses[0], raw.masses[4]);
    EXPECT_EQ(midpoint_defect(x), midpoint_defect(Space::from_raw(raw)));
    EXPECT_EQ(four_point_defect(x), four_point_defect(Space::from_raw(raw)));
}

TEST(Precompact, SingletonFamily) {
    const auto rep = precompactness_report({Space::singleton(2.5)}, {0.1, 1.0}, {0.0, 3.0});
    EXPECT_EQ(rep.sup_diameter, 0.0);
    EXPECT_EQ(rep.net_cardinals, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(rep.ball_cardinals, (std::vector<std::vector<std::size_t>>{{1, 1}, {1, 1}}));
    EXPECT_EQ(rep.sup_masses, (std::vector<double>{2.5, 2.5}));
    EXPECT_EQ(rep.family_size, 1u);
    EXPECT_FALSE(rep.note.empty());
}

TEST(Precompact, TentFamily) {
    const std::vector<Space> fam{tent_tree(0.5), tent_tree(0.75), tent_tree(1.0)};
    const auto rep = precompactness_report(fam, {0.1, 0.25}, {0.5});
    EXPECT_NEAR(rep.sup_diameter, 1.0, 1e-12);
    EXPECT_GE(rep.net_cardinals[0], rep.net_cardinals[1]);
    EXPECT_LE(rep.net_cardinals[0], 11u);
}

TEST(Precompact, SupMasses) {
    const std::vector<Space> fam{Space::singleton(1), Space::singleton(10), Space::singleton(100)};
    const auto rep = precompactness_report(fam, {1.0}, {0.0, 1.0, 5.0});
    EXPECT_EQ(rep.sup_masses, (std::vector<double>{100, 100, 100}));
    EXPECT_EQ(rep.sup_total_mass, 100.0);
}

TEST(Precompact, Errors) {
    EXPECT_THROW(precompactness_report({}, {1.0}, {1.0}), InputError);
    EXPECT_THROW(precompactness_report({Space::singleton()}, {0.0}, {1.0}), InputError);
    EXPECT_THROW(precompactness_report({Space::singleton()}, {1.0}, {-1.0}), InputError);
}

TEST(Precompact, MonotoneUnderExtension) {
    Rng rng(41);
    std::vector<Space> fam;
    PrecompactReport prev;
    const std::vector<double> eps{0.5, 2.0}, radii{1.0, 4.0};
    for (int k = 0; k < 6; ++k) {
        fam.push_back(random_space(rng, 4 + k));
        const auto rep = precompactness_report(fam, eps, radii);
        if (k > 0) {
            EXPECT_GE(rep.sup_diameter, prev.sup_diameter);
            EXPECT_GE(rep.sup_total_mass, prev.sup_total_mass);
            for (std::size_t e = 0; e < eps.size(); ++e) EXPECT_GE(rep.net_cardinals[e], prev.net_cardinals[e]);
            for (std::size_t r = 0; r < radii.size(); ++r) {
                EXPECT_GE(rep.sup_masses[r], prev.sup_masses[r]);
                for (std::size_t e = 0; e < eps.size(); ++e)
                    EXPECT_GE(rep.ball_cardinals[r][e], prev.ball_cardinals[r][e]);
            }
        }
        prev = rep;
    }
}
