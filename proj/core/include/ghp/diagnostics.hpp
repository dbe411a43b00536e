#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ghp/space.hpp"

namespace ghp {

/// Largest space four_point_defect enumerates exhaustively.
inline constexpr std::size_t kFourPointExhaustiveMax = 200;

struct FourPointResult {
    double defect = 0.0;
    bool exhaustive = true;
    std::size_t samples = 0;  // quadruples drawn when not exhaustive
};

/// max over 4-tuples of d12 + d34 - max(d13 + d24, d14 + d23), clipped at 0.
/// Above kFourPointExhaustiveMax points, `samples` random quadruples drawn from `seed`.
FourPointResult four_point(const Space& space, std::size_t samples = 2000000, std::uint64_t seed = 0);
double four_point_defect(const Space& space);

/// max over pairs (x, y) of min over z of |2d(x,z) - d(x,y)| + |2d(y,z) - d(x,y)|.
double midpoint_defect(const Space& space);

struct PrecompactReport {
    double sup_diameter = 0.0;
    std::vector<double> eps;
    std::vector<double> radii;
    std::vector<std::size_t> net_cardinals;             // per eps, maximized over the family
    std::vector<std::vector<std::size_t>> ball_cardinals;  // [r][eps], nets of the restrictions
    std::vector<double> sup_masses;                      // per r
    double sup_total_mass = 0.0;
    std::size_t family_size = 0;
    std::string note;
};

/// Throws InputError on an empty family or a nonpositive eps.
PrecompactReport precompactness_report(const std::vector<Space>& family, const std::vector<double>& eps,
                                       const std::vector<double>& radii);

}  // namespace ghp
