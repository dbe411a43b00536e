#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ghp/correspondence.hpp"
#include "ghp/space.hpp"

namespace ghp {

struct SearchConfig {
    /// Required whenever local search runs (restarts > 0, iterations > 0 and the
    /// exhaustive budget is too small for the instance).
    std::optional<std::uint64_t> seed;
    /// gh_exact_small refuses when |Y|^|X| * |X|^|Y| exceeds this.
    double gh_budget = 1e7;
    /// ghp_upper enumerates every union of two root-preserving mappings when
    /// |Y|^(|X|-1) * |X|^(|Y|-1) is at most this. Each evaluation runs max-flows.
    double exhaustive_budget = 2e4;
    std::size_t restarts = 64;
    std::size_t iterations = 2000;
    /// Extra starting correspondences, as pair lists on the two input spaces.
    std::vector<std::vector<IndexPair>> seeds;
    /// Certification: upper - lower <= certify_rel * max(diameters, total masses, 1).
    double certify_rel = 1e-6;
    /// Work units (domain entries scanned) for the rooted lower-bound search.
    double lower_work_budget = 5e6;
};

/// Largest point-pair count n*m for which the branch-and-bound searches precompute pair weights.
inline constexpr std::size_t kPairSearchMaxPairs = 400;

/// Exact Gromov-Hausdorff distance of the unrooted, unweighted spaces: half the
/// minimal distortion over correspondences. Throws BudgetExceeded when
/// |Y|^|X| * |X|^|Y| > budget.
double gh_exact_small(const Space& x, const Space& y, double budget = 1e7);

/**
 * Min over correspondences R containing the root pair of the largest pair
 * weight, where two pairs weigh |dX - dY| when one of them is the root pair
 * and |dX - dY| / 2 otherwise. Any gluing with root distance a and Hausdorff
 * distance h yields such an R of value <= a + h, so this bounds the first two
 * GHP terms from below.
 */
struct RootedBound {
    double value = 0.0;
    bool exact = false;
    std::optional<std::vector<IndexPair>> witness;
};

RootedBound rooted_distortion_bound(const Space& x, const Space& y, double work_budget = 5e6);

/// max(rooted bound + |total mass gap|, gh_exact_small when within cfg.gh_budget).
double ghp_lower(const Space& x, const Space& y, const SearchConfig& cfg = {});

struct UpperResult {
    double value = 0.0;
    Correspondence witness;
    Matrix cross;
    bool exhaustive = false;
    std::size_t evaluations = 0;
    /// The root wedge gluing beat every correspondence; `cross` is that gluing and
    /// `witness` is only the best correspondence found.
    bool wedge = false;
};

/// Best objective over the searched correspondences (always at least the seeds)
/// and the wedge gluing that identifies the two roots.
UpperResult ghp_upper(const Space& x, const Space& y, const SearchConfig& cfg = {});

struct GhpBound {
    double lower = 0.0;
    double upper = 0.0;
    bool certified = false;
    Correspondence witness;
    Matrix cross;
    bool wedge = false;  // see UpperResult::wedge
};

/// max(diameters, total masses, 1).
double certification_scale(const Space& x, const Space& y);

GhpBound ghp_compact(const Space& x, const Space& y, const SearchConfig& cfg = {});

/// One piece [r_lo, r_hi) of the restriction curve; the last piece has r_hi = +inf.
struct CurveSegment {
    double r_lo = 0.0;
    double r_hi = 0.0;
    GhpBound bound;
};

/// cfg.seeds are given on the full spaces and carried into every restriction.
std::vector<CurveSegment> restriction_curve(const Space& x, const Space& y, const SearchConfig& cfg = {});

/// Seed pairs translated into the closed balls of radius r; uncovered points get
/// the partner with the closest root distance.
std::vector<IndexPair> restrict_pairs(const std::vector<IndexPair>& pairs, const Restriction& rx,
                                      const Restriction& ry);

struct ExtendedBound {
    double lower = 0.0;
    double upper = 0.0;
};

/// Sum over pieces of (e^{-r_lo} - e^{-r_hi}) * min(1, bound), separately for both ends.
ExtendedBound integrate_curve(const std::vector<CurveSegment>& curve);

ExtendedBound ghp_extended(const Space& x, const Space& y, const SearchConfig& cfg = {});

}  // namespace ghp
