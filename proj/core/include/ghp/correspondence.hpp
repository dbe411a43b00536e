#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "ghp/matrix.hpp"
#include "ghp/space.hpp"

namespace ghp {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// A relation between the points of X and Y whose projections are onto and
/// which contains the root pair. `pairs` is sorted and duplicate-free.
struct Correspondence {
    std::vector<IndexPair> pairs;
    double distortion = 0.0;

    friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

/// max over pairs (i,j),(i',j') of |dX(i,i') - dY(j,j')|.
double distortion(const Space& x, const Space& y, const std::vector<IndexPair>& pairs);

/// Sorts, deduplicates, checks coverage and the root pair, and computes the distortion.
/// Throws InputError naming the first uncovered point or the missing root pair.
Correspondence make_correspondence(const Space& x, const Space& y, std::vector<IndexPair> pairs);

/// The correspondence {(i, i)} between a space and itself.
Correspondence identity_correspondence(const Space& x);

/**
 * Cross distances c(i, j) >= 0 between the points of two spaces. Together
 * with the two intrinsic metrics they define a pseudo-metric on X ⊔ Y: zero
 * cross entries are allowed.
 */
struct CrossMetric {
    std::shared_ptr<const Space> left;
    std::shared_ptr<const Space> right;
    Matrix cross;
};

/// Largest violation of the mixed triangle inequalities
///   |c(i,j) - c(i',j)| <= dX(i,i'),  |c(i,j) - c(i,j')| <= dY(j,j'),
///   dX(i,i') <= c(i,j) + c(i',j),    dY(j,j') <= c(i,j) + c(i,j'),
/// clipped at 0. Negative or non-finite entries report +infinity.
double cross_defect(const Space& x, const Space& y, const Matrix& c);

/// Validates (tolerance rel_tol times the largest entry of dX, dY, c, or 1) and wraps.
CrossMetric make_cross(std::shared_ptr<const Space> x, std::shared_ptr<const Space> y, Matrix c,
                       double rel_tol = 1e-9);

/// c(i,j) = min over (i',j') in r of dX(i,i') + dY(j,j'), plus half the distortion of r.
/// The unvalidated kernel; cross_from_correspondence validates the result.
Matrix correspondence_gluing(const Space& x, const Space& y, const Correspondence& r);

/// The min-plus part of correspondence_gluing, without the offset.
Matrix correspondence_base(const Space& x, const Space& y, const Correspondence& r);

/// Smallest t >= 0 such that base + t satisfies dX(i,i') <= c(i,j) + c(i',j) and its Y
/// counterpart. Never exceeds half the distortion.
double minimal_offset(const Space& x, const Space& y, const Matrix& base);

/// correspondence_base + minimal_offset: a valid gluing never worse than correspondence_gluing.
Matrix tight_gluing(const Space& x, const Space& y, const Correspondence& r);

CrossMetric cross_from_correspondence(std::shared_ptr<const Space> x, std::shared_ptr<const Space> y,
                                      const Correspondence& r);
CrossMetric cross_from_correspondence(const Space& x, const Space& y, const Correspondence& r);

/// Gluing of X into Y through an isometric, root-preserving embedding: c(i, j) = dY(embedding[i], j).
CrossMetric inclusion_cross(std::shared_ptr<const Space> x, std::shared_ptr<const Space> y,
                            const std::vector<std::size_t>& embedding, double rel_tol = 1e-9);

/// c13(i, k) = min over middle points j of c12(i, j) + c23(j, k).
/// Throws InputError when the two middle spaces differ.
CrossMetric compose_cross(const CrossMetric& c12, const CrossMetric& c23);

/// The three terms of the gluing objective and their sum.
struct ObjectiveTerms {
    double root = 0.0;
    double hausdorff = 0.0;
    double prokhorov = 0.0;
    double total() const { return root + hausdorff + prokhorov; }
};

/// Root-to-root distance + Hausdorff(X, Y) + Prokhorov(mu_X, mu_Y) inside the glued union.
ObjectiveTerms objective_terms(const Space& x, const Space& y, const Matrix& c);
double evaluate_objective(const CrossMetric& c);
double evaluate_objective(const Space& x, const Space& y, const CrossMetric& c);

}  // namespace ghp
