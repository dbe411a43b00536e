#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghp/error.hpp"
#include "ghp/matrix.hpp"

namespace ghp {

/// Sorted, duplicate-free point indices into a host Space.
using Subset = std::vector<std::size_t>;

/// A nonnegative mass vector over the points of a host Space.
struct Measure {
    std::vector<double> mass;

    double total() const;
    std::size_t size() const { return mass.size(); }
    friend bool operator==(const Measure&, const Measure&) = default;
};

/// Unchecked space data as read from disk or assembled by a caller.
struct RawSpace {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> distances;
    std::int64_t root = 0;
    std::vector<double> masses;
};

enum class Violation {
    DimensionMismatch,
    Empty,
    NonFinite,
    NegativeDistance,
    NonzeroDiagonal,
    Asymmetry,
    Indefinite,
    Triangle,
    NegativeMass,
    InvalidRoot,
};

const char* to_string(Violation v);

struct ViolationEntry {
    Violation kind;
    std::vector<std::size_t> indices;
    std::string message;
};

struct ValidationReport {
    std::vector<ViolationEntry> violations;

    bool ok() const { return violations.empty(); }
    bool has(Violation kind) const;
    std::string summary() const;
};

struct Validated;

/// Thrown by Space::from_raw when validation fails; carries the report.
class ValidationError : public InputError {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/**
 * A finite rooted weighted metric space: labeled points, a symmetric definite
 * distance matrix satisfying the triangle inequality, a root, and one
 * nonnegative mass per point.
 *
 * Instances are immutable once built; every constructor path validates.
 */
class Space {
public:
    /// Validates and builds; throws ValidationError listing every violated invariant.
    static Space from_raw(const RawSpace& raw, double triangle_rel_tol = 1e-9);

    /// Single point carrying the given mass.
    static Space singleton(double mass = 0.0, std::string label = "0");

    std::size_t size() const { return labels_.size(); }
    double d(std::size_t i, std::size_t j) const { return dist_(i, j); }
    const Matrix& distances() const { return dist_; }
    std::size_t root() const { return root_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Measure& measure() const { return mass_; }
    double mass(std::size_t i) const { return mass_.mass[i]; }
    double total_mass() const { return mass_.total(); }

    /// Largest distance from the root.
    double radius() const;

    RawSpace to_raw() const;

    friend bool operator==(const Space&, const Space&) = default;

private:
    friend Validated validate_space(const RawSpace&, double);
    friend Space induced_subspace(const Space&, const Subset&);

    Space() = default;

    std::vector<std::string> labels_;
    Matrix dist_;
    std::size_t root_ = 0;
    Measure mass_;
};

/// Outcome of validate_space: a Space iff every invariant holds, otherwise the full report.
struct Validated {
    std::optional<Space> space;
    ValidationReport report;
};

/// Checks every Space invariant. Triangle violations are judged against
/// triangle_rel_tol times the largest distance entry.
Validated validate_space(const RawSpace& candidate, double triangle_rel_tol = 1e-9);

/// Throws InputError unless indices are valid for the host and duplicate-free.
/// Returns the indices sorted.
Subset check_subset(const Space& host, Subset indices);

/// Throws InputError unless mu has one finite nonnegative entry per host point.
void check_measure(const Space& host, const Measure& mu);

/// All points of the space, in index order.
Subset all_points(const Space& space);

/// Strict epsilon-halo {i : min_{j in a} d(i, j) < eps}. The halo of the empty set is empty.
Subset halo(const Space& space, const Subset& a, double eps);

/// Induced sub-space on the given points. The root must be among them.
Space induced_subspace(const Space& space, const Subset& points);

/// Closed ball of radius r around the root, with its induced metric and restricted masses.
struct Restriction {
    Space space;
    Subset host_indices;  // host index of each point of `space`
};

Restriction restrict_with_map(const Space& space, double r);
Space restrict(const Space& space, double r);

/// Largest pairwise distance; 0 for singletons and for the empty subset.
double diameter(const Space& space);
double diameter(const Space& space, const Subset& subset);

/// Farthest-point eps-net containing the root (ties to the lowest index); result sorted.
Subset greedy_net(const Space& space, double eps);

/// Distinct root distances in increasing order (always starts with 0).
std::vector<double> root_distance_breakpoints(const Space& space);

}  // namespace ghp
