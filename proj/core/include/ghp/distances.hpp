#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ghp/matrix.hpp"
#include "ghp/space.hpp"

namespace ghp {

/// Largest point count prokhorov_bruteforce accepts (2^n subset enumeration).
inline constexpr std::size_t kBruteForceMaxPoints = 12;

/// Which inequality a Prokhorov witness violates.
enum class Direction { MuToNu, NuToMu };

struct ProkhorovResult {
    double value = 0.0;
    /// Subset A whose constraint binds at the returned value (absent when the value is 0).
    std::optional<Subset> witness;
    Direction witness_direction = Direction::MuToNu;
    /// Candidate epsilon values: 0 and every distinct distance between the two supports.
    std::vector<double> breakpoints;
};

struct FeasibilityResult {
    bool feasible = true;
    /// max_A mu(A) - nu(A^eps), clipped at 0; and the symmetric quantity.
    double violation_mu_nu = 0.0;
    double violation_nu_mu = 0.0;
    /// On infeasibility: the subset A maximizing the violated direction's deficit.
    std::optional<Subset> witness;
    Direction witness_direction = Direction::MuToNu;
};

/// Hausdorff distance between two nonempty subsets of one space (infimum value).
double hausdorff(const Space& space, const Subset& a, const Subset& b);

/// Decides mu(A) <= nu(A^eps) + eps and nu(A) <= mu(A^eps) + eps for every subset A,
/// via one max-flow per direction (deficiency form of Hall's theorem).
FeasibilityResult prokhorov_feasible(const Space& space, const Measure& mu, const Measure& nu, double eps);

/// Exact Prokhorov distance by interval decomposition of epsilon and max-flow.
ProkhorovResult prokhorov_exact(const Space& space, const Measure& mu, const Measure& nu);

/// Reference value by enumerating every subset on every epsilon interval. At most 12 points.
double prokhorov_bruteforce(const Space& space, const Measure& mu, const Measure& nu);

/// Integral over r of e^{-r} (1 ^ d_P(mu^(r), nu^(r))) evaluated piecewise in closed form.
double generalized_prokhorov(const Space& space, const Measure& mu, const Measure& nu);

/**
 * Prokhorov distance between a measure on the rows and a measure on the
 * columns of a cross-distance matrix, as happens on a glued disjoint union
 * X ⊔ Y where only X-to-Y distances can move mass. Zero entries are allowed
 * (pseudo-metric gluings); the infimum is returned.
 *
 * This is the engine behind prokhorov_exact and the GHP objective.
 */
class BipartiteProkhorov {
public:
    BipartiteProkhorov(const Matrix& cost, std::span<const double> row_mass, std::span<const double> col_mass,
                       double slack = 1e-12);

    struct Deficit {
        double row_to_col = 0.0;  // max_A rows(A) - cols(N(A)), clipped at 0
        double col_to_row = 0.0;
        std::vector<std::size_t> row_witness;  // row indices (original numbering)
        std::vector<std::size_t> col_witness;  // column indices (original numbering)
        double worst() const { return row_to_col > col_to_row ? row_to_col : col_to_row; }
    };

    /// Deficits when row i and column j are linked iff cost(i,j) <= threshold
    /// (strict == false) or cost(i,j) < threshold (strict == true).
    Deficit deficit(double threshold, bool strict, bool want_witness = false) const;

    struct Solution {
        double value = 0.0;
        std::vector<double> breakpoints;
        std::optional<Deficit> binding;
    };

    Solution solve(bool want_witness = false) const;

private:
    double one_direction(bool rows_first, double threshold, bool strict, std::vector<std::size_t>* witness) const;

    Matrix sub_;  // cost restricted to the supports
    std::vector<std::size_t> rows_, cols_;  // support indices
    std::vector<double> row_mass_, col_mass_;
    double row_total_ = 0.0, col_total_ = 0.0;
    double slack_;
    double residual_eps_;
};

}  // namespace ghp
