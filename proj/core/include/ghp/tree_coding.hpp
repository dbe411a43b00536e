#pragma once

#include <cstddef>
#include <vector>

#include "ghp/correspondence.hpp"
#include "ghp/space.hpp"
#include "ghp/sparse_table.hpp"

namespace ghp {

/// Samples of a continuous excursion, piecewise linear between grid times.
struct SampledFunction {
    std::vector<double> grid;    // strictly increasing, starts at 0
    std::vector<double> values;  // nonnegative, first and last equal to 0

    friend bool operator==(const SampledFunction&, const SampledFunction&) = default;
};

/// Throws InputError describing the first broken invariant.
void check_function(const SampledFunction& f);

/// Grid time right after the last positive sample (where the piecewise-linear
/// interpolant returns to 0); 0 when f vanishes on the grid.
double sigma(const SampledFunction& f);

/// Index of sigma(f) in the grid.
std::size_t sigma_index(const SampledFunction& f);

/// Largest |slope| between consecutive samples.
double max_slope(const SampledFunction& f);

/// Largest grid step.
double max_step(const SampledFunction& f);

/// d^f(s, t) = f(s) + f(t) - 2 min f[s..t] on grid indices, by a linear scan.
double tree_distance(const SampledFunction& f, std::size_t s, std::size_t t);

/// The same pseudo-metric with O(1) queries after an O(n log n) build.
class ExcursionMetric {
public:
    explicit ExcursionMetric(const SampledFunction& f);
    double operator()(std::size_t s, std::size_t t) const;
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
    SparseTable<double> table_;
};

struct CodedTree {
    Space space;
    SampledFunction source;
    std::vector<std::size_t> representative_index;  // grid index of each point
    std::vector<double> representative_times;
    std::vector<std::size_t> projection;  // grid index -> point; indices past sigma go to the root
    double quotient_tolerance = 0.0;
};

/// Quotient of the grid times in [0, sigma] by d^f <= tol, tol = rel_tol * max value.
/// Class masses use left-endpoint weights grid[i+1] - grid[i]; the sample at sigma weighs 0.
CodedTree code_tree(const SampledFunction& f, double rel_tol = 1e-12);

/// Both functions resampled on the union of their grids by linear interpolation,
/// extended by 0 past their own last sample.
std::pair<SampledFunction, SampledFunction> common_refinement(const SampledFunction& f, const SampledFunction& g);

/// {(p^f(t), p^g(t))} over the shared grid. Throws InputError when the grids differ.
Correspondence time_correspondence(const CodedTree& tf, const CodedTree& tg);

struct Prop33Report {
    double ub = 0.0;     // objective of the time-correspondence gluing
    double rhs = 0.0;    // 6 ||f - g|| + |sigma f - sigma g|
    double slack = 0.0;  // 8 h L
    bool ok = false;
    double sup_diff = 0.0;
    double step = 0.0;
    double slope = 0.0;
};

Prop33Report prop33_certificate(const SampledFunction& f, const SampledFunction& g);

}  // namespace ghp
