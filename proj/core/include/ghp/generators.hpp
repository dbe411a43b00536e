#pragma once

#include <cstddef>
#include <random>

#include "ghp/space.hpp"
#include "ghp/tree_coding.hpp"

namespace ghp {

using Rng = std::mt19937_64;

/// Name and version of the generator every seeded routine draws from.
inline constexpr const char* kGeneratorName = "mt19937_64";

/// Symmetric distances uniform in [dmin, dmax], repaired into a metric by
/// shortest paths; masses uniform in [0, mass_max]; uniformly random root.
Space random_space(Rng& rng, std::size_t n, double dmin = 0.1, double dmax = 10.0, double mass_max = 5.0);

/// Masses uniform in [0, mass_max].
Measure random_measure(Rng& rng, std::size_t n, double mass_max = 5.0);

/// Nonempty uniformly random subset of {0..n-1}, sorted.
Subset random_subset(Rng& rng, std::size_t n);

/**
 * Piecewise-linear excursion sampled on `samples` uniform times over [0, length].
 * Knots sit on grid times; consecutive knots differ by at most max_slope per
 * unit time, so every sampled slope is bounded by max_slope. The support may
 * end before the last sample.
 */
SampledFunction random_excursion(Rng& rng, std::size_t samples, std::size_t knots, double length = 1.0,
                                 double max_slope = 4.0);

/// f + amplitude * (random piecewise-linear noise), clipped at 0, zero at both ends.
SampledFunction perturbed_excursion(Rng& rng, const SampledFunction& f, double amplitude, std::size_t knots);

/// Tent of the given height on [start, start + width], sampled on `grid`.
std::vector<double> tent_values(const std::vector<double>& grid, double start, double width, double height);

/// Uniform grid of `samples` points on [0, length].
std::vector<double> uniform_grid(std::size_t samples, double length);

}  // namespace ghp
