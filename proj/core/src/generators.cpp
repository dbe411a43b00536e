#include "ghp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghp/error.hpp"

namespace ghp {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Linear interpolation of knot values onto every grid index between knots.
std::vector<double> fill_between(const std::vector<std::size_t>& at, const std::vector<double>& val,
                                 const std::vector<double>& grid) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < at.size(); ++k) {
        const std::size_t a = at[k], b = at[k + 1];
        for (std::size_t i = a; i <= b; ++i) {
            const double w = (grid[i] - grid[a]) / (grid[b] - grid[a]);
            out[i] = i == b ? val[k + 1] : val[k] + w * (val[k + 1] - val[k]);
        }
    }
    return out;
}

}  // namespace

std::vector<double> uniform_grid(std::size_t samples, double length) {
    if (samples < 2) throw InputError("a grid needs at least two samples");
    std::vector<double> g(samples);
    for (std::size_t i = 0; i < samples; ++i) g[i] = length * static_cast<double>(i) / static_cast<double>(samples - 1);
    g.back() = length;
    return g;
}

Space random_space(Rng& rng, std::size_t n, double dmin, double dmax, double mass_max) {
    if (n == 0) throw InputError("random_space needs at least one point");
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = uniform(rng, dmin, dmax);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    RawSpace raw;
    raw.distances = std::move(d);
    for (std::size_t i = 0; i < n; ++i) raw.labels.push_back("p" + std::to_string(i));
    raw.masses = random_measure(rng, n, mass_max).mass;
    raw.root = static_cast<std::int64_t>(uniform_index(rng, 0, n - 1));
    return Space::from_raw(raw);
}

Measure random_measure(Rng& rng, std::size_t n, double mass_max) {
    Measure m;
    m.mass.resize(n);
    for (double& v : m.mass) v = uniform(rng, 0.0, mass_max);
    return m;
}

Subset random_subset(Rng& rng, std::size_t n) {
    Subset s;
    while (s.empty())
        for (std::size_t i = 0; i < n; ++i)
            if (rng() & 1u) s.push_back(i);
    return s;
}

SampledFunction random_excursion(Rng& rng, std::size_t samples, std::size_t knots, double length, double max_slope) {
    const std::vector<double> grid = uniform_grid(samples, length);
    // Support ends somewhere in the last half of the grid.
    const std::size_t end = uniform_index(rng, std::max<std::size_t>(2, samples / 2), samples - 1);
    std::vector<std::size_t> at{0};
    for (std::size_t k = 0; k < knots; ++k) at.push_back(uniform_index(rng, 1, end - 1));
    at.push_back(end);
    std::sort(at.begin(), at.end());
    at.erase(std::unique(at.begin(), at.end()), at.end());

    std::vector<double> val(at.size(), 0.0);
    for (std::size_t k = 1; k + 1 < at.size(); ++k) {
        const double dt = grid[at[k]] - grid[at[k - 1]];
        const double room = max_slope * (grid[end] - grid[at[k]]);  // must still be able to return to 0
        const double lo = std::max(0.0, val[k - 1] - max_slope * dt);
        const double hi = std::min(room, val[k - 1] + max_slope * dt);
        val[k] = lo < hi ? uniform(rng, lo, hi) : lo;
        if (k == 1 && val[k] == 0.0) val[k] = hi;  // keep the excursion nontrivial
    }
    SampledFunction f{grid, fill_between(at, val, grid)};
    for (double& v : f.values) v = std::max(v, 0.0);
    f.values.front() = 0.0;
    f.values.back() = 0.0;
    return f;
}

SampledFunction perturbed_excursion(Rng& rng, const SampledFunction& f, double amplitude, std::size_t knots) {
    const std::size_t n = f.grid.size();
    std::vector<std::size_t> at{0, n - 1};
    for (std::size_t k = 0; k < knots; ++k) at.push_back(uniform_index(rng, 1, n - 2));
    std::sort(at.begin(), at.end());
    at.erase(std::unique(at.begin(), at.end()), at.end());
    std::vector<double> val(at.size());
    for (double& v : val) v = uniform(rng, -amplitude, amplitude);
    const std::vector<double> noise = fill_between(at, val, f.grid);
    SampledFunction g{f.grid, f.values};
    for (std::size_t i = 0; i < n; ++i) g.values[i] = std::max(0.0, f.values[i] + noise[i]);
    g.values.front() = 0.0;
    g.values.back() = 0.0;
    return g;
}

std::vector<double> tent_values(const std::vector<double>& grid, double start, double width, double height) {
    std::vector<double> v(grid.size(), 0.0);
    const double mid = start + 0.5 * width;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (t <= start || t >= start + width) continue;
        v[i] = height * (1.0 - std::abs(t - mid) / (0.5 * width));
    }
    return v;
}

}  // namespace ghp
