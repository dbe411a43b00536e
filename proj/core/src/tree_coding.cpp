#include "ghp/tree_coding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "ghp/error.hpp"

namespace ghp {

namespace {

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

double interpolate(const SampledFunction& f, double t) {
    const auto& g = f.grid;
    if (t <= g.front()) return t == g.front() ? f.values.front() : 0.0;
    if (t >= g.back()) return t == g.back() ? f.values.back() : 0.0;
    const std::size_t k = std::upper_bound(g.begin(), g.end(), t) - g.begin();
    const double t0 = g[k - 1], t1 = g[k];
    if (t == t0) return f.values[k - 1];
    const double a = (t - t0) / (t1 - t0);
    return f.values[k - 1] + a * (f.values[k] - f.values[k - 1]);
}

}  // namespace

void check_function(const SampledFunction& f) {
    if (f.grid.size() != f.values.size())
        throw InputError("function grid has " + std::to_string(f.grid.size()) + " times but " +
                         std::to_string(f.values.size()) + " values");
    if (f.grid.empty()) throw InputError("function has no samples");
    if (f.grid.front() != 0.0) throw InputError("function grid must start at 0");
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        if (!std::isfinite(f.grid[i]) || !std::isfinite(f.values[i]))
            throw InputError("non-finite sample at index " + std::to_string(i));
        if (f.values[i] < 0.0) throw InputError("negative value at index " + std::to_string(i));
        if (i > 0 && !(f.grid[i] > f.grid[i - 1]))
            throw InputError("grid not strictly increasing at index " + std::to_string(i));
    }
    if (f.values.front() != 0.0) throw InputError("function must vanish at time 0");
    if (f.values.back() != 0.0) throw InputError("function must vanish at its last sample");
}

std::size_t sigma_index(const SampledFunction& f) {
    for (std::size_t i = f.values.size(); i-- > 0;)
        if (f.values[i] > 0.0) return std::min(i + 1, f.values.size() - 1);
    return 0;
}

double sigma(const SampledFunction& f) { return f.grid.empty() ? 0.0 : f.grid[sigma_index(f)]; }

double max_slope(const SampledFunction& f) {
    double s = 0.0;
    for (std::size_t i = 1; i < f.grid.size(); ++i)
        s = std::max(s, std::abs(f.values[i] - f.values[i - 1]) / (f.grid[i] - f.grid[i - 1]));
    return s;
}

double max_step(const SampledFunction& f) {
    double h = 0.0;
    for (std::size_t i = 1; i < f.grid.size(); ++i) h = std::max(h, f.grid[i] - f.grid[i - 1]);
    return h;
}

double tree_distance(const SampledFunction& f, std::size_t s, std::size_t t) {
    if (s >= f.values.size() || t >= f.values.size()) throw InputError("tree_distance: index out of range");
    const auto lo = f.values.begin() + std::min(s, t), hi = f.values.begin() + std::max(s, t) + 1;
    return f.values[s] + f.values[t] - 2.0 * *std::min_element(lo, hi);
}

ExcursionMetric::ExcursionMetric(const SampledFunction& f)
    : values_(f.values), table_(std::span<const double>(values_)) {}

double ExcursionMetric::operator()(std::size_t s, std::size_t t) const {
    if (s >= values_.size() || t >= values_.size()) throw InputError("tree_distance: index out of range");
    if (s == t) return 0.0;
    return values_[s] + values_[t] - 2.0 * table_.min(s, t);
}

CodedTree code_tree(const SampledFunction& f, double rel_tol) {
    check_function(f);
    const std::size_t k = sigma_index(f);
    const std::size_t n = k + 1;
    const ExcursionMetric df(f);
    const double tol = rel_tol * *std::max_element(f.values.begin(), f.values.end());

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
            if (df(s, t) <= tol) {
                const std::size_t a = find_root(parent, s), b = find_root(parent, t);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }

    CodedTree out{Space::singleton(), f, {}, {}, std::vector<std::size_t>(f.grid.size(), 0), tol};
    // Roots are always the smallest member, so class order follows first appearance.
    std::vector<std::size_t> point_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find_root(parent, i);
        if (r == i) {
            point_of[i] = out.representative_index.size();
            out.representative_index.push_back(i);
            out.representative_times.push_back(f.grid[i]);
        }
        point_of[i] = point_of[r];
        out.projection[i] = point_of[i];
    }

    const std::size_t m = out.representative_index.size();
    RawSpace raw;
    raw.root = 0;
    raw.masses.assign(m, 0.0);
    raw.distances.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t a = 0; a < m; ++a) {
        raw.labels.push_back(shortest(out.representative_times[a]));
        for (std::size_t b = 0; b < m; ++b)
            raw.distances[a][b] = df(out.representative_index[a], out.representative_index[b]);
    }
    for (std::size_t i = 0; i < k; ++i) raw.masses[point_of[i]] += f.grid[i + 1] - f.grid[i];
    out.space = Space::from_raw(raw);
    return out;
}

std::pair<SampledFunction, SampledFunction> common_refinement(const SampledFunction& f, const SampledFunction& g) {
    check_function(f);
    check_function(g);
    std::vector<double> grid;
    grid.reserve(f.grid.size() + g.grid.size());
    std::merge(f.grid.begin(), f.grid.end(), g.grid.begin(), g.grid.end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    SampledFunction rf{grid, {}}, rg{grid, {}};
    rf.values.reserve(grid.size());
    rg.values.reserve(grid.size());
    for (double t : grid) {
        rf.values.push_back(interpolate(f, t));
        rg.values.push_back(interpolate(g, t));
    }
    return {std::move(rf), std::move(rg)};
}

Correspondence time_correspondence(const CodedTree& tf, const CodedTree& tg) {
    if (tf.source.grid != tg.source.grid) throw InputError("time_correspondence needs trees coded on one grid");
    std::vector<IndexPair> pairs;
    pairs.reserve(tf.projection.size());
    for (std::size_t i = 0; i < tf.projection.size(); ++i) pairs.emplace_back(tf.projection[i], tg.projection[i]);
    return make_correspondence(tf.space, tg.space, std::move(pairs));
}

Prop33Report prop33_certificate(const SampledFunction& f, const SampledFunction& g) {
    const auto [rf, rg] = common_refinement(f, g);
    const CodedTree tf = code_tree(rf), tg = code_tree(rg);
    const Correspondence r = time_correspondence(tf, tg);
    Prop33Report rep;
    rep.ub = objective_terms(tf.space, tg.space, correspondence_gluing(tf.space, tg.space, r)).total();
    for (std::size_t i = 0; i < rf.values.size(); ++i)
        rep.sup_diff = std::max(rep.sup_diff, std::abs(rf.values[i] - rg.values[i]));
    rep.rhs = 6.0 * rep.sup_diff + std::abs(sigma(rf) - sigma(rg));
    rep.step = max_step(rf);
    rep.slope = std::max(max_slope(rf), max_slope(rg));
    rep.slack = 8.0 * rep.step * rep.slope;
    rep.ok = rep.ub <= rep.rhs + rep.slack;
    return rep;
}

}  // namespace ghp
