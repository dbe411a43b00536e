#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ghp/space.hpp"

namespace ghp::test {

// Points on the real line with |a - b| distances.
inline Space line(const std::vector<double>& coords, std::size_t root = 0, std::vector<double> masses = {}) {
    RawSpace raw;
    const std::size_t n = coords.size();
    for (std::size_t i = 0; i < n; ++i) raw.labels.push_back(std::to_string(i));
    raw.distances.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) raw.distances[i][j] = std::abs(coords[i] - coords[j]);
    raw.root = static_cast<std::int64_t>(root);
    raw.masses = masses.empty() ? std::vector<double>(n, 0.0) : std::move(masses);
    return Space::from_raw(raw);
}

inline Space from_matrix(std::vector<std::vector<double>> d, std::size_t root = 0, std::vector<double> masses = {}) {
    RawSpace raw;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) raw.labels.push_back(std::to_string(i));
    raw.distances = std::move(d);
    raw.root = static_cast<std::int64_t>(root);
    raw.masses = masses.empty() ? std::vector<double>(n, 0.0) : std::move(masses);
    return Space::from_raw(raw);
}

inline bool is_subset(const Subset& a, const Subset& b) {
    for (auto i : a)
        if (std::find(b.begin(), b.end(), i) == b.end()) return false;
    return true;
}

}  // namespace ghp::test

#include <random>

#include "ghp/correspondence.hpp"

namespace ghp::test {

// Root pair plus a random partner for every point on either side.
template <class R>
std::vector<IndexPair> random_pairs(R& rng, const Space& x, const Space& y) {
    std::uniform_int_distribution<std::size_t> ux(0, x.size() - 1), uy(0, y.size() - 1);
    std::vector<IndexPair> p{{x.root(), y.root()}};
    for (std::size_t i = 0; i < x.size(); ++i) p.emplace_back(i, uy(rng));
    for (std::size_t j = 0; j < y.size(); ++j) p.emplace_back(ux(rng), j);
    return p;
}

}  // namespace ghp::test
