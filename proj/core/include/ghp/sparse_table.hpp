#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ghp {

/// Static range-minimum table: O(n log n) build, O(1) inclusive queries.
template <class T>
class SparseTable {
public:
    SparseTable() = default;
    explicit SparseTable(std::span<const T> values) {
        const std::size_t n = values.size();
        levels_.emplace_back(values.begin(), values.end());
        for (std::size_t len = 2; len <= n; len *= 2) {
            const auto& prev = levels_.back();
            std::vector<T> next(n - len + 1);
            for (std::size_t i = 0; i + len <= n; ++i) next[i] = std::min(prev[i], prev[i + len / 2]);
            levels_.push_back(std::move(next));
        }
    }

    std::size_t size() const { return levels_.empty() ? 0 : levels_.front().size(); }

    /// min over [lo, hi], either order.
    T min(std::size_t lo, std::size_t hi) const {
        if (lo > hi) std::swap(lo, hi);
        if (hi >= size()) throw std::out_of_range("SparseTable::min index out of range");
        const std::size_t k = std::bit_width(hi - lo + 1) - 1;
        const auto& lvl = levels_[k];
        return std::min(lvl[lo], lvl[hi + 1 - (std::size_t{1} << k)]);
    }

private:
    std::vector<std::vector<T>> levels_;
};

}  // namespace ghp
