#include "ghp/distances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "ghp/max_flow.hpp"

namespace ghp {

BipartiteProkhorov::BipartiteProkhorov(const Matrix& cost, std::span<const double> row_mass,
                                       std::span<const double> col_mass, double slack)
    : slack_(slack) {
    if (row_mass.size() != cost.rows() || col_mass.size() != cost.cols())
        throw InputError("mass vectors do not match the cost matrix shape");
    for (std::size_t i = 0; i < row_mass.size(); ++i)
        if (row_mass[i] > 0.0) {
            rows_.push_back(i);
            row_mass_.push_back(row_mass[i]);
            row_total_ += row_mass[i];
        }
    for (std::size_t j = 0; j < col_mass.size(); ++j)
        if (col_mass[j] > 0.0) {
            cols_.push_back(j);
            col_mass_.push_back(col_mass[j]);
            col_total_ += col_mass[j];
        }
    sub_ = Matrix(rows_.size(), cols_.size());
    for (std::size_t a = 0; a < rows_.size(); ++a)
        for (std::size_t b = 0; b < cols_.size(); ++b) sub_(a, b) = cost(rows_[a], cols_[b]);
    residual_eps_ = 1e-15 * std::max({1.0, row_total_, col_total_});
}

double BipartiteProkhorov::one_direction(bool rows_first, double threshold, bool strict,
                                         std::vector<std::size_t>* witness) const {
    const auto& left_mass = rows_first ? row_mass_ : col_mass_;
    const auto& right_mass = rows_first ? col_mass_ : row_mass_;
    const double left_total = rows_first ? row_total_ : col_total_;
    const std::size_t nl = left_mass.size(), nr = right_mass.size();
    if (nl == 0) return 0.0;
    if (nr == 0) {
        if (witness) *witness = rows_first ? rows_ : cols_;
        return left_total;
    }

    const std::size_t source = nl + nr, sink = nl + nr + 1;
    FlowNetwork net(nl + nr + 2, residual_eps_);
    const double uncapped = 2.0 * (row_total_ + col_total_) + 1.0;
    for (std::size_t a = 0; a < nl; ++a) net.add_edge(source, a, left_mass[a]);
    for (std::size_t b = 0; b < nr; ++b) net.add_edge(nl + b, sink, right_mass[b]);
    for (std::size_t a = 0; a < nl; ++a)
        for (std::size_t b = 0; b < nr; ++b) {
            const double c = rows_first ? sub_(a, b) : sub_(b, a);
            if (strict ? c < threshold : c <= threshold) net.add_edge(a, nl + b, uncapped);
        }
    const double flow = net.max_flow(source, sink);
    const double deficit = std::max(0.0, left_total - flow);
    if (witness) {
        witness->clear();
        const auto side = net.source_side(source);
        const auto& ids = rows_first ? rows_ : cols_;
        for (std::size_t a = 0; a < nl; ++a)
            if (side[a]) witness->push_back(ids[a]);
    }
    return deficit;
}

BipartiteProkhorov::Deficit BipartiteProkhorov::deficit(double threshold, bool strict, bool want_witness) const {
    Deficit d;
    d.row_to_col = one_direction(true, threshold, strict, want_witness ? &d.row_witness : nullptr);
    d.col_to_row = one_direction(false, threshold, strict, want_witness ? &d.col_witness : nullptr);
    return d;
}

BipartiteProkhorov::Solution BipartiteProkhorov::solve(bool want_witness) const {
    Solution sol;
    auto& b = sol.breakpoints;
    b.reserve(sub_.data().size() + 1);
    b.push_back(0.0);
    b.insert(b.end(), sub_.data().begin(), sub_.data().end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());

    // On the epsilon-interval (b[k], b[k+1]] the strict halo links exactly the
    // pairs with cost <= b[k], so the worst deficit G_k is constant there.
    // G_k is nonincreasing in k and b[k+1] increasing, so the first interval
    // with G_k <= b[k+1] holds the infimum max(b[k], G_k).
    const std::size_t m = b.size();
    auto upper = [&](std::size_t k) {
        return k + 1 < m ? b[k + 1] : std::numeric_limits<double>::infinity();
    };
    std::size_t lo = 0, hi = m - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (deficit(b[mid], false).worst() <= upper(mid) + slack_) hi = mid;
        else lo = mid + 1;
    }
    const Deficit at = deficit(b[lo], false, want_witness);
    sol.value = std::max(b[lo], at.worst());
    if (want_witness) {
        if (at.worst() > b[lo]) sol.binding = at;
        else if (lo > 0) sol.binding = deficit(b[lo - 1], false, true);
    }
    return sol;
}

namespace {

void check_pair(const Space& space, const Measure& mu, const Measure& nu) {
    check_measure(space, mu);
    check_measure(space, nu);
}

}  // namespace

double hausdorff(const Space& space, const Subset& a, const Subset& b) {
    if (a.empty() || b.empty()) throw InputError("Hausdorff undefined for empty set");
    check_subset(space, a);
    check_subset(space, b);
    auto directed = [&](const Subset& from, const Subset& to) {
        double worst = 0.0;
        for (std::size_t i : from) {
            double near = std::numeric_limits<double>::infinity();
            for (std::size_t j : to) near = std::min(near, space.d(i, j));
            worst = std::max(worst, near);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

FeasibilityResult prokhorov_feasible(const Space& space, const Measure& mu, const Measure& nu, double eps) {
    if (!(eps > 0.0)) throw InputError("prokhorov_feasible requires eps > 0");
    check_pair(space, mu, nu);
    BipartiteProkhorov engine(space.distances(), mu.mass, nu.mass);
    const auto d = engine.deficit(eps, true, true);
    constexpr double slack = 1e-12;
    FeasibilityResult r;
    r.violation_mu_nu = d.row_to_col;
    r.violation_nu_mu = d.col_to_row;
    r.feasible = d.row_to_col <= eps + slack && d.col_to_row <= eps + slack;
    if (!r.feasible) {
        if (d.row_to_col >= d.col_to_row) {
            r.witness = d.row_witness;
            r.witness_direction = Direction::MuToNu;
        } else {
            r.witness = d.col_witness;
            r.witness_direction = Direction::NuToMu;
        }
    }
    return r;
}

ProkhorovResult prokhorov_exact(const Space& space, const Measure& mu, const Measure& nu) {
    check_pair(space, mu, nu);
    // Solve in a canonical argument order so that swapping mu and nu is bit-for-bit symmetric.
    const bool swapped = nu.mass < mu.mass;
    const Measure& first = swapped ? nu : mu;
    const Measure& second = swapped ? mu : nu;
    BipartiteProkhorov engine(space.distances(), first.mass, second.mass);
    auto sol = engine.solve(true);
    ProkhorovResult r;
    r.value = sol.value;
    r.breakpoints = std::move(sol.breakpoints);
    if (sol.binding) {
        const bool rows_bind = sol.binding->row_to_col >= sol.binding->col_to_row;
        r.witness = rows_bind ? sol.binding->row_witness : sol.binding->col_witness;
        r.witness_direction = (rows_bind != swapped) ? Direction::MuToNu : Direction::NuToMu;
    }
    return r;
}

double prokhorov_bruteforce(const Space& space, const Measure& mu, const Measure& nu) {
    check_pair(space, mu, nu);
    const std::size_t n = space.size();
    if (n > kBruteForceMaxPoints)
        throw InputError("prokhorov_bruteforce supports at most " + std::to_string(kBruteForceMaxPoints) +
                         " points, got " + std::to_string(n));

    std::vector<double> b{0.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) b.push_back(space.d(i, j));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());

    const std::uint32_t full = (1u << n);
    std::vector<double> mu_of(full, 0.0), nu_of(full, 0.0);
    for (std::uint32_t s = 1; s < full; ++s) {
        const int low = std::countr_zero(s);
        mu_of[s] = mu_of[s & (s - 1)] + mu.mass[low];
        nu_of[s] = nu_of[s & (s - 1)] + nu.mass[low];
    }

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> near(n);
    for (std::size_t k = 0; k < b.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            near[i] = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (space.d(i, j) <= b[k]) near[i] |= (1u << j);
        }
        double worst = 0.0;
        for (std::uint32_t s = 1; s < full; ++s) {
            std::uint32_t h = 0;
            for (std::uint32_t t = s; t; t &= t - 1) h |= near[std::countr_zero(t)];
            worst = std::max({worst, mu_of[s] - nu_of[h], nu_of[s] - mu_of[h]});
        }
        const double hi = k + 1 < b.size() ? b[k + 1] : std::numeric_limits<double>::infinity();
        const double candidate = std::max(b[k], worst);
        if (candidate <= hi) best = std::min(best, candidate);
    }
    return best;
}

double generalized_prokhorov(const Space& space, const Measure& mu, const Measure& nu) {
    check_pair(space, mu, nu);
    const auto radii = root_distance_breakpoints(space);
    double total = 0.0;
    Measure mu_r = mu, nu_r = nu;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        for (std::size_t i = 0; i < space.size(); ++i) {
            const bool inside = space.d(space.root(), i) <= radii[k];
            mu_r.mass[i] = inside ? mu.mass[i] : 0.0;
            nu_r.mass[i] = inside ? nu.mass[i] : 0.0;
        }
        const double weight = k + 1 < radii.size()
                                  ? std::exp(-radii[k]) * -std::expm1(-(radii[k + 1] - radii[k]))
                                  : std::exp(-radii[k]);
        const double dp = BipartiteProkhorov(space.distances(), mu_r.mass, nu_r.mass).solve().value;
        total += weight * std::min(1.0, dp);
    }
    return total;
}

}  // namespace ghp
