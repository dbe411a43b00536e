#include "ghp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ghp/error.hpp"

namespace ghp {

namespace {

// The three pair sums of a quadruple; the defect is the largest minus the middle one.
double quad_defect(double a, double b, double c) {
    const double hi = std::max({a, b, c});
    const double lo = std::min({a, b, c});
    const double mid = a + b + c - hi - lo;
    return hi - mid;
}

}  // namespace

FourPointResult four_point(const Space& space, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = space.size();
    FourPointResult out;
    if (n < 4) return out;
    const Matrix& d = space.distances();
    if (n <= kFourPointExhaustiveMax) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto di = d.row(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto dj = d.row(j);
                const double dij = di[j];
                for (std::size_t k = j + 1; k < n; ++k) {
                    const auto dk = d.row(k);
                    const double dik = di[k], djk = dj[k];
                    for (std::size_t l = k + 1; l < n; ++l) {
                        const double a = dij + dk[l], b = dik + dj[l], c = di[l] + djk;
                        worst = std::max(worst, std::max({a, b, c}) * 2.0 - (a + b + c - std::min({a, b, c})));
                    }
                }
            }
        }
        out.defect = std::max(0.0, worst);
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng);
        worst = std::max(worst, quad_defect(d(i, j) + d(k, l), d(i, k) + d(j, l), d(i, l) + d(j, k)));
    }
    out.defect = worst;
    out.exhaustive = false;
    out.samples = samples;
    return out;
}

double four_point_defect(const Space& space) { return four_point(space).defect; }

double midpoint_defect(const Space& space) {
    const std::size_t n = space.size();
    double worst = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            const double dxy = space.d(x, y);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t z = 0; z < n && best > 0.0; ++z)
                best = std::min(best, std::abs(2.0 * space.d(x, z) - dxy) + std::abs(2.0 * space.d(y, z) - dxy));
            worst = std::max(worst, best);
        }
    return worst;
}

PrecompactReport precompactness_report(const std::vector<Space>& family, const std::vector<double>& eps,
                                       const std::vector<double>& radii) {
    if (family.empty()) throw InputError("precompactness_report needs a nonempty family");
    for (double e : eps)
        if (!(e > 0.0) || !std::isfinite(e)) throw InputError("eps values must be positive and finite");
    for (double r : radii)
        if (!(r >= 0.0)) throw InputError("radii must be nonnegative");
    PrecompactReport rep;
    rep.eps = eps;
    rep.radii = radii;
    rep.family_size = family.size();
    rep.net_cardinals.assign(eps.size(), 0);
    rep.ball_cardinals.assign(radii.size(), std::vector<std::size_t>(eps.size(), 0));
    rep.sup_masses.assign(radii.size(), 0.0);
    for (const Space& s : family) {
        rep.sup_diameter = std::max(rep.sup_diameter, diameter(s));
        rep.sup_total_mass = std::max(rep.sup_total_mass, s.total_mass());
        for (std::size_t e = 0; e < eps.size(); ++e)
            rep.net_cardinals[e] = std::max(rep.net_cardinals[e], greedy_net(s, eps[e]).size());
        for (std::size_t r = 0; r < radii.size(); ++r) {
            const Space ball = restrict(s, radii[r]);
            rep.sup_masses[r] = std::max(rep.sup_masses[r], ball.total_mass());
            for (std::size_t e = 0; e < eps.size(); ++e)
                rep.ball_cardinals[r][e] = std::max(rep.ball_cardinals[r][e], greedy_net(ball, eps[e]).size());
        }
    }
    rep.note =
        "net cardinals are greedy upper estimates of the minimal net size; values are exact maxima over this "
        "finite family only";
    return rep;
}

}  // namespace ghp
