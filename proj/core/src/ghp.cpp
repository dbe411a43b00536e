#include "ghp/ghp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "ghp/distances.hpp"

namespace ghp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Decision { Feasible, Infeasible, Unknown };

// Covering search over pairs (x, y): every point of X and Y must lie in some
// chosen pair and every two chosen pairs must have weight <= t. Pair p encodes
// (p / m, p % m); weights live in a dense P x P table.
class PairSearch {
public:
    PairSearch(std::size_t n, std::size_t m, std::vector<double> weights, std::optional<std::size_t> forced,
               double work_budget)
        : n_(n), m_(m), p_(n * m), w_(std::move(weights)), forced_(forced), budget_(work_budget) {}

    // Smallest t for which a covering exists, as far as the work budget allows.
    // Returns a proven lower bound; `exact` tells whether it is also attained.
    double min_max(double floor, bool& exact, std::vector<std::size_t>& best) {
        std::vector<double> cand(w_.begin(), w_.end());
        cand.push_back(0.0);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::size_t lo = std::lower_bound(cand.begin(), cand.end(), floor) - cand.begin();
        std::size_t hi = cand.size() - 1;
        lo = std::min(lo, hi);
        std::vector<std::size_t> witness;
        bool have_hi = false;
        exact = true;
        while (lo < hi || !have_hi) {
            const std::size_t mid = have_hi ? lo + (hi - lo) / 2 : hi;
            std::vector<std::size_t> chosen;
            const Decision d = decide(cand[mid], chosen);
            if (d == Decision::Unknown) {
                exact = false;
                break;
            }
            if (d == Decision::Feasible) {
                hi = mid;
                have_hi = true;
                witness = std::move(chosen);
            } else {
                if (!have_hi) break;
                lo = mid + 1;
            }
        }
        if (exact) best = std::move(witness);
        return cand[std::min(lo, cand.size() - 1)];
    }

private:
    struct Abort {};

    std::size_t var_of_x(std::size_t p) const { return p / m_; }
    std::size_t var_of_y(std::size_t p) const { return n_ + p % m_; }

    Decision decide(double t, std::vector<std::size_t>& chosen) {
        t_ = t;
        std::vector<std::vector<std::uint32_t>> dom(n_ + m_);
        std::vector<char> covered(n_ + m_, 0);
        for (std::size_t p = 0; p < p_; ++p) {
            if (forced_ && w_[*forced_ * p_ + p] > t) continue;
            dom[var_of_x(p)].push_back(static_cast<std::uint32_t>(p));
            dom[var_of_y(p)].push_back(static_cast<std::uint32_t>(p));
        }
        if (forced_) {
            covered[var_of_x(*forced_)] = covered[var_of_y(*forced_)] = 1;
            chosen.push_back(*forced_);
        }
        try {
            return recurse(dom, covered, chosen) ? Decision::Feasible : Decision::Infeasible;
        } catch (const Abort&) {
            return Decision::Unknown;
        }
    }

    bool recurse(const std::vector<std::vector<std::uint32_t>>& dom, std::vector<char>& covered,
                 std::vector<std::size_t>& chosen) {
        std::size_t pick = dom.size();
        for (std::size_t v = 0; v < dom.size(); ++v) {
            if (covered[v]) continue;
            if (dom[v].empty()) return false;
            if (pick == dom.size() || dom[v].size() < dom[pick].size()) pick = v;
        }
        if (pick == dom.size()) return true;
        for (std::uint32_t q : dom[pick]) {
            const std::size_t vx = var_of_x(q), vy = var_of_y(q);
            const char old_x = covered[vx], old_y = covered[vy];
            covered[vx] = covered[vy] = 1;
            std::vector<std::vector<std::uint32_t>> next(dom.size());
            bool ok = true;
            const double* row = w_.data() + static_cast<std::size_t>(q) * p_;
            for (std::size_t u = 0; u < dom.size() && ok; ++u) {
                if (covered[u]) continue;
                work_ += static_cast<double>(dom[u].size());
                for (std::uint32_t r : dom[u])
                    if (row[r] <= t_) next[u].push_back(r);
                ok = !next[u].empty();
            }
            if (work_ > budget_) throw Abort{};
            if (ok) {
                chosen.push_back(q);
                if (recurse(next, covered, chosen)) return true;
                chosen.pop_back();
            }
            covered[vx] = old_x;
            covered[vy] = old_y;
        }
        return false;
    }

    std::size_t n_, m_, p_;
    std::vector<double> w_;
    std::optional<std::size_t> forced_;
    double budget_;
    double work_ = 0.0;
    double t_ = 0.0;
};

std::vector<IndexPair> decode(const std::vector<std::size_t>& ps, std::size_t m) {
    std::vector<IndexPair> out;
    out.reserve(ps.size());
    for (std::size_t p : ps) out.emplace_back(p / m, p % m);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> root_distances(const Space& s) {
    std::vector<double> r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = s.d(s.root(), i);
    return r;
}

// Hausdorff distance between the multisets of root distances, via sorted sweeps.
double root_profile_gap(const Space& x, const Space& y) {
    auto rx = root_distances(x), ry = root_distances(y);
    std::sort(rx.begin(), rx.end());
    std::sort(ry.begin(), ry.end());
    auto one_way = [](const std::vector<double>& a, const std::vector<double>& b) {
        double worst = 0.0;
        for (double v : a) {
            auto it = std::lower_bound(b.begin(), b.end(), v);
            double best = kInf;
            if (it != b.end()) best = *it - v;
            if (it != b.begin()) best = std::min(best, v - *std::prev(it));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_way(rx, ry), one_way(ry, rx));
}

double log_count(double base_a, double exp_a, double base_b, double exp_b) {
    return exp_a * std::log(base_a) + exp_b * std::log(base_b);
}

std::size_t nearest_by_root_distance(double target, const std::vector<double>& profile) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < profile.size(); ++j)
        if (std::abs(profile[j] - target) < std::abs(profile[best] - target)) best = j;
    return best;
}

std::vector<IndexPair> root_profile_matching(const Space& x, const Space& y) {
    const auto rx = root_distances(x), ry = root_distances(y);
    std::vector<IndexPair> pairs{{x.root(), y.root()}};
    for (std::size_t i = 0; i < x.size(); ++i) pairs.emplace_back(i, nearest_by_root_distance(rx[i], ry));
    for (std::size_t j = 0; j < y.size(); ++j) pairs.emplace_back(nearest_by_root_distance(ry[j], rx), j);
    return pairs;
}

struct Candidate {
    double value = kInf;
    std::vector<IndexPair> pairs;

    bool improves_on(const Candidate& other) const {
        return value < other.value || (value == other.value && pairs < other.pairs);
    }
};

class Evaluator {
public:
    Evaluator(const Space& x, const Space& y) : x_(x), y_(y) {}

    double operator()(const std::vector<IndexPair>& sorted_pairs) {
        ++count_;
        Correspondence r;
        r.pairs = sorted_pairs;
        r.distortion = distortion(x_, y_, sorted_pairs);
        return objective_terms(x_, y_, tight_gluing(x_, y_, r)).total();
    }

    std::size_t count() const { return count_; }

private:
    const Space& x_;
    const Space& y_;
    std::size_t count_ = 0;
};

// A pair set held as a bitmap with coverage counters; the root pair is pinned.
class PairState {
public:
    PairState(std::size_t n, std::size_t m, IndexPair root)
        : n_(n), m_(m), root_(root), in_(n * m, 0), cx_(n, 0), cy_(m, 0) {}

    void assign(const std::vector<IndexPair>& pairs) {
        std::fill(in_.begin(), in_.end(), 0);
        std::fill(cx_.begin(), cx_.end(), 0);
        std::fill(cy_.begin(), cy_.end(), 0);
        add(root_.first, root_.second);
        for (const auto& [i, j] : pairs) add(i, j);
    }

    bool has(std::size_t i, std::size_t j) const { return in_[i * m_ + j] != 0; }
    bool add(std::size_t i, std::size_t j) {
        if (has(i, j)) return false;
        in_[i * m_ + j] = 1;
        ++cx_[i];
        ++cy_[j];
        return true;
    }
    bool removable(std::size_t i, std::size_t j) const {
        return has(i, j) && IndexPair{i, j} != root_ && cx_[i] > 1 && cy_[j] > 1;
    }
    void remove(std::size_t i, std::size_t j) {
        in_[i * m_ + j] = 0;
        --cx_[i];
        --cy_[j];
    }
    std::size_t count_x(std::size_t i) const { return cx_[i]; }
    std::size_t count_y(std::size_t j) const { return cy_[j]; }

    std::vector<IndexPair> pairs() const {
        std::vector<IndexPair> out;
        for (std::size_t p = 0; p < in_.size(); ++p)
            if (in_[p]) out.emplace_back(p / m_, p % m_);
        return out;
    }

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    IndexPair root() const { return root_; }

private:
    std::size_t n_, m_;
    IndexPair root_;
    std::vector<char> in_;
    std::vector<std::size_t> cx_, cy_;
};

std::vector<IndexPair> random_two_mappings(std::size_t n, std::size_t m, IndexPair root, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick_y(0, m - 1), pick_x(0, n - 1);
    std::vector<IndexPair> pairs{root};
    for (std::size_t i = 0; i < n; ++i)
        if (i != root.first) pairs.emplace_back(i, pick_y(rng));
    for (std::size_t j = 0; j < m; ++j)
        if (j != root.second) pairs.emplace_back(pick_x(rng), j);
    return pairs;
}

// One proposal; returns false when the drawn move would break coverage or is a no-op.
bool propose(PairState& s, std::mt19937_64& rng) {
    const std::size_t n = s.n(), m = s.m();
    std::uniform_int_distribution<std::size_t> pick_x(0, n - 1), pick_y(0, m - 1), pick_move(0, 2);
    const std::size_t i = pick_x(rng), j = pick_y(rng);
    switch (pick_move(rng)) {
        case 0: {  // reassign: move one of i's partners to j
            if (s.has(i, j)) return false;
            std::vector<std::size_t> partners;
            for (std::size_t k = 0; k < m; ++k)
                if (s.has(i, k) && IndexPair{i, k} != s.root() && s.count_y(k) > 1)
                    partners.push_back(k);
            if (partners.empty()) return false;
            const std::size_t k = partners[std::uniform_int_distribution<std::size_t>(0, partners.size() - 1)(rng)];
            s.remove(i, k);
            s.add(i, j);
            return true;
        }
        case 1:
            return s.add(i, j);
        default:
            if (!s.removable(i, j)) return false;
            s.remove(i, j);
            return true;
    }
}

UpperResult upper_impl(const Space& x, const Space& y, const SearchConfig& cfg,
                       const std::optional<std::vector<IndexPair>>& extra_seed, double stop_at) {
    const std::size_t n = x.size(), m = y.size();
    const IndexPair root{x.root(), y.root()};
    Evaluator eval(x, y);
    Candidate best;

    auto consider = [&](std::vector<IndexPair> pairs) {
        pairs.push_back(root);
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        Candidate c{eval(pairs), std::move(pairs)};
        if (c.improves_on(best)) best = std::move(c);
    };

    std::vector<std::vector<IndexPair>> seeds;
    for (const auto& s : cfg.seeds) {
        auto withroot = s;
        withroot.push_back(root);
        seeds.push_back(make_correspondence(x, y, std::move(withroot)).pairs);
    }
    if (x == y) seeds.push_back(identity_correspondence(x).pairs);
    {
        std::vector<IndexPair> star;
        for (std::size_t i = 0; i < n; ++i) star.emplace_back(i, root.second);
        for (std::size_t j = 0; j < m; ++j) star.emplace_back(root.first, j);
        seeds.push_back(std::move(star));
    }
    seeds.push_back(root_profile_matching(x, y));
    if (extra_seed) seeds.push_back(*extra_seed);
    for (const auto& s : seeds) consider(s);

    // Wedge gluing at the roots: c(i,j) = dX(i,rootX) + dY(rootY,j). No correspondence produces it.
    Matrix wedge(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) wedge(i, j) = x.d(i, root.first) + y.d(root.second, j);
    const double wedge_value = objective_terms(x, y, wedge).total();

    UpperResult out;
    const double n1 = static_cast<double>(n - 1), m1 = static_cast<double>(m - 1);
    const bool exhaustive =
        log_count(static_cast<double>(m), n1, static_cast<double>(n), m1) <= std::log(std::max(cfg.exhaustive_budget, 1.0));
    auto done = [&] { return std::min(best.value, wedge_value) <= stop_at; };
    if (done()) {
        out.exhaustive = exhaustive;
    } else if (exhaustive) {
        // Odometer over f: X \ {root} -> Y and g: Y \ {root} -> X.
        std::vector<std::size_t> xs, ys;
        for (std::size_t i = 0; i < n; ++i)
            if (i != root.first) xs.push_back(i);
        for (std::size_t j = 0; j < m; ++j)
            if (j != root.second) ys.push_back(j);
        std::vector<std::size_t> digit(xs.size() + ys.size(), 0);
        while (true) {
            std::vector<IndexPair> pairs;
            for (std::size_t a = 0; a < xs.size(); ++a) pairs.emplace_back(xs[a], digit[a]);
            for (std::size_t b = 0; b < ys.size(); ++b) pairs.emplace_back(digit[xs.size() + b], ys[b]);
            consider(std::move(pairs));
            if (done()) break;
            std::size_t pos = 0;
            for (; pos < digit.size(); ++pos) {
                const std::size_t radix = pos < xs.size() ? m : n;
                if (++digit[pos] < radix) break;
                digit[pos] = 0;
            }
            if (pos == digit.size()) break;
        }
        out.exhaustive = true;
    } else if (cfg.restarts > 0 && cfg.iterations > 0 && (n > 1 || m > 1)) {
        if (!cfg.seed) throw InputError("a seed is required: the instance is beyond the exhaustive budget");
        std::mt19937_64 rng(*cfg.seed);
        PairState state(n, m, root);
        for (std::size_t restart = 0; restart < cfg.restarts && !done(); ++restart) {
            state.assign(restart == 0 ? best.pairs : random_two_mappings(n, m, root, rng));
            double current = eval(state.pairs());
            for (std::size_t it = 0; it < cfg.iterations && !done(); ++it) {
                PairState trial = state;
                if (!propose(trial, rng)) continue;
                auto pairs = trial.pairs();
                const double v = eval(pairs);
                if (v <= current) {
                    state = std::move(trial);
                    current = v;
                    Candidate c{v, std::move(pairs)};
                    if (c.improves_on(best)) best = std::move(c);
                }
            }
        }
    }

    out.witness = make_correspondence(x, y, best.pairs);
    out.cross = tight_gluing(x, y, out.witness);
    out.value = objective_terms(x, y, out.cross).total();
    if (wedge_value < out.value) {
        out.cross = std::move(wedge);
        out.value = wedge_value;
        out.wedge = true;
    }
    out.evaluations = eval.count();
    return out;
}

double lower_from(const Space& x, const Space& y, const SearchConfig& cfg, const RootedBound& rooted) {
    double lower = rooted.value + std::abs(x.total_mass() - y.total_mass());
    try {
        lower = std::max(lower, gh_exact_small(x, y, cfg.gh_budget));
    } catch (const BudgetExceeded&) {
    }
    return lower;
}

}  // namespace

double gh_exact_small(const Space& x, const Space& y, double budget) {
    const std::size_t n = x.size(), m = y.size();
    if (n == 1) return 0.5 * diameter(y);
    if (m == 1) return 0.5 * diameter(x);
    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    if (log_count(dm, dn, dn, dm) > std::log(budget))
        throw BudgetExceeded("gh_exact_small: " + std::to_string(m) + "^" + std::to_string(n) + " * " +
                             std::to_string(n) + "^" + std::to_string(m) + " correspondences exceed the budget");
    const std::size_t p = n * m;
    std::vector<double> w(p * p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b)
            w[a * p + b] = 0.5 * std::abs(x.d(a / m, b / m) - y.d(a % m, b % m));
    PairSearch search(n, m, std::move(w), std::nullopt, kInf);
    bool exact = false;
    std::vector<std::size_t> best;
    const double floor = 0.5 * std::abs(diameter(x) - diameter(y)) * (1.0 - 1e-9);
    return search.min_max(floor, exact, best);
}

RootedBound rooted_distortion_bound(const Space& x, const Space& y, double work_budget) {
    const std::size_t n = x.size(), m = y.size();
    RootedBound out;
    const double profile = root_profile_gap(x, y);
    const double fallback = std::max(profile, 0.5 * std::abs(diameter(x) - diameter(y)));
    out.value = fallback;
    if (n * m > kPairSearchMaxPairs) return out;
    const std::size_t p = n * m;
    const std::size_t forced = x.root() * m + y.root();
    std::vector<double> w(p * p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) {
            const double gap = std::abs(x.d(a / m, b / m) - y.d(a % m, b % m));
            w[a * p + b] = (a == forced || b == forced) ? gap : 0.5 * gap;
        }
    PairSearch search(n, m, std::move(w), forced, work_budget);
    std::vector<std::size_t> best;
    bool exact = false;
    const double v = search.min_max(profile * (1.0 - 1e-9), exact, best);
    out.value = std::max(fallback, v);
    out.exact = exact;
    if (exact) out.witness = decode(best, m);
    return out;
}

double ghp_lower(const Space& x, const Space& y, const SearchConfig& cfg) {
    return lower_from(x, y, cfg, rooted_distortion_bound(x, y, cfg.lower_work_budget));
}

UpperResult ghp_upper(const Space& x, const Space& y, const SearchConfig& cfg) {
    const RootedBound rooted = rooted_distortion_bound(x, y, cfg.lower_work_budget);
    return upper_impl(x, y, cfg, rooted.witness, -kInf);
}

double certification_scale(const Space& x, const Space& y) {
    return std::max({diameter(x), diameter(y), x.total_mass(), y.total_mass(), 1.0});
}

GhpBound ghp_compact(const Space& x, const Space& y, const SearchConfig& cfg) {
    const RootedBound rooted = rooted_distortion_bound(x, y, cfg.lower_work_budget);
    GhpBound b;
    b.lower = lower_from(x, y, cfg, rooted);
    const double tol = cfg.certify_rel * certification_scale(x, y);
    UpperResult up = upper_impl(x, y, cfg, rooted.witness, b.lower + tol);
    b.upper = up.value;
    b.witness = std::move(up.witness);
    b.cross = std::move(up.cross);
    b.wedge = up.wedge;
    b.certified = b.upper - b.lower <= tol;
    return b;
}

std::vector<IndexPair> restrict_pairs(const std::vector<IndexPair>& pairs, const Restriction& rx,
                                      const Restriction& ry) {
    auto local = [](const Subset& host, std::size_t h) -> std::optional<std::size_t> {
        auto it = std::lower_bound(host.begin(), host.end(), h);
        if (it == host.end() || *it != h) return std::nullopt;
        return static_cast<std::size_t>(it - host.begin());
    };
    const Space& x = rx.space;
    const Space& y = ry.space;
    std::vector<IndexPair> out{{x.root(), y.root()}};
    for (const auto& [i, j] : pairs) {
        const auto li = local(rx.host_indices, i), lj = local(ry.host_indices, j);
        if (li && lj) out.emplace_back(*li, *lj);
    }
    std::vector<char> cx(x.size(), 0), cy(y.size(), 0);
    for (const auto& [i, j] : out) cx[i] = cy[j] = 1;
    const auto px = root_distances(x), py = root_distances(y);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!cx[i]) out.emplace_back(i, nearest_by_root_distance(px[i], py));
    for (std::size_t j = 0; j < y.size(); ++j)
        if (!cy[j]) out.emplace_back(nearest_by_root_distance(py[j], px), j);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<CurveSegment> restriction_curve(const Space& x, const Space& y, const SearchConfig& cfg) {
    std::vector<double> breaks = root_distance_breakpoints(x);
    const auto by = root_distance_breakpoints(y);
    breaks.insert(breaks.end(), by.begin(), by.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<CurveSegment> curve;
    curve.reserve(breaks.size());
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        const Restriction rx = restrict_with_map(x, breaks[k]);
        const Restriction ry = restrict_with_map(y, breaks[k]);
        SearchConfig local = cfg;
        local.seeds.clear();
        for (const auto& s : cfg.seeds) local.seeds.push_back(restrict_pairs(s, rx, ry));
        CurveSegment seg;
        seg.r_lo = breaks[k];
        seg.r_hi = k + 1 < breaks.size() ? breaks[k + 1] : kInf;
        seg.bound = ghp_compact(rx.space, ry.space, local);
        curve.push_back(std::move(seg));
    }
    return curve;
}

ExtendedBound integrate_curve(const std::vector<CurveSegment>& curve) {
    ExtendedBound out;
    for (const auto& seg : curve) {
        const double head = std::exp(-seg.r_lo);
        const double w = std::isinf(seg.r_hi) ? head : head * -std::expm1(-(seg.r_hi - seg.r_lo));
        out.lower += w * std::min(1.0, seg.bound.lower);
        out.upper += w * std::min(1.0, seg.bound.upper);
    }
    return out;
}

ExtendedBound ghp_extended(const Space& x, const Space& y, const SearchConfig& cfg) {
    return integrate_curve(restriction_curve(x, y, cfg));
}

}  // namespace ghp
