#include "ghp/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "ghp/diagnostics.hpp"
#include "ghp/distances.hpp"
#include "ghp/error.hpp"
#include "ghp/generators.hpp"
#include "ghp/tree_coding.hpp"

namespace ghp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Rng stream(std::uint64_t seed, int criterion) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(criterion)};
    return Rng(seq);
}

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double drawf(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

void add(CriterionResult& c, std::string id, bool pass, double value, double bound, std::string detail = {}) {
    c.cases.push_back({std::move(id), pass, value, bound, std::move(detail)});
}

std::string fmt(double v) { return format_double(v); }

double max_entry(const Space& s) {
    double m = 0.0;
    for (double v : s.distances().data()) m = std::max(m, v);
    return m;
}

// ---- 1: exact Prokhorov against subset enumeration
void prokhorov_oracle(Rng& rng, const RunConfig& cfg, CriterionResult& c) {
    for (int k = 0; k < 200; ++k) {
        const Space s = random_space(rng, draw(rng, 3, 8));
        const Measure nu = random_measure(rng, s.size());
        const double exact = prokhorov_exact(s, s.measure(), nu).value;
        const double brute = prokhorov_bruteforce(s, s.measure(), nu);
        const double err = std::abs(exact - brute);
        add(c, "space-" + std::to_string(k), err <= cfg.tol.oracle_abs, exact, brute, "n=" + std::to_string(s.size()));
    }
}

// ---- 2: metric axioms of the Prokhorov and Hausdorff distances
void metric_axioms(Rng& rng, const RunConfig& cfg, CriterionResult& c) {
    const double tol = cfg.tol.oracle_abs;
    for (int k = 0; k < 200; ++k) {
        const Space s = random_space(rng, draw(rng, 3, 8));
        const Measure m[3] = {random_measure(rng, s.size()), random_measure(rng, s.size()),
                              random_measure(rng, s.size())};
        double d[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d[i][j] = prokhorov_exact(s, m[i], m[j]).value;
        bool sym = d[0][1] == d[1][0] && d[1][2] == d[2][1] && d[0][2] == d[2][0];
        double excess = -kInf;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) excess = std::max(excess, d[i][l] - d[i][j] - d[j][l]);
        add(c, "prokhorov-" + std::to_string(k), sym && excess <= tol, excess, tol, sym ? "symmetric" : "asymmetric");

        const Subset a[3] = {random_subset(rng, s.size()), random_subset(rng, s.size()), random_subset(rng, s.size())};
        double h[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h[i][j] = hausdorff(s, a[i], a[j]);
        sym = h[0][1] == h[1][0] && h[1][2] == h[2][1] && h[0][2] == h[2][0];
        excess = -kInf;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) excess = std::max(excess, h[i][l] - h[i][j] - h[j][l]);
        add(c, "hausdorff-" + std::to_string(k), sym && excess <= tol, excess, tol, sym ? "symmetric" : "asymmetric");
    }
}

Space two_point(double d) {
    RawSpace raw{{"root", "p"}, {{0.0, d}, {d, 0.0}}, 0, {0.0, 0.0}};
    return Space::from_raw(raw);
}

// ---- 3: identity and certified toy values
void toy_values(Rng& rng, const RunConfig& cfg, CriterionResult& c) {
    const SearchConfig search = suite_search(cfg);
    for (int k = 0; k < 50; ++k) {
        const Space s = random_space(rng, draw(rng, 1, 8));
        const GhpBound b = ghp_compact(s, s, search);
        add(c, "identity-" + std::to_string(k), b.lower == 0.0 && b.upper == 0.0 && b.certified, b.upper, 0.0,
            "lower=" + fmt(b.lower));
    }
    {
        const GhpBound b = ghp_compact(two_point(1.0), Space::singleton(), search);
        const bool ok = b.certified && std::abs(b.lower - 1.0) <= 1e-9 && std::abs(b.upper - 1.0) <= 1e-9;
        add(c, "two-point-vs-singleton", ok, b.upper, 1.0, "lower=" + fmt(b.lower));
    }
    for (int k = 0; k < 20; ++k) {
        const double a = drawf(rng, 0.0, 5.0), bm = drawf(rng, 0.0, 5.0);
        const GhpBound b = ghp_compact(Space::singleton(a), Space::singleton(bm), search);
        const double want = std::abs(a - bm);
        const bool ok = b.certified && std::abs(b.lower - want) <= 1e-9 && std::abs(b.upper - want) <= 1e-9;
        add(c, "point-masses-" + std::to_string(k), ok, b.upper, want, "a=" + fmt(a) + " b=" + fmt(bm));
    }
}

// ---- 4: lower <= upper, and upper >= exact GH whenever the enumeration runs
void bound_ordering(Rng& rng, const RunConfig& cfg, CriterionResult& c) {
    const SearchConfig search = suite_search(cfg);
    std::size_t certified = 0, gh_runs = 0;
    for (int k = 0; k < 200; ++k) {
        const Space x = random_space(rng, draw(rng, 1, 6));
        const Space y = random_space(rng, draw(rng, 1, 6));
        const GhpBound b = ghp_compact(x, y, search);
        const double scale = certification_scale(x, y);
        bool ok = b.lower <= b.upper + 1e-9 * scale;
        std::string detail = "lower=" + fmt(b.lower);
        double gh = 0.0;
        try {
            gh = gh_exact_small(x, y, search.gh_budget);
            ++gh_runs;
            ok = ok && b.upper >= gh - 1e-9;
            detail += " gh=" + fmt(gh);
        } catch (const BudgetExceeded&) {
            detail += " gh=refused";
        }
        certified += b.certified;
        add(c, "pair-" + std::to_string(k), ok, b.upper, b.lower, detail);
    }
    c.summary = "certified " + std::to_string(certified) + "/200, exact GH computed for " + std::to_string(gh_runs);
}

// ---- 5: inclusion gluing between nested balls of a coded tree
void nested_balls(Rng& rng, const RunConfig& cfg, CriterionResult& c) {
    for (int k = 0; k < 50; ++k) {
        const std::size_t samples = draw(rng, 33, 97);
        const SampledFunction f = random_excursion(rng, samples, draw(rng, 2, 6), 1.0, 2.0);
        const CodedTree t = code_tree(f, cfg.tol.quotient_rel);
        const double height = t.space.radius();
        const double r = drawf(rng, 0.0, 0.9 * height);
        const double eps = drawf(rng, 1e-3, 0.3 * std::max(height, 1e-3));
        const Restriction inner = restrict_with_map(t.space, r);
        const Restriction outer = restrict_with_map(t.space, r + eps);
        std::vector<std::size_t> embed;
        for (std::size_t h : inner.host_indices)
            embed.push_back(std::lower_bound(outer.host_indices.begin(), outer.host_indices.end(), h) -
                            outer.host_indices.begin());
        const auto x = std::make_shared<const Space>(inner.space);
        const auto y = std::make_shared<const Space>(outer.space);
        const double value = evaluate_objective(inclusion_cross(x, y, embed, cfg.tol.cross_rel));
        const double annulus = y->total_mass() - x->total_mass();
        const double bound = eps + annulus + 2.0 * max_step(f) + 1e-9;
        add(c, "tree-" + std::to_string(k), value <= bound, value, bound,
            "r=" + fmt(r) + " eps=" + fmt(eps) + " annulus=" + fmt(annulus));
    }
}

// The excursion pairs shared by criteria 6 and 7.
std::vector<std::pair<SampledFunction, SampledFunction>> excursion_corpus(std::uint64_t seed) {
    Rng rng = stream(seed, 6);
    std::vector<std::pair<SampledFunction, SampledFunction>> out;
    out.reserve(500);
    for (int k = 0; k < 500; ++k) {
        const std::size_t samples = draw(rng, 64, 256);
        SampledFunction f = random_excursion(rng, samples, draw(rng, 2, 10), 1.0, 4.0);
        SampledFunction g;
        switch (k % 3) {
            case 0:
                g = random_excursion(rng, samples, draw(rng, 2, 10), 1.0, 4.0);
                break;
            case 1:
                g = perturbed_excursion(rng, f, drawf(rng, 0.005, 0.2), draw(rng, 2, 12));
                break;
            default: {
                g = f;
                const double s = drawf(rng, 0.8, 1.25);
                for (double& v : g.values) v *= s;
            }
        }
        out.emplace_back(std::move(f), std::move(g));
    }
    return out;
}

// ---- 6: stability of the coding map
void coding_stability(Rng&, const RunConfig& cfg, CriterionResult& c) {
    const auto corpus = excursion_corpus(cfg.seed);
    double worst = -kInf;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const Prop33Report rep = prop33_certificate(corpus[k].first, corpus[k].second);
        worst = std::max(worst, rep.ub - rep.rhs - rep.slack);
        add(c, "pair-" + std::to_string(k), rep.ok, rep.ub, rep.rhs + rep.slack,
            "rhs=" + fmt(rep.rhs) + " slack=" + fmt(rep.slack));
    }
    c.summary = "largest ub - (rhs + slack) = " + fmt(worst);
}

Space four_cycle() {
    RawSpace raw{{"a", "b", "c", "d"},
                 {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}},
                 0,
                 {0, 0, 0, 0}};
    return Space::from_raw(raw);
}

// ---- 7: coded trees satisfy the four-point condition
void four_point_trees(Rng&, const RunConfig& cfg, CriterionResult& c) {
    const auto corpus = excursion_corpus(cfg.seed);
    std::size_t sampled = 0;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const SampledFunction* fs[2] = {&corpus[k].first, &corpus[k].second};
        for (int side = 0; side < 2; ++side) {
            const CodedTree t = code_tree(*fs[side], cfg.tol.quotient_rel);
            const FourPointResult r = four_point(t.space, 2000000, cfg.seed + k);
            sampled += !r.exhaustive;
            const double bound = cfg.tol.four_point_rel * std::max(1.0, max_entry(t.space));
            add(c, "tree-" + std::to_string(k) + (side ? "g" : "f"), r.defect <= bound, r.defect, bound,
                "points=" + std::to_string(t.space.size()) + (r.exhaustive ? "" : " sampled"));
        }
    }
    const double cyc = four_point_defect(four_cycle());
    add(c, "four-cycle", cyc == 2.0, cyc, 2.0);
    c.summary = std::to_string(sampled) + " trees above the exhaustive cap were sampled";
}

// Trapezoid rule of e^{-r} * min(1, value(r)) on a fine grid that contains every breakpoint.
double quadrature(const std::vector<CurveSegment>& curve, bool upper) {
    const double stop = std::min(curve.back().r_lo + 20.0, 30.0);
    std::vector<double> nodes;
    for (int i = 0; i <= 10000; ++i) nodes.push_back(stop * i / 10000.0);
    for (const auto& seg : curve)
        if (seg.r_lo < stop) nodes.push_back(seg.r_lo);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    double sum = 0.0;
    std::size_t seg = 0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double u = nodes[i], v = nodes[i + 1];
        while (seg + 1 < curve.size() && curve[seg + 1].r_lo <= u) ++seg;
        const double val = std::min(1.0, upper ? curve[seg].bound.upper : curve[seg].bound.lower);
        sum += 0.5 * (std::exp(-u) + std::exp(-v)) * (v - u) * val;
    }
    return sum;
}

// ---- 8: extended distance consistency
void extended_consistency(Rng& rng, const RunConfig& cfg, CriterionResult& c) {
    const SearchConfig search = suite_search(cfg);
    for (int k = 0; k < 10; ++k) {
        const Space s = random_space(rng, draw(rng, 1, 6));
        const ExtendedBound e = ghp_extended(s, s, search);
        add(c, "identity-" + std::to_string(k), e.lower == 0.0 && e.upper == 0.0, e.upper, 0.0);
    }
    for (int k = 0; k < 20; ++k) {
        const double a = drawf(rng, 0.0, 3.0), b = drawf(rng, 0.0, 3.0);
        const ExtendedBound e = ghp_extended(Space::singleton(a), Space::singleton(b), search);
        const double want = std::min(1.0, std::abs(a - b));
        add(c, "point-masses-" + std::to_string(k), e.lower == want && e.upper == want, e.upper, want,
            "lower=" + fmt(e.lower));
    }
    for (int k = 0; k < 10; ++k) {
        const Space x = random_space(rng, draw(rng, 2, 5), 0.1, 3.0, 2.0);
        const Space y = random_space(rng, draw(rng, 2, 5), 0.1, 3.0, 2.0);
        const auto curve = restriction_curve(x, y, search);
        const ExtendedBound e = integrate_curve(curve);
        const double ql = quadrature(curve, false), qu = quadrature(curve, true);
        const double err = std::max(std::abs(ql - e.lower), std::abs(qu - e.upper));
        add(c, "quadrature-" + std::to_string(k), err <= cfg.tol.quadrature_abs, err, cfg.tol.quadrature_abs,
            "upper=" + fmt(e.upper) + " trapezoid=" + fmt(qu));
    }
}

// ---- 9: vanishing bump on the tent fixture
void vanishing_bump(Rng&, const RunConfig& cfg, CriterionResult& c) {
    const std::vector<double> grid = uniform_grid(129, 2.0);
    const SampledFunction f{grid, tent_values(grid, 0.0, 2.0, 1.0)};
    const std::vector<double> bump = tent_values(grid, 0.25, 0.5, 1.0);
    const CodedTree tf = code_tree(f, cfg.tol.quotient_rel);

    SearchConfig search = suite_search(cfg);
    search.restarts = 1;
    search.iterations = 60;
    SearchConfig curve_search = search;
    curve_search.restarts = 0;

    std::vector<double> compact, extended;
    for (int n : {1, 2, 4, 8, 16, 32}) {
        SampledFunction fn = f;
        for (std::size_t i = 0; i < grid.size(); ++i) fn.values[i] += bump[i] / n;
        const CodedTree tn = code_tree(fn, cfg.tol.quotient_rel);
        const Correspondence seed = time_correspondence(tn, tf);
        search.seeds = {seed.pairs};
        curve_search.seeds = {seed.pairs};
        const GhpBound b = ghp_compact(tn.space, tf.space, search);
        const ExtendedBound e = ghp_extended(tn.space, tf.space, curve_search);
        compact.push_back(b.upper);
        extended.push_back(e.upper);
        add(c, "n=" + std::to_string(n), true, b.upper, 0.05,
            "compact_lower=" + fmt(b.lower) + " extended_upper=" + fmt(e.upper));
    }
    const bool compact_ok = compact.back() < 0.05 && compact.back() < compact.front();
    const bool extended_ok = extended.back() < 0.05 && extended.back() < extended.front();
    add(c, "compact-below-0.05", compact_ok, compact.back(), 0.05);
    add(c, "extended-below-0.05", extended_ok, extended.back(), 0.05);
    c.summary = "compact upper at n=32: " + fmt(compact.back()) + ", extended upper: " + fmt(extended.back());
}

// ---- 10: right-continuous piecewise-constant restriction curve
void curve_structure(Rng& rng, const RunConfig& cfg, CriterionResult& c) {
    const SearchConfig search = suite_search(cfg);
    auto same = [](const GhpBound& a, const GhpBound& b) { return a.lower == b.lower && a.upper == b.upper; };
    for (int k = 0; k < 20; ++k) {
        const Space x = random_space(rng, draw(rng, 1, 5), 0.1, 3.0, 2.0);
        const Space y = random_space(rng, draw(rng, 1, 5), 0.1, 3.0, 2.0);
        const auto curve = restriction_curve(x, y, search);
        std::vector<double> breaks = root_distance_breakpoints(x);
        const auto by = root_distance_breakpoints(y);
        breaks.insert(breaks.end(), by.begin(), by.end());
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

        bool ok = !curve.empty() && curve.front().r_lo == 0.0 && std::isinf(curve.back().r_hi) &&
                  curve.size() == breaks.size();
        std::string detail;
        for (std::size_t i = 0; ok && i < curve.size(); ++i) {
            const auto& seg = curve[i];
            ok = seg.r_lo == breaks[i] && seg.r_lo < seg.r_hi && (i + 1 == curve.size() || seg.r_hi == curve[i + 1].r_lo);
            if (!ok) {
                detail = "tiling broken at interval " + std::to_string(i);
                break;
            }
            const GhpBound at = ghp_compact(restrict(x, seg.r_lo), restrict(y, seg.r_lo), search);
            const double inside = std::isinf(seg.r_hi) ? seg.r_lo + 1.0 : 0.5 * (seg.r_lo + seg.r_hi);
            const GhpBound mid = ghp_compact(restrict(x, inside), restrict(y, inside), search);
            ok = same(at, seg.bound) && same(mid, seg.bound);
            if (!ok) detail = "value mismatch on interval " + std::to_string(i);
        }
        add(c, "pair-" + std::to_string(k), ok, static_cast<double>(curve.size()), static_cast<double>(breaks.size()),
            detail.empty() ? "intervals=" + std::to_string(curve.size()) : detail);
    }
}

struct CriterionSpec {
    const char* title;
    double limit_seconds;
    void (*run)(Rng&, const RunConfig&, CriterionResult&);
};

const CriterionSpec kCriteria[kCriterionCount] = {
    {"Prokhorov oracle equivalence", 30, prokhorov_oracle},
    {"Metric axioms (Prokhorov, Hausdorff)", 30, metric_axioms},
    {"GHP identity and certified toy values", 60, toy_values},
    {"Bound ordering and exact GH", 300, bound_ordering},
    {"Nested-ball inclusion inequality", 120, nested_balls},
    {"Coding stability certificate", 300, coding_stability},
    {"Four-point condition", 60, four_point_trees},
    {"Extended-metric consistency", 60, extended_consistency},
    {"Vanishing-bump convergence", 120, vanishing_bump},
    {"Restriction-curve structure", 60, curve_structure},
};

nlohmann::json criterion_json(const CriterionResult& c) {
    nlohmann::json j;
    j["id"] = c.id;
    j["title"] = c.title;
    j["pass"] = c.pass;
    j["seconds"] = c.seconds;
    j["limit_seconds"] = c.limit_seconds;
    j["summary"] = c.summary;
    auto& cases = j["cases"] = nlohmann::json::array();
    for (const auto& cs : c.cases) {
        auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(fmt(v)); };
        cases.push_back({{"id", cs.id}, {"pass", cs.pass}, {"value", num(cs.value)}, {"bound", num(cs.bound)},
                         {"detail", cs.detail}});
    }
    return j;
}

}  // namespace

SearchConfig suite_search(const RunConfig& cfg) {
    SearchConfig s;
    s.seed = cfg.seed;
    s.exhaustive_budget = cfg.exhaustive_budget;
    s.restarts = 4;
    s.iterations = 250;
    s.certify_rel = cfg.tol.certify_rel;
    return s;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"prokhorov-oracle", "ghp-properties", "tree-stability",
                                                "curve-integrity"};
    return names;
}

std::vector<int> suite_criteria(const std::string& name) {
    if (name == "prokhorov-oracle") return {1, 2};
    if (name == "ghp-properties") return {3, 4, 5};
    if (name == "tree-stability") return {6, 7, 9};
    if (name == "curve-integrity") return {8, 10};
    std::string valid;
    for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw InputError("unknown suite \"" + name + "\"; valid suites: " + valid);
}

CriterionResult run_criterion(int id, const RunConfig& cfg) {
    if (id < 1 || id > kCriterionCount) throw InputError("criterion id must be in 1.." + std::to_string(kCriterionCount));
    const CriterionSpec& spec = kCriteria[id - 1];
    CriterionResult c;
    c.id = id;
    c.title = spec.title;
    c.limit_seconds = spec.limit_seconds;
    Rng rng = stream(cfg.seed, id);
    const auto start = std::chrono::steady_clock::now();
    spec.run(rng, cfg, c);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::size_t passed = std::count_if(c.cases.begin(), c.cases.end(), [](const CaseResult& r) { return r.pass; });
    c.pass = passed == c.cases.size() && c.seconds < c.limit_seconds;
    std::string tally = std::to_string(passed) + "/" + std::to_string(c.cases.size()) + " cases";
    c.summary = c.summary.empty() ? tally : tally + "; " + c.summary;
    return c;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = name;
    rep.seed = cfg.seed;
    rep.generator = kGeneratorName;
    for (int id : suite_criteria(name)) rep.criteria.push_back(run_criterion(id, cfg));
    return rep;
}

bool SuiteReport::pass() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

std::string SuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["generator"] = generator;
    j["pass"] = pass();
    auto& arr = j["criteria"] = nlohmann::json::array();
    for (const auto& c : criteria) arr.push_back(criterion_json(c));
    return j.dump(2) + "\n";
}

}  // namespace ghp
