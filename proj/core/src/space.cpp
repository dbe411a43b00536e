#include "ghp/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ghp {

double Measure::total() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }

const char* to_string(Violation v) {
    switch (v) {
        case Violation::DimensionMismatch: return "dimension-mismatch";
        case Violation::Empty: return "empty";
        case Violation::NonFinite: return "non-finite";
        case Violation::NegativeDistance: return "negative-distance";
        case Violation::NonzeroDiagonal: return "nonzero-diagonal";
        case Violation::Asymmetry: return "asymmetry";
        case Violation::Indefinite: return "indefinite";
        case Violation::Triangle: return "triangle";
        case Violation::NegativeMass: return "negative-mass";
        case Violation::InvalidRoot: return "invalid-root";
    }
    return "unknown";
}

bool ValidationReport::has(Violation kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const ViolationEntry& e) { return e.kind == kind; });
}

std::string ValidationReport::summary() const {
    if (ok()) return "valid";
    std::ostringstream out;
    out << violations.size() << " violation(s):";
    for (const auto& v : violations) out << "\n  [" << to_string(v.kind) << "] " << v.message;
    return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : InputError("invalid space: " + report.summary()), report_(std::move(report)) {}

namespace {

// Cap on the number of entries recorded per violation kind; the count is still reported.
constexpr std::size_t kMaxEntriesPerKind = 16;

class ReportBuilder {
public:
    void add(Violation kind, std::vector<std::size_t> idx, std::string msg) {
        auto& count = counts_[static_cast<int>(kind)];
        ++count;
        if (count <= kMaxEntriesPerKind)
            report_.violations.push_back({kind, std::move(idx), std::move(msg)});
    }

    ValidationReport finish() && {
        for (int k = 0; k < kKinds; ++k) {
            if (counts_[k] > kMaxEntriesPerKind) {
                std::ostringstream m;
                m << (counts_[k] - kMaxEntriesPerKind) << " further "
                  << to_string(static_cast<Violation>(k)) << " violation(s) omitted";
                report_.violations.push_back({static_cast<Violation>(k), {}, m.str()});
            }
        }
        return std::move(report_);
    }

private:
    static constexpr int kKinds = 10;
    ValidationReport report_;
    std::size_t counts_[kKinds] = {};
};

std::string fmt_pair(std::size_t i, std::size_t j) {
    std::ostringstream o;
    o << "(" << i << "," << j << ")";
    return o.str();
}

}  // namespace

Validated validate_space(const RawSpace& raw, double triangle_rel_tol) {
    ReportBuilder rb;
    const std::size_t n = raw.labels.size();

    if (n == 0) {
        rb.add(Violation::Empty, {}, "space has no points");
        return {std::nullopt, std::move(rb).finish()};
    }
    bool dims_ok = true;
    if (raw.distances.size() != n) {
        std::ostringstream m;
        m << "distance matrix has " << raw.distances.size() << " rows, expected " << n;
        rb.add(Violation::DimensionMismatch, {}, m.str());
        dims_ok = false;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (raw.distances[i].size() != n) {
                std::ostringstream m;
                m << "row " << i << " has " << raw.distances[i].size() << " entries, expected " << n;
                rb.add(Violation::DimensionMismatch, {i}, m.str());
                dims_ok = false;
            }
        }
    }
    if (raw.masses.size() != n) {
        std::ostringstream m;
        m << "mass vector has " << raw.masses.size() << " entries, expected " << n;
        rb.add(Violation::DimensionMismatch, {}, m.str());
        dims_ok = false;
    }
    if (raw.root < 0 || static_cast<std::uint64_t>(raw.root) >= n) {
        std::ostringstream m;
        m << "root index " << raw.root << " outside [0," << n << ")";
        rb.add(Violation::InvalidRoot, {}, m.str());
    }
    if (!dims_ok) return {std::nullopt, std::move(rb).finish()};

    for (std::size_t i = 0; i < n; ++i) {
        const double m = raw.masses[i];
        if (!std::isfinite(m)) {
            rb.add(Violation::NonFinite, {i}, "mass[" + std::to_string(i) + "] is not finite");
        } else if (m < 0.0) {
            rb.add(Violation::NegativeMass, {i}, "mass[" + std::to_string(i) + "] is negative");
        }
    }

    bool finite = true;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = raw.distances[i][j];
            if (!std::isfinite(v)) {
                rb.add(Violation::NonFinite, {i, j}, "distance " + fmt_pair(i, j) + " is not finite");
                finite = false;
                continue;
            }
            scale = std::max(scale, std::abs(v));
            if (v < 0.0) rb.add(Violation::NegativeDistance, {i, j}, "distance " + fmt_pair(i, j) + " is negative");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double v = raw.distances[i][i];
        if (std::isfinite(v) && v != 0.0)
            rb.add(Violation::NonzeroDiagonal, {i, i}, "distance " + fmt_pair(i, i) + " is not zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = raw.distances[i][j], b = raw.distances[j][i];
            if (!std::isfinite(a) || !std::isfinite(b)) continue;
            if (a != b) {
                std::ostringstream m;
                m << "distance " << fmt_pair(i, j) << " = " << a << " differs from " << fmt_pair(j, i) << " = " << b;
                rb.add(Violation::Asymmetry, {i, j}, m.str());
            }
            if (a == 0.0 || b == 0.0)
                rb.add(Violation::Indefinite, {i, j}, "distinct points " + fmt_pair(i, j) + " at distance 0");
        }
    }

    if (finite) {
        const double tol = triangle_rel_tol * scale;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double dij = raw.distances[i][j];
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    const double direct = raw.distances[i][k];
                    const double via = dij + raw.distances[j][k];
                    if (direct > via + tol) {
                        std::ostringstream m;
                        m << "triangle (" << i << "," << j << "," << k << "): d(" << i << "," << k
                          << ") = " << direct << " > " << via << " = d(" << i << "," << j << ") + d(" << j
                          << "," << k << ")";
                        rb.add(Violation::Triangle, {i, j, k}, m.str());
                    }
                }
            }
    }

    ValidationReport report = std::move(rb).finish();
    if (!report.ok()) return {std::nullopt, std::move(report)};

    Space s;
    s.labels_ = raw.labels;
    s.dist_ = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.dist_(i, j) = raw.distances[i][j];
    s.root_ = static_cast<std::size_t>(raw.root);
    s.mass_.mass = raw.masses;
    return {std::move(s), std::move(report)};
}

Space Space::from_raw(const RawSpace& raw, double triangle_rel_tol) {
    Validated v = validate_space(raw, triangle_rel_tol);
    if (!v.space) throw ValidationError(std::move(v.report));
    return std::move(*v.space);
}

Space Space::singleton(double mass, std::string label) {
    RawSpace raw;
    raw.labels = {std::move(label)};
    raw.distances = {{0.0}};
    raw.root = 0;
    raw.masses = {mass};
    return from_raw(raw);
}

double Space::radius() const {
    double r = 0.0;
    for (std::size_t i = 0; i < size(); ++i) r = std::max(r, d(root_, i));
    return r;
}

RawSpace Space::to_raw() const {
    RawSpace raw;
    raw.labels = labels_;
    raw.root = static_cast<std::int64_t>(root_);
    raw.masses = mass_.mass;
    raw.distances.assign(size(), std::vector<double>(size()));
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) raw.distances[i][j] = d(i, j);
    return raw;
}

Subset check_subset(const Space& host, Subset indices) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw InputError("subset contains duplicate indices");
    if (!indices.empty() && indices.back() >= host.size())
        throw InputError("subset index " + std::to_string(indices.back()) + " out of range for a space of " +
                         std::to_string(host.size()) + " points");
    return indices;
}

void check_measure(const Space& host, const Measure& mu) {
    if (mu.size() != host.size())
        throw InputError("measure has " + std::to_string(mu.size()) + " entries, space has " +
                         std::to_string(host.size()) + " points");
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (!std::isfinite(mu.mass[i]) || mu.mass[i] < 0.0)
            throw InputError("measure entry " + std::to_string(i) + " must be finite and nonnegative");
}

Subset all_points(const Space& space) {
    Subset s(space.size());
    std::iota(s.begin(), s.end(), std::size_t{0});
    return s;
}

Subset halo(const Space& space, const Subset& a, double eps) {
    if (!(eps > 0.0)) throw InputError("halo requires eps > 0");
    Subset out;
    if (a.empty()) return out;
    for (std::size_t i = 0; i < space.size(); ++i) {
        for (std::size_t j : a) {
            if (space.d(i, j) < eps) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

Space induced_subspace(const Space& space, const Subset& points) {
    const auto root_it = std::find(points.begin(), points.end(), space.root());
    if (root_it == points.end()) throw InputError("induced sub-space must contain the root");
    Space s;
    const std::size_t m = points.size();
    s.labels_.reserve(m);
    s.mass_.mass.reserve(m);
    s.dist_ = Matrix(m, m);
    for (std::size_t a = 0; a < m; ++a) {
        if (points[a] >= space.size()) throw InputError("induced sub-space index out of range");
        s.labels_.push_back(space.labels()[points[a]]);
        s.mass_.mass.push_back(space.mass(points[a]));
        for (std::size_t b = 0; b < m; ++b) s.dist_(a, b) = space.d(points[a], points[b]);
    }
    s.root_ = static_cast<std::size_t>(root_it - points.begin());
    return s;
}

Restriction restrict_with_map(const Space& space, double r) {
    if (!(r >= 0.0)) throw InputError("restriction radius must be nonnegative");
    Subset ball;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (space.d(space.root(), i) <= r) ball.push_back(i);
    return {induced_subspace(space, ball), ball};
}

Space restrict(const Space& space, double r) { return restrict_with_map(space, r).space; }

double diameter(const Space& space) { return diameter(space, all_points(space)); }

double diameter(const Space& space, const Subset& subset) {
    double best = 0.0;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b) best = std::max(best, space.d(subset[a], subset[b]));
    return best;
}

Subset greedy_net(const Space& space, double eps) {
    if (!(eps > 0.0)) throw InputError("greedy_net requires eps > 0");
    const std::size_t n = space.size();
    std::vector<double> gap(n);
    for (std::size_t i = 0; i < n; ++i) gap[i] = space.d(space.root(), i);
    Subset net{space.root()};
    for (;;) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (gap[i] > gap[far]) far = i;
        if (gap[far] < eps) break;
        net.push_back(far);
        for (std::size_t i = 0; i < n; ++i) gap[i] = std::min(gap[i], space.d(far, i));
    }
    std::sort(net.begin(), net.end());
    return net;
}

std::vector<double> root_distance_breakpoints(const Space& space) {
    std::vector<double> b{0.0};
    for (std::size_t i = 0; i < space.size(); ++i) b.push_back(space.d(space.root(), i));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

}  // namespace ghp
