#include "ghp/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ghp/distances.hpp"

namespace ghp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs_entry(const Matrix& m) {
    double s = 0.0;
    for (double v : m.data()) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace

double distortion(const Space& x, const Space& y, const std::vector<IndexPair>& pairs) {
    double worst = 0.0;
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        const auto [i, j] = pairs[a];
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const auto [k, l] = pairs[b];
            worst = std::max(worst, std::abs(x.d(i, k) - y.d(j, l)));
        }
    }
    return worst;
}

Correspondence make_correspondence(const Space& x, const Space& y, std::vector<IndexPair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<bool> cx(x.size(), false), cy(y.size(), false);
    for (const auto& [i, j] : pairs) {
        if (i >= x.size() || j >= y.size())
            throw InputError("correspondence pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        cx[i] = true;
        cy[j] = true;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!cx[i]) throw InputError("correspondence does not cover point " + std::to_string(i) + " of X");
    for (std::size_t j = 0; j < y.size(); ++j)
        if (!cy[j]) throw InputError("correspondence does not cover point " + std::to_string(j) + " of Y");
    if (!std::binary_search(pairs.begin(), pairs.end(), IndexPair{x.root(), y.root()}))
        throw InputError("correspondence does not contain the root pair");
    Correspondence r;
    r.distortion = distortion(x, y, pairs);
    r.pairs = std::move(pairs);
    return r;
}

Correspondence identity_correspondence(const Space& x) {
    std::vector<IndexPair> pairs;
    pairs.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) pairs.emplace_back(i, i);
    return make_correspondence(x, x, std::move(pairs));
}

double cross_defect(const Space& x, const Space& y, const Matrix& c) {
    const std::size_t nx = x.size(), ny = y.size();
    if (c.rows() != nx || c.cols() != ny) return kInf;
    for (double v : c.data())
        if (!std::isfinite(v) || v < 0.0) return kInf;
    double worst = 0.0;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = i + 1; k < nx; ++k) {
                const double a = c(i, j), b = c(k, j), d = x.d(i, k);
                worst = std::max({worst, std::abs(a - b) - d, d - (a + b)});
            }
    for (std::size_t i = 0; i < nx; ++i) {
        const auto row = c.row(i);
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t l = j + 1; l < ny; ++l) {
                const double a = row[j], b = row[l], d = y.d(j, l);
                worst = std::max({worst, std::abs(a - b) - d, d - (a + b)});
            }
    }
    return worst;
}

CrossMetric make_cross(std::shared_ptr<const Space> x, std::shared_ptr<const Space> y, Matrix c, double rel_tol) {
    if (!x || !y) throw InputError("cross metric needs both spaces");
    if (c.rows() != x->size() || c.cols() != y->size())
        throw InputError("cross matrix shape does not match the spaces");
    const double scale = std::max({1.0, max_abs_entry(x->distances()), max_abs_entry(y->distances()), max_abs_entry(c)});
    const double defect = cross_defect(*x, *y, c);
    if (!(defect <= rel_tol * scale))
        throw InputError("cross matrix violates the mixed triangle inequalities by " + std::to_string(defect));
    return {std::move(x), std::move(y), std::move(c)};
}

Matrix correspondence_base(const Space& x, const Space& y, const Correspondence& r) {
    const std::size_t nx = x.size(), ny = y.size();
    Matrix c(nx, ny);
    // near[j'] = min over partners i' of j' of dX(i, i'), then a min-plus product with dY.
    std::vector<double> near(ny);
    for (std::size_t i = 0; i < nx; ++i) {
        std::fill(near.begin(), near.end(), kInf);
        for (const auto& [ip, jp] : r.pairs) near[jp] = std::min(near[jp], x.d(i, ip));
        auto out = c.row(i);
        for (std::size_t j = 0; j < ny; ++j) {
            const auto dy = y.distances().row(j);
            double best = kInf;
            for (std::size_t jp = 0; jp < ny; ++jp) best = std::min(best, near[jp] + dy[jp]);
            out[j] = best;
        }
    }
    return c;
}

Matrix correspondence_gluing(const Space& x, const Space& y, const Correspondence& r) {
    Matrix c = correspondence_base(x, y, r);
    const double half = 0.5 * r.distortion;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (double& v : c.row(i)) v += half;
    return c;
}

double minimal_offset(const Space& x, const Space& y, const Matrix& base) {
    const std::size_t nx = x.size(), ny = y.size();
    double need = 0.0;
    const Matrix bt = base.transposed();
    for (std::size_t j = 0; j < ny; ++j) {
        const auto col = bt.row(j);
        for (std::size_t i = 0; i < nx; ++i) {
            const auto dx = x.distances().row(i);
            const double ci = col[i];
            for (std::size_t k = i + 1; k < nx; ++k) need = std::max(need, dx[k] - ci - col[k]);
        }
    }
    for (std::size_t i = 0; i < nx; ++i) {
        const auto row = base.row(i);
        for (std::size_t j = 0; j < ny; ++j) {
            const auto dy = y.distances().row(j);
            const double cj = row[j];
            for (std::size_t l = j + 1; l < ny; ++l) need = std::max(need, dy[l] - cj - row[l]);
        }
    }
    return 0.5 * need;
}

Matrix tight_gluing(const Space& x, const Space& y, const Correspondence& r) {
    Matrix c = correspondence_base(x, y, r);
    const double t = std::min(minimal_offset(x, y, c), 0.5 * r.distortion);
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (double& v : c.row(i)) v += t;
    return c;
}

CrossMetric cross_from_correspondence(std::shared_ptr<const Space> x, std::shared_ptr<const Space> y,
                                      const Correspondence& r) {
    if (!x || !y) throw InputError("cross metric needs both spaces");
    // Re-derives coverage, root pair and distortion so a hand-built Correspondence cannot lie.
    const Correspondence checked = make_correspondence(*x, *y, r.pairs);
    Matrix c = correspondence_gluing(*x, *y, checked);
    return make_cross(std::move(x), std::move(y), std::move(c));
}

CrossMetric cross_from_correspondence(const Space& x, const Space& y, const Correspondence& r) {
    return cross_from_correspondence(std::make_shared<const Space>(x), std::make_shared<const Space>(y), r);
}

CrossMetric inclusion_cross(std::shared_ptr<const Space> x, std::shared_ptr<const Space> y,
                            const std::vector<std::size_t>& embedding, double rel_tol) {
    if (!x || !y) throw InputError("cross metric needs both spaces");
    if (embedding.size() != x->size()) throw InputError("embedding must map every point of X");
    for (std::size_t v : embedding)
        if (v >= y->size()) throw InputError("embedding index out of range");
    if (embedding[x->root()] != y->root()) throw InputError("embedding must map root to root");
    const double scale = std::max({1.0, max_abs_entry(x->distances()), max_abs_entry(y->distances())});
    for (std::size_t i = 0; i < x->size(); ++i)
        for (std::size_t k = 0; k < x->size(); ++k)
            if (std::abs(x->d(i, k) - y->d(embedding[i], embedding[k])) > rel_tol * scale)
                throw InputError("embedding is not isometric");
    Matrix c(x->size(), y->size());
    for (std::size_t i = 0; i < x->size(); ++i)
        for (std::size_t j = 0; j < y->size(); ++j) c(i, j) = y->d(embedding[i], j);
    return make_cross(std::move(x), std::move(y), std::move(c), rel_tol);
}

CrossMetric compose_cross(const CrossMetric& c12, const CrossMetric& c23) {
    if (!c12.right || !c23.left) throw InputError("cross metric needs both spaces");
    if (c12.right != c23.left && !(*c12.right == *c23.left))
        throw InputError("compose_cross: middle spaces differ");
    const std::size_t n1 = c12.cross.rows(), n2 = c12.cross.cols(), n3 = c23.cross.cols();
    Matrix c13(n1, n3, kInf);
    for (std::size_t i = 0; i < n1; ++i) {
        auto out = c13.row(i);
        for (std::size_t j = 0; j < n2; ++j) {
            const double a = c12.cross(i, j);
            const auto next = c23.cross.row(j);
            for (std::size_t k = 0; k < n3; ++k) out[k] = std::min(out[k], a + next[k]);
        }
    }
    return make_cross(c12.left, c23.right, std::move(c13));
}

ObjectiveTerms objective_terms(const Space& x, const Space& y, const Matrix& c) {
    if (c.rows() != x.size() || c.cols() != y.size()) throw InputError("cross matrix shape does not match the spaces");
    ObjectiveTerms t;
    t.root = c(x.root(), y.root());
    double from_x = 0.0;
    std::vector<double> col_min(y.size(), kInf);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto row = c.row(i);
        double row_min = kInf;
        for (std::size_t j = 0; j < y.size(); ++j) {
            row_min = std::min(row_min, row[j]);
            col_min[j] = std::min(col_min[j], row[j]);
        }
        from_x = std::max(from_x, row_min);
    }
    const double from_y = *std::max_element(col_min.begin(), col_min.end());
    t.hausdorff = std::max(from_x, from_y);
    t.prokhorov = BipartiteProkhorov(c, x.measure().mass, y.measure().mass).solve().value;
    return t;
}

double evaluate_objective(const CrossMetric& c) {
    if (!c.left || !c.right) throw InputError("cross metric needs both spaces");
    return objective_terms(*c.left, *c.right, c.cross).total();
}

double evaluate_objective(const Space& x, const Space& y, const CrossMetric& c) {
    return objective_terms(x, y, c.cross).total();
}

}  // namespace ghp
