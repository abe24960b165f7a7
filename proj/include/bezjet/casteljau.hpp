#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "bezjet/bernstein.hpp"
#include "bezjet/geometric_eval.hpp"
#include "bezjet/geometry.hpp"

namespace bezjet {

/// Full rational de Casteljau tableau. Column i holds the intermediate
/// weights omega^(i)_k and points W^(i)_k for k = 0..n-i; column 0 is the
/// input. All columns are kept because the Floater formulas and the
/// forward-difference derivative formula read interior columns.
struct CasteljauTableau {
    int n = 0;
    int dim = 0;
    std::vector<std::vector<double>> weight_cols;  // column i: n-i+1 values
    std::vector<std::vector<double>> point_cols;   // column i: (n-i+1)*dim values

    double weight(int i, int k) const { return weight_cols[i][k]; }
    std::span<const double> point(int i, int k) const {
        return {point_cols[i].data() + static_cast<std::size_t>(k) * dim,
                static_cast<std::size_t>(dim)};
    }
    Point value() const {
        auto p = point(n, 0);
        return Point(p.begin(), p.end());
    }
};

/// One rational de Casteljau step: weight blend first, then the weighted
/// point blend, exactly as in the classic two-step form.
inline CasteljauTableau casteljau_tableau(const RationalCurve& curve, double t) {
    check_unit_interval(t);
    for (double w : curve.weights)
        if (!(w > 0.0)) throw std::domain_error("casteljau: weights must be positive");

    const int n = curve.degree;
    const int d = curve.dim;
    CasteljauTableau tab;
    tab.n = n;
    tab.dim = d;
    tab.weight_cols.resize(static_cast<std::size_t>(n) + 1);
    tab.point_cols.resize(static_cast<std::size_t>(n) + 1);
    tab.weight_cols[0] = curve.weights;
    tab.point_cols[0] = curve.points;

    const double s = 1.0 - t;
    for (int i = 1; i <= n; ++i) {
        const auto& pw = tab.weight_cols[i - 1];
        const auto& pp = tab.point_cols[i - 1];
        auto& cw = tab.weight_cols[i];
        auto& cp = tab.point_cols[i];
        cw.resize(static_cast<std::size_t>(n - i) + 1);
        cp.resize((static_cast<std::size_t>(n - i) + 1) * d);
        for (int k = 0; k <= n - i; ++k) {
            const double w = s * pw[k] + t * pw[k + 1];
            cw[k] = w;
            const double a = s * pw[k] / w;
            const double b = t * pw[k + 1] / w;
            for (int c = 0; c < d; ++c)
                cp[static_cast<std::size_t>(k) * d + c] =
                    a * pp[static_cast<std::size_t>(k) * d + c] +
                    b * pp[static_cast<std::size_t>(k + 1) * d + c];
        }
    }
    return tab;
}

namespace detail {

// In-place rational de Casteljau down to column `stop`, O(n) memory.
// On return `wts` and `pts` hold the first n-stop+1 entries of column `stop`.
inline void casteljau_advance(std::vector<double>& wts, std::vector<double>& pts,
                              int n, int dim, double t, int start, int stop) {
    const double s = 1.0 - t;
    for (int i = start; i <= stop; ++i) {
        for (int k = 0; k <= n - i; ++k) {
            const double w = s * wts[k] + t * wts[k + 1];
            const double a = s * wts[k] / w;
            const double b = t * wts[k + 1] / w;
            wts[k] = w;
            double* p = pts.data() + static_cast<std::size_t>(k) * dim;
            const double* q = p + dim;
            for (int c = 0; c < dim; ++c) p[c] = a * p[c] + b * q[c];
        }
    }
}

// Polynomial variant (no weights).
inline void casteljau_advance_poly(std::vector<double>& pts, int n, int dim,
                                   double t, int start, int stop) {
    const double s = 1.0 - t;
    for (int i = start; i <= stop; ++i) {
        for (int k = 0; k <= n - i; ++k) {
            double* p = pts.data() + static_cast<std::size_t>(k) * dim;
            const double* q = p + dim;
            for (int c = 0; c < dim; ++c) p[c] = s * p[c] + t * q[c];
        }
    }
}

}  // namespace detail

/// Value-only rational de Casteljau, O(n) memory (used for timing fairness).
inline Point casteljau_value(const RationalCurve& curve, double t) {
    check_unit_interval(t);
    std::vector<double> wts = curve.weights;
    std::vector<double> pts = curve.points;
    detail::casteljau_advance(wts, pts, curve.degree, curve.dim, t, 1, curve.degree);
    return Point(pts.begin(), pts.begin() + curve.dim);
}

/// Classical polynomial jet: P^(j)(t) = n!/(n-j)! Delta^j W^(n-j)_0, with the
/// forward differences expanded as alternating-sign binomial sums, so the
/// total cost is O(d(n^2 + r^2)).
inline DerivativeJet poly_derivatives_dc(std::span<const double> points, int dim,
                                         double t, int r) {
    if (dim < 1 || points.empty() || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("poly_derivatives_dc: bad point data shape");
    const int n = static_cast<int>(points.size()) / dim - 1;
    if (r < 0 || r > n)
        throw std::domain_error("poly_derivatives_dc: order must satisfy 0 <= r <= n");
    check_unit_interval(t);

    std::vector<double> pts(points.begin(), points.end());
    detail::casteljau_advance_poly(pts, n, dim, t, 1, n - r);

    DerivativeJet jet = make_jet(dim, r);
    const BinomialTable binom = binomial_table(r);

    // Column n-j is reached when j entries remain to collapse; factorial
    // prefactor n!/(n-j)! accumulates as we walk j downward.
    double factor = 1.0;
    for (int j = 0; j < r; ++j) factor *= (n - j);
    for (int j = r; j >= 1; --j) {
        auto out = jet.order(j);
        for (int k = 0; k <= j; ++k) {
            const double sign = ((j - k) % 2 == 0) ? 1.0 : -1.0;
            const double coeff = sign * static_cast<double>(binom.at(j, k)) * factor;
            const double* p = pts.data() + static_cast<std::size_t>(k) * dim;
            for (int c = 0; c < dim; ++c) out[c] += coeff * p[c];
        }
        factor /= (n - j + 1);
        detail::casteljau_advance_poly(pts, n, dim, t, n - j + 1, n - j + 1);
    }
    for (int c = 0; c < dim; ++c) jet.order(0)[c] = pts[c];
    return jet;
}

}  // namespace bezjet
