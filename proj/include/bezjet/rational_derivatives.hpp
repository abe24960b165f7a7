#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "bezjet/bernstein.hpp"
#include "bezjet/casteljau.hpp"
#include "bezjet/geometric_eval.hpp"
#include "bezjet/geometry.hpp"
#include "bezjet/poly_derivatives.hpp"

namespace bezjet {

/// Reversed control polygon; the reversed curve at 1-t traces the original
/// at t, with order-k derivatives picking up a factor (-1)^k.
inline RationalCurve reverse_curve(const RationalCurve& curve) {
    RationalCurve rev;
    rev.degree = curve.degree;
    rev.dim = curve.dim;
    rev.weights.assign(curve.weights.rbegin(), curve.weights.rend());
    rev.points.resize(curve.points.size());
    const int n = curve.degree;
    const int d = curve.dim;
    for (int k = 0; k <= n; ++k)
        for (int c = 0; c < d; ++c)
            rev.points[static_cast<std::size_t>(n - k) * d + c] =
                curve.points[static_cast<std::size_t>(k) * d + c];
    return rev;
}

namespace detail {

// First two derivatives from the column n-2 quantities of the rational
// de Casteljau tableau (Floater's closed forms). Requires n >= 2.
// w2/p2 hold omega^(n-2)_k and W^(n-2)_k for k = 0,1,2.
inline void floater_from_column(int n, int dim, const double* w2, const double* p2,
                                double t, DerivativeJet& jet) {
    const double s = 1.0 - t;
    // Two remaining de Casteljau steps.
    const double w1_0 = s * w2[0] + t * w2[1];
    const double w1_1 = s * w2[1] + t * w2[2];
    const double w0 = s * w1_0 + t * w1_1;

    std::vector<double> p1(static_cast<std::size_t>(2) * dim);
    for (int c = 0; c < dim; ++c) {
        p1[c] = (s * w2[0] * p2[c] + t * w2[1] * p2[dim + c]) / w1_0;
        p1[dim + c] =
            (s * w2[1] * p2[dim + c] + t * w2[2] * p2[2 * dim + c]) / w1_1;
    }
    for (int c = 0; c < dim; ++c)
        jet.order(0)[c] = (s * w1_0 * p1[c] + t * w1_1 * p1[dim + c]) / w0;

    if (jet.orders() >= 1) {
        const double factor = n * w1_0 * w1_1 / (w0 * w0);
        for (int c = 0; c < dim; ++c)
            jet.order(1)[c] = factor * (p1[dim + c] - p1[c]);
    }
    if (jet.orders() >= 2) {
        const double w0_3 = w0 * w0 * w0;
        const double a = n * w2[2] / w0_3 *
                         (2.0 * n * w1_0 * w1_0 - (n - 1.0) * w2[0] * w0 -
                          2.0 * w1_0 * w0);
        const double b = n * w2[0] / w0_3 *
                         (2.0 * n * w1_1 * w1_1 - (n - 1.0) * w2[2] * w0 -
                          2.0 * w1_1 * w0);
        for (int c = 0; c < dim; ++c)
            jet.order(2)[c] = a * (p2[2 * dim + c] - p2[dim + c]) -
                              b * (p2[dim + c] - p2[c]);
    }
}

// Low-degree cases the Floater second-derivative display does not cover.
// n = 1: first derivative by the quotient rule, second from the k > n
// recurrence R'' = -2 A_1 R' / A_0.
inline void floater_low_degree(const RationalCurve& curve, double t,
                               DerivativeJet& jet) {
    const int d = curve.dim;
    const int r = jet.orders();
    if (curve.degree == 0) {
        for (int c = 0; c < d; ++c) jet.order(0)[c] = curve.points[c];
        return;
    }
    const double w0 = curve.weights[0];
    const double w1 = curve.weights[1];
    const double a0 = (1.0 - t) * w0 + t * w1;
    for (int c = 0; c < d; ++c)
        jet.order(0)[c] =
            ((1.0 - t) * w0 * curve.points[c] + t * w1 * curve.points[d + c]) / a0;
    if (r >= 1) {
        const double factor = w0 * w1 / (a0 * a0);
        for (int c = 0; c < d; ++c)
            jet.order(1)[c] = factor * (curve.points[d + c] - curve.points[c]);
    }
    if (r >= 2) {
        const double a1 = w1 - w0;
        for (int c = 0; c < d; ++c)
            jet.order(2)[c] = -2.0 * a1 * jet.order(1)[c] / a0;
    }
}

// Single sweep producing omega^(n-2)_k and W^(n-2)_k for k = 0,1,2: the
// shared polynomial h recurrence for the three shifted weight curves and the
// three rational h recurrences for the shifted point curves are independent,
// so all four chains run in one i loop. m = n-2; Dim as in eval_with_h_loop.
template <int Dim>
inline void floater_fast_sweep(const double* wt, const double* pt, int m, int dim,
                               double t, double* w2, double* p2) {
    const int d = Dim > 0 ? Dim : dim;
    const double s = 1.0 - t;
    double hp = 1.0, hr0 = 1.0, hr1 = 1.0, hr2 = 1.0;
    w2[0] = wt[0];
    w2[1] = wt[1];
    w2[2] = wt[2];
    for (int k = 0; k < 3; ++k)
        for (int c = 0; c < d; ++c)
            p2[static_cast<std::size_t>(k) * d + c] =
                pt[static_cast<std::size_t>(k) * d + c];
    for (int i = 1; i <= m; ++i) {
        const double is = i * s;
        const double nump = hp * t * (m - i + 1);
        hp = nump / (is + nump);
        const double num0 = wt[i] * hr0 * t * (m - i + 1);
        hr0 = num0 / (wt[i - 1] * is + num0);
        const double num1 = wt[i + 1] * hr1 * t * (m - i + 1);
        hr1 = num1 / (wt[i] * is + num1);
        const double num2 = wt[i + 2] * hr2 * t * (m - i + 1);
        hr2 = num2 / (wt[i + 1] * is + num2);
        const double gp = 1.0 - hp;
        w2[0] = gp * w2[0] + hp * wt[i];
        w2[1] = gp * w2[1] + hp * wt[i + 1];
        w2[2] = gp * w2[2] + hp * wt[i + 2];
        const double g0 = 1.0 - hr0;
        const double g1 = 1.0 - hr1;
        const double g2 = 1.0 - hr2;
        const double* q = pt + static_cast<std::size_t>(i) * d;
        for (int c = 0; c < d; ++c) {
            p2[c] = g0 * p2[c] + hr0 * q[c];
            p2[d + c] = g1 * p2[d + c] + hr1 * q[d + c];
            p2[2 * d + c] = g2 * p2[2 * d + c] + hr2 * q[2 * d + c];
        }
    }
}

}  // namespace detail

/// Floater's closed forms fed by a full O(n^2) rational de Casteljau pass.
inline DerivativeJet floater_jet2_baseline(const RationalCurve& curve, double t,
                                           int r = 2) {
    if (r < 0 || r > 2)
        throw std::domain_error("floater_jet2: order must be 0, 1 or 2");
    check_unit_interval(t);
    for (double w : curve.weights)
        if (!(w > 0.0)) throw std::domain_error("floater_jet2: weights must be positive");

    DerivativeJet jet = make_jet(curve.dim, std::min(r, 2));
    if (curve.degree < 2) {
        detail::floater_low_degree(curve, t, jet);
        return jet;
    }
    std::vector<double> wts = curve.weights;
    std::vector<double> pts = curve.points;
    detail::casteljau_advance(wts, pts, curve.degree, curve.dim, t, 1,
                              curve.degree - 2);
    detail::floater_from_column(curve.degree, curve.dim, wts.data(), pts.data(), t,
                                jet);
    return jet;
}

/// Accelerated Floater: the column n-2 quantities are degree-(n-2) curves
/// (1-dimensional for the weights, rational for the points), so the
/// linear-time scheme produces them in O(nd); only the last two de Casteljau
/// steps remain.
inline DerivativeJet floater_jet2_fast(const RationalCurve& curve, double t,
                                       int r = 2) {
    if (r < 0 || r > 2)
        throw std::domain_error("floater_jet2: order must be 0, 1 or 2");
    check_unit_interval(t);
    for (double w : curve.weights)
        if (!(w > 0.0)) throw std::domain_error("floater_jet2: weights must be positive");

    const int n = curve.degree;
    const int d = curve.dim;
    DerivativeJet jet = make_jet(d, std::min(r, 2));
    if (n < 2) {
        detail::floater_low_degree(curve, t, jet);
        return jet;
    }

    // omega^(n-2)_k = sum_i omega_{i+k} B^{n-2}_i(t): three shifted weight
    // curves sharing the polynomial h recurrence, three shifted rational
    // point curves with their own h recurrences, all in one sweep.
    const int m = n - 2;
    double w2[3];
    std::vector<double> p2(static_cast<std::size_t>(3) * d);
    switch (d) {
        case 1: detail::floater_fast_sweep<1>(curve.weights.data(), curve.points.data(), m, d, t, w2, p2.data()); break;
        case 2: detail::floater_fast_sweep<2>(curve.weights.data(), curve.points.data(), m, d, t, w2, p2.data()); break;
        case 3: detail::floater_fast_sweep<3>(curve.weights.data(), curve.points.data(), m, d, t, w2, p2.data()); break;
        default: detail::floater_fast_sweep<0>(curve.weights.data(), curve.points.data(), m, d, t, w2, p2.data()); break;
    }
    detail::floater_from_column(n, d, w2, p2.data(), t, jet);
    return jet;
}

/// First and second derivative by differentiating the geometric scheme
/// (the unrolled order-1/order-2 recurrences).
inline DerivativeJet scheme_jet12(const RationalCurve& curve, double t, int r = 2) {
    if (r < 0 || r > 2)
        throw std::domain_error("scheme_jet12: order must be 0, 1 or 2");
    check_unit_interval(t);
    const int n = curve.degree;
    const int d = curve.dim;
    const auto& w = curve.weights;

    HState st = h_values(w, t);
    DerivativeJet jet = make_jet(d, r);

    std::vector<double> q(static_cast<std::size_t>(3) * d, 0.0);  // Q, Q', Q''
    for (int c = 0; c < d; ++c) q[c] = curve.points[c];
    double hp = 0.0, hpp = 0.0;  // h'_{i-1}, h''_{i-1}
    double h_prev = 1.0;
    for (int i = 1; i <= n; ++i) {
        const double hi = st.h[i];
        const double fi = st.f[i - 1];
        const double ci = w[i - 1] * i / (w[i] * (n - i + 1.0));
        const double g1 = t * hp + h_prev;
        const double hip = fi * ((1.0 - hi) * g1 + ci * hi);
        double hipp = 0.0;
        if (r >= 2)
            hipp = fi * ((1.0 - hi) * (t * hpp + 2.0 * hp) - 2.0 * hip * g1 +
                         2.0 * ci * hip);

        const double* wi = curve.points.data() + static_cast<std::size_t>(i) * d;
        for (int c = 0; c < d; ++c) {
            const double diff = wi[c] - q[c];
            const double q1 = q[d + c];
            if (r >= 2)
                q[2 * d + c] = hipp * diff - 2.0 * hip * q1 + (1.0 - hi) * q[2 * d + c];
            if (r >= 1) q[d + c] = (1.0 - hi) * q1 + hip * diff;
            q[c] = (1.0 - hi) * q[c] + hi * wi[c];
        }
        hp = hip;
        hpp = hipp;
        h_prev = hi;
    }
    for (int k = 0; k <= r; ++k)
        for (int c = 0; c < d; ++c)
            jet.order(k)[c] = q[static_cast<std::size_t>(k) * d + c];
    return jet;
}

struct SchemeOptions {
    // The differentiated scheme loses accuracy for high orders at t near 1;
    // evaluating the reversed curve at 1-t restores it. The cutoff is a knob
    // because only t close to 1 was observed to misbehave.
    bool use_reversal = true;
    double reversal_cutoff = 0.5;
};

namespace detail {

// General differential recurrence: all orders k = 0..r carried along the
// single i = 1..n sweep, O(n d r^2).
inline DerivativeJet scheme_jet_direct(const RationalCurve& curve, double t, int r) {
    const int n = curve.degree;
    const int d = curve.dim;
    const auto& w = curve.weights;

    HState st = h_values(w, t);
    const BinomialTable binom = binomial_table(r);

    std::vector<double> hprev(static_cast<std::size_t>(r) + 1, 0.0);
    std::vector<double> hcur(static_cast<std::size_t>(r) + 1, 0.0);
    std::vector<double> g(static_cast<std::size_t>(r) + 1, 0.0);
    std::vector<double> qprev((static_cast<std::size_t>(r) + 1) * d, 0.0);
    std::vector<double> qcur((static_cast<std::size_t>(r) + 1) * d, 0.0);
    hprev[0] = 1.0;
    for (int c = 0; c < d; ++c) qprev[c] = curve.points[c];

    for (int i = 1; i <= n; ++i) {
        const double hi = st.h[i];
        const double fi = st.f[i - 1];
        const double ci = w[i - 1] * i / (w[i] * (n - i + 1.0));
        for (int j = 1; j <= r; ++j) g[j] = t * hprev[j] + j * hprev[j - 1];

        hcur[0] = hi;
        for (int k = 1; k <= r; ++k) {
            double acc = (1.0 - hi) * g[k] + ci * k * hcur[k - 1];
            for (int j = 1; j <= k - 1; ++j)
                acc -= static_cast<double>(binom.at(k, j)) * hcur[k - j] * g[j];
            hcur[k] = fi * acc;
        }

        const double* wi = curve.points.data() + static_cast<std::size_t>(i) * d;
        for (int c = 0; c < d; ++c)
            qcur[c] = (1.0 - hi) * qprev[c] + hi * wi[c];
        for (int k = 1; k <= r; ++k) {
            double* out = qcur.data() + static_cast<std::size_t>(k) * d;
            const double hk = hcur[k];
            for (int c = 0; c < d; ++c)
                out[c] = hk * (wi[c] - qprev[c]) +
                         qprev[static_cast<std::size_t>(k) * d + c];
            for (int j = 0; j <= k - 1; ++j) {
                const double coeff =
                    static_cast<double>(binom.at(k, j)) * hcur[j];
                const double* qkj =
                    qprev.data() + static_cast<std::size_t>(k - j) * d;
                for (int c = 0; c < d; ++c) out[c] -= coeff * qkj[c];
            }
        }
        hprev.swap(hcur);
        qprev.swap(qcur);
    }

    DerivativeJet jet = make_jet(d, r);
    for (int k = 0; k <= r; ++k)
        for (int c = 0; c < d; ++c)
            jet.order(k)[c] = qprev[static_cast<std::size_t>(k) * d + c];
    return jet;
}

}  // namespace detail

/// Derivatives of any order by differentiating the geometric scheme.
/// For t beyond the reversal cutoff the reversed curve is evaluated at 1-t
/// and odd orders flip sign.
inline DerivativeJet scheme_jet(const RationalCurve& curve, double t, int r,
                                const SchemeOptions& opts = {}) {
    if (r < 0) throw std::domain_error("scheme_jet: order must be >= 0");
    check_unit_interval(t);
    for (double w : curve.weights)
        if (!(w > 0.0)) throw std::domain_error("scheme_jet: weights must be positive");

    if (opts.use_reversal && t > opts.reversal_cutoff) {
        DerivativeJet jet =
            detail::scheme_jet_direct(reverse_curve(curve), 1.0 - t, r);
        for (int k = 1; k <= r; k += 2)
            for (double& v : jet.order(k)) v = -v;
        return jet;
    }
    return detail::scheme_jet_direct(curve, t, r);
}

/// Derivatives of any order from the Leibniz-rule identity
///   R^(k) = (1/A_0) (d^k/dt^k [weighted numerator]
///           - sum_{i<k} C(k,i) R^(i) A_{k-i}),
/// with the numerator derivative assembled from the weighted Bernstein
/// derivative values b^(n,k)_j = omega_j d^k B^n_j(t). When A_k != 0 the
/// positive/negative split of the b values yields the points D+-, combined
/// into D_k; when A_k vanishes the same sum is a genuine vector V_k; for
/// k > n only the recurrence over previous orders remains.
inline DerivativeJet leibniz_jet(const RationalCurve& curve, double t, int r) {
    if (r < 0) throw std::domain_error("leibniz_jet: order must be >= 0");
    check_unit_interval(t);
    for (double w : curve.weights)
        if (!(w > 0.0)) throw std::domain_error("leibniz_jet: weights must be positive");

    const int n = curve.degree;
    const int d = curve.dim;
    const int rn = std::min(r, n);
    const auto& wts = curve.weights;

    const BernsteinDerivTable table = bernstein_deriv_table(n, t, rn);
    const BinomialTable binom = binomial_table(r);

    // A_i = i-th derivative of the weight polynomial, evaluated as
    // degree-(n-i) polynomial curves with 1-dimensional control points.
    DerivativeJet ajet = derivatives_reduced(wts, 1, t, rn);
    std::vector<double> a(static_cast<std::size_t>(r) + 1, 0.0);
    for (int i = 0; i <= rn; ++i) a[i] = ajet.order(i)[0];
    const double a0 = a[0];

    DerivativeJet jet = make_jet(d, r);
    {
        Point value = eval_rational(curve, t);
        for (int c = 0; c < d; ++c) jet.order(0)[c] = value[c];
    }

    std::vector<double> bpos(static_cast<std::size_t>(n) + 1);
    std::vector<double> bneg(static_cast<std::size_t>(n) + 1);
    std::vector<double> ones(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<double> correction(static_cast<std::size_t>(d));

    for (int k = 1; k <= r; ++k) {
        auto out = jet.order(k);
        std::fill(correction.begin(), correction.end(), 0.0);
        for (int i = std::max(1, k - n); i <= k - 1; ++i) {
            const double coeff = static_cast<double>(binom.at(k, i)) * a[k - i];
            if (coeff == 0.0) continue;
            auto ri = jet.order(i);
            for (int c = 0; c < d; ++c) correction[c] += coeff * ri[c];
        }

        if (k > n) {
            for (int c = 0; c < d; ++c) out[c] = -correction[c] / a0;
            continue;
        }

        double bplus = 0.0, bminus = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double b = wts[j] * table.at(k, j);
            if (b >= 0.0) {
                bpos[j] = b;
                bneg[j] = 0.0;
                bplus += b;
            } else {
                bpos[j] = 0.0;
                bneg[j] = -b;
                bminus -= b;
            }
        }

        if (std::abs(a[k]) <= 1e-12 * (bplus + bminus)) {
            // V_k path: coefficients sum to (numerically) zero, so the sum is
            // a vector relative to W_0.
            for (int c = 0; c < d; ++c) out[c] = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double b = wts[j] * table.at(k, j);
                if (b == 0.0) continue;
                const double* wj =
                    curve.points.data() + static_cast<std::size_t>(j) * d;
                for (int c = 0; c < d; ++c) out[c] += b * (wj[c] - curve.points[c]);
            }
            for (int c = 0; c < d; ++c) out[c] = (out[c] - correction[c]) / a0;
        } else {
            // D_k path via the sign-split rational parametric objects.
            for (int c = 0; c < d; ++c) out[c] = 0.0;
            if (bplus > 0.0) {
                Point dpos = eval_parametric(curve.points, d, ones, bpos);
                const double coeff = bplus / a[k];
                for (int c = 0; c < d; ++c) out[c] += coeff * dpos[c];
            }
            if (bminus > 0.0) {
                Point dneg = eval_parametric(curve.points, d, ones, bneg);
                const double coeff = bminus / a[k];
                for (int c = 0; c < d; ++c) out[c] -= coeff * dneg[c];
            }
            const auto value = jet.order(0);
            const double lead = a[k] / a0;
            for (int c = 0; c < d; ++c)
                out[c] = lead * (out[c] - value[c]) - correction[c] / a0;
        }
    }
    return jet;
}

}  // namespace bezjet
