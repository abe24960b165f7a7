#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "bezjet/geometry.hpp"

namespace bezjet {

/// Counters for the operation-count checks. Passed as an optional pointer;
/// production callers pass nullptr and pay a single branch per h-state.
struct EvalCounters {
    std::uint64_t h_values_computed = 0;  // individual h_i entries, h_0 included
};

/// The running convex-blend factors of the linear-time scheme:
///   h_i = omega_i B^n_i(t) / sum_{k<=i} omega_k B^n_k(t),  h_0 = 1,
/// together with f_i = h_i / (t h_{i-1}), which is independent of h_i:
///   f_i = omega_i (n-i+1) / (omega_{i-1} i (1-t) + omega_i h_{i-1} t (n-i+1)).
/// f is indexed 1..n and stored at f[i-1].
struct HState {
    int n = 0;
    double t = 0.0;
    std::vector<double> h;  // n+1
    std::vector<double> f;  // n
};

inline void check_unit_interval(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("parameter t must lie in [0,1]");
}

inline HState h_values(std::span<const double> weights, double t,
                       EvalCounters* counters = nullptr) {
    const int n = static_cast<int>(weights.size()) - 1;
    if (n < 0) throw std::invalid_argument("h_values: empty weight list");
    check_unit_interval(t);
    for (double w : weights)
        if (!(w > 0.0)) throw std::domain_error("h_values: weights must be positive");

    HState state;
    state.n = n;
    state.t = t;
    state.h.resize(static_cast<std::size_t>(n) + 1);
    state.f.resize(static_cast<std::size_t>(n));
    state.h[0] = 1.0;
    const double s = 1.0 - t;
    for (int i = 1; i <= n; ++i) {
        const double num = weights[i] * state.h[i - 1] * t * (n - i + 1);
        const double den = weights[i - 1] * i * s + num;
        state.h[i] = num / den;
        state.f[i - 1] = weights[i] * (n - i + 1) / den;
    }
    if (counters) counters->h_values_computed += static_cast<std::uint64_t>(n) + 1;
    return state;
}

/// Equal-weight (polynomial) specialization; the weights cancel.
inline HState h_values_poly(int n, double t, EvalCounters* counters = nullptr) {
    if (n < 0) throw std::invalid_argument("h_values_poly: degree must be >= 0");
    check_unit_interval(t);
    HState state;
    state.n = n;
    state.t = t;
    state.h.resize(static_cast<std::size_t>(n) + 1);
    state.f.resize(static_cast<std::size_t>(n));
    state.h[0] = 1.0;
    const double s = 1.0 - t;
    for (int i = 1; i <= n; ++i) {
        const double num = state.h[i - 1] * t * (n - i + 1);
        const double den = i * s + num;
        state.h[i] = num / den;
        state.f[i - 1] = (n - i + 1) / den;
    }
    if (counters) counters->h_values_computed += static_cast<std::uint64_t>(n) + 1;
    return state;
}

namespace detail {

// h entries only, written into a caller-owned buffer of size n+1. Bitwise
// the same h sequence as h_values_poly, skipping the f divisions.
inline void h_poly_only(int n, double t, double* h, EvalCounters* counters) {
    h[0] = 1.0;
    const double s = 1.0 - t;
    for (int i = 1; i <= n; ++i) {
        const double num = h[i - 1] * t * (n - i + 1);
        h[i] = num / (i * s + num);
    }
    if (counters) counters->h_values_computed += static_cast<std::uint64_t>(n) + 1;
}

// Same for general weights: bitwise the h sequence of h_values, skipping the
// f divisions.
inline void h_rational_only(const double* w, int n, double t, double* h,
                            EvalCounters* counters) {
    h[0] = 1.0;
    const double s = 1.0 - t;
    for (int i = 1; i <= n; ++i) {
        const double num = w[i] * h[i - 1] * t * (n - i + 1);
        h[i] = num / (w[i - 1] * i * s + num);
    }
    if (counters) counters->h_values_computed += static_cast<std::uint64_t>(n) + 1;
}

// Q_0 = W_0; Q_i = (1-h_i) Q_{i-1} + h_i W_i; result Q_n written to out.
// Dim > 0 fixes the coordinate count at compile time (Dim = 0: runtime dim);
// the arithmetic is identical either way, so results are bit-equal.
template <int Dim>
inline void eval_with_h_loop(const double* pts, int n, int dim, const double* h,
                             double* out) {
    const int d = Dim > 0 ? Dim : dim;
    for (int c = 0; c < d; ++c) out[c] = pts[c];
    for (int i = 1; i <= n; ++i) {
        const double hi = h[i];
        const double gi = 1.0 - hi;
        const double* w = pts + static_cast<std::size_t>(i) * d;
        for (int c = 0; c < d; ++c) out[c] = gi * out[c] + hi * w[c];
    }
}

inline void eval_with_h_raw(const double* pts, int n, int dim, const double* h,
                            double* out) {
    switch (dim) {
        case 1: return eval_with_h_loop<1>(pts, n, dim, h, out);
        case 2: return eval_with_h_loop<2>(pts, n, dim, h, out);
        case 3: return eval_with_h_loop<3>(pts, n, dim, h, out);
        default: return eval_with_h_loop<0>(pts, n, dim, h, out);
    }
}

}  // namespace detail

/// Evaluate a curve from a precomputed HState (the batch-reuse pattern: one
/// HState shared by all curves with the same degree, weights and t).
inline Point eval_with_h(std::span<const double> points, int dim, const HState& state) {
    if (dim < 1 || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("eval_with_h: bad point data shape");
    const int n = static_cast<int>(points.size()) / dim - 1;
    if (n != state.n)
        throw std::invalid_argument("eval_with_h: degree mismatch with HState");
    Point out(static_cast<std::size_t>(dim));
    detail::eval_with_h_raw(points.data(), n, dim, state.h.data(), out.data());
    return out;
}

/// Linear-time geometric evaluation of a rational Bezier curve.
inline Point eval_rational(const RationalCurve& curve, double t,
                           EvalCounters* counters = nullptr) {
    HState state = h_values(curve.weights, t, counters);
    return eval_with_h(curve.points, curve.dim, state);
}

/// Generalized rational parametric object: sum w_k b_k W_k / sum w_k b_k for
/// nonnegative basis values b_k (not necessarily normalized). Leading indices
/// with b_k = 0 are skipped; the first positive term seeds Q.
inline Point eval_parametric(std::span<const double> points, int dim,
                             std::span<const double> weights,
                             std::span<const double> basis) {
    if (dim < 1 || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("eval_parametric: bad point data shape");
    const std::size_t count = points.size() / dim;
    if (weights.size() != count || basis.size() != count)
        throw std::invalid_argument("eval_parametric: size mismatch");

    Point out(static_cast<std::size_t>(dim), 0.0);
    double running = 0.0;  // sum_{k<=i} w_k b_k of the terms seen so far
    bool seeded = false;
    for (std::size_t k = 0; k < count; ++k) {
        if (basis[k] < 0.0)
            throw std::domain_error("eval_parametric: negative basis value");
        if (!(weights[k] > 0.0))
            throw std::domain_error("eval_parametric: weights must be positive");
        const double term = weights[k] * basis[k];
        if (term == 0.0) continue;
        const double* w = points.data() + k * dim;
        if (!seeded) {
            running = term;
            for (int c = 0; c < dim; ++c) out[c] = w[c];
            seeded = true;
            continue;
        }
        running += term;
        const double hk = term / running;
        const double gk = 1.0 - hk;
        for (int c = 0; c < dim; ++c) out[c] = gk * out[c] + hk * w[c];
    }
    if (!seeded) throw std::domain_error("eval_parametric: degenerate basis");
    return out;
}

}  // namespace bezjet
