#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "bezjet/geometric_eval.hpp"
#include "bezjet/geometry.hpp"

namespace bezjet {

/// Control vectors of the successive hodographs:
///   level 0: the control points, level j: v^(j)_k = (n-j+1)(v^(j-1)_{k+1} - v^(j-1)_k),
/// so level j holds the n-j+1 control vectors of the degree-(n-j) vector curve
/// equal to the j-th derivative.
struct ControlVectorPyramid {
    int n = 0;
    int dim = 0;
    std::vector<std::vector<double>> levels;  // level j: (n-j+1)*dim

    std::span<const double> level(int j) const { return levels[j]; }
};

inline ControlVectorPyramid control_vector_pyramid(std::span<const double> points,
                                                   int dim, int r) {
    if (dim < 1 || points.empty() || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("control_vector_pyramid: bad point data shape");
    const int n = static_cast<int>(points.size()) / dim - 1;
    if (r < 0 || r > n)
        throw std::domain_error("control_vector_pyramid: order must satisfy 0 <= r <= n");

    ControlVectorPyramid pyr;
    pyr.n = n;
    pyr.dim = dim;
    pyr.levels.resize(static_cast<std::size_t>(r) + 1);
    pyr.levels[0].assign(points.begin(), points.end());
    for (int j = 1; j <= r; ++j) {
        const auto& prev = pyr.levels[j - 1];
        auto& cur = pyr.levels[j];
        cur.resize((static_cast<std::size_t>(n - j) + 1) * dim);
        const double factor = n - j + 1;
        for (int k = 0; k <= n - j; ++k)
            for (int c = 0; c < dim; ++c)
                cur[static_cast<std::size_t>(k) * dim + c] =
                    factor * (prev[static_cast<std::size_t>(k + 1) * dim + c] -
                              prev[static_cast<std::size_t>(k) * dim + c]);
    }
    return pyr;
}

/// Kept-degree control vectors: every level stays at degree n,
///   u^(j)_k = (n-k) Delta u^(j-1)_k + k Delta u^(j-1)_{k-1}.
struct KeptDegreeVectors {
    int n = 0;
    int dim = 0;
    std::vector<std::vector<double>> levels;  // each level: (n+1)*dim

    std::span<const double> level(int j) const { return levels[j]; }
};

inline KeptDegreeVectors kept_degree_vectors(std::span<const double> points,
                                             int dim, int r) {
    if (dim < 1 || points.empty() || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("kept_degree_vectors: bad point data shape");
    const int n = static_cast<int>(points.size()) / dim - 1;
    if (r < 0) throw std::domain_error("kept_degree_vectors: order must be >= 0");

    KeptDegreeVectors kd;
    kd.n = n;
    kd.dim = dim;
    kd.levels.resize(static_cast<std::size_t>(r) + 1);
    kd.levels[0].assign(points.begin(), points.end());
    for (int j = 1; j <= r; ++j) {
        const auto& prev = kd.levels[j - 1];
        auto& cur = kd.levels[j];
        cur.assign((static_cast<std::size_t>(n) + 1) * dim, 0.0);
        for (int k = 0; k < n; ++k) {
            const double* pk = prev.data() + static_cast<std::size_t>(k) * dim;
            double* ck = cur.data() + static_cast<std::size_t>(k) * dim;
            for (int c = 0; c < dim; ++c) {
                const double delta = pk[dim + c] - pk[c];
                ck[c] += (n - k) * delta;
                ck[dim + c] = (k + 1) * delta;
            }
        }
    }
    return kd;
}

namespace detail {

// Fused h/Q sweep of the geometric scheme: each blend factor is consumed as
// soon as it is produced, so no HState is materialized. Dim as in
// eval_with_h_loop.
template <int Dim>
inline void eval_poly_fused(const double* pts, int n, int dim, double t,
                            double* out, EvalCounters* counters) {
    const int d = Dim > 0 ? Dim : dim;
    for (int c = 0; c < d; ++c) out[c] = pts[c];
    const double s = 1.0 - t;
    double h = 1.0;
    for (int i = 1; i <= n; ++i) {
        const double num = h * t * (n - i + 1);
        h = num / (i * s + num);
        const double g = 1.0 - h;
        const double* w = pts + static_cast<std::size_t>(i) * d;
        for (int c = 0; c < d; ++c) out[c] = g * out[c] + h * w[c];
    }
    if (counters) counters->h_values_computed += static_cast<std::uint64_t>(n) + 1;
}

template <int Dim>
inline void derivatives_reduced_impl(std::span<const double> points, int dim,
                                     double t, int n, int reff, DerivativeJet& jet,
                                     EvalCounters* counters) {
    const int d = Dim > 0 ? Dim : dim;
    std::vector<double> level(points.begin(), points.end());
    for (int j = 0; j <= reff; ++j) {
        eval_poly_fused<Dim>(level.data(), n - j, d, t, jet.order(j).data(),
                             counters);
        if (j == reff) break;
        const double factor = n - j;
        for (int k = 0; k <= n - j - 1; ++k) {
            double* v = level.data() + static_cast<std::size_t>(k) * d;
            for (int c = 0; c < d; ++c) v[c] = factor * (v[d + c] - v[c]);
        }
    }
}

template <int Dim>
inline void derivatives_kept_degree_impl(std::span<const double> points, int dim,
                                         double t, int n, int reff,
                                         DerivativeJet& jet,
                                         EvalCounters* counters) {
    const int d = Dim > 0 ? Dim : dim;
    // one uninitialized block: n+1 shared h entries, then two level buffers
    std::unique_ptr<double[]> scratch(
        new double[static_cast<std::size_t>(n) + 1 + 2 * points.size()]);
    double* h = scratch.get();
    double* prev = h + n + 1;
    double* cur = prev + points.size();
    h_poly_only(n, t, h, counters);
    eval_with_h_loop<Dim>(points.data(), n, d, h, jet.order(0).data());
    const double* src = points.data();  // level j-1; the input for j = 1
    for (int j = 1; j <= reff; ++j) {
        for (int k = 0; k < n; ++k) {
            const double* pk = src + static_cast<std::size_t>(k) * d;
            double* ck = cur + static_cast<std::size_t>(k) * d;
            for (int c = 0; c < d; ++c) {
                const double delta = pk[d + c] - pk[c];
                const double head = (n - k) * delta;
                ck[c] = (k == 0) ? head : ck[c] + head;
                ck[d + c] = (k + 1) * delta;
            }
        }
        eval_with_h_loop<Dim>(cur, n, d, h, jet.order(j).data());
        std::swap(prev, cur);
        src = prev;
    }
}

}  // namespace detail

/// Algorithm-1 style jet: each hodograph level evaluated by the geometric
/// scheme at its own (reduced) degree. Requested orders beyond n come back
/// as exact zero vectors. The difference pyramid is built level by level in
/// a single flat buffer.
inline DerivativeJet derivatives_reduced(std::span<const double> points, int dim,
                                         double t, int r,
                                         EvalCounters* counters = nullptr) {
    if (dim < 1 || points.empty() || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("derivatives_reduced: bad point data shape");
    check_unit_interval(t);
    const int n = static_cast<int>(points.size()) / dim - 1;
    const int reff = std::min(r, n);
    DerivativeJet jet = make_jet(dim, r);
    switch (dim) {
        case 1: detail::derivatives_reduced_impl<1>(points, dim, t, n, reff, jet, counters); break;
        case 2: detail::derivatives_reduced_impl<2>(points, dim, t, n, reff, jet, counters); break;
        case 3: detail::derivatives_reduced_impl<3>(points, dim, t, n, reff, jet, counters); break;
        default: detail::derivatives_reduced_impl<0>(points, dim, t, n, reff, jet, counters); break;
    }
    return jet;
}

/// Algorithm-2 style jet: all derivative curves written in the degree-n basis
/// and evaluated with a single shared HState (exactly n+1 h-values).
inline DerivativeJet derivatives_kept_degree(std::span<const double> points, int dim,
                                             double t, int r,
                                             EvalCounters* counters = nullptr) {
    if (dim < 1 || points.empty() || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("derivatives_kept_degree: bad point data shape");
    check_unit_interval(t);
    const int n = static_cast<int>(points.size()) / dim - 1;
    const int reff = std::min(r, n);
    DerivativeJet jet = make_jet(dim, r);
    switch (dim) {
        case 1: detail::derivatives_kept_degree_impl<1>(points, dim, t, n, reff, jet, counters); break;
        case 2: detail::derivatives_kept_degree_impl<2>(points, dim, t, n, reff, jet, counters); break;
        case 3: detail::derivatives_kept_degree_impl<3>(points, dim, t, n, reff, jet, counters); break;
        default: detail::derivatives_kept_degree_impl<0>(points, dim, t, n, reff, jet, counters); break;
    }
    return jet;
}

enum class PolyMethod { Reduced, KeptDegree };

/// Batch evaluation of m curves sharing (n, t): the h-values per level are
/// computed once and shared, so each jet is bit-identical to the
/// corresponding single-curve call.
inline std::vector<DerivativeJet> derivatives_batch(
    const std::vector<std::vector<double>>& curves, int dim, double t, int r,
    PolyMethod method, EvalCounters* counters = nullptr) {
    check_unit_interval(t);
    if (curves.empty()) return {};
    const std::size_t size = curves.front().size();
    for (const auto& c : curves)
        if (c.size() != size)
            throw std::domain_error("derivatives_batch: heterogeneous degrees");
    const int n = static_cast<int>(size) / dim - 1;
    const int reff = std::min(r, n);

    std::vector<HState> states;
    if (method == PolyMethod::Reduced) {
        states.reserve(static_cast<std::size_t>(reff) + 1);
        for (int j = 0; j <= reff; ++j) states.push_back(h_values_poly(n - j, t, counters));
    } else {
        states.push_back(h_values_poly(n, t, counters));
    }

    std::vector<DerivativeJet> jets;
    jets.reserve(curves.size());
    for (const auto& pts : curves) {
        DerivativeJet jet = make_jet(dim, r);
        if (method == PolyMethod::Reduced) {
            ControlVectorPyramid pyr = control_vector_pyramid(pts, dim, reff);
            for (int j = 0; j <= reff; ++j)
                detail::eval_with_h_raw(pyr.levels[j].data(), n - j, dim,
                                        states[j].h.data(), jet.order(j).data());
        } else {
            KeptDegreeVectors kd = kept_degree_vectors(pts, dim, reff);
            for (int j = 0; j <= reff; ++j)
                detail::eval_with_h_raw(kd.levels[j].data(), n, dim,
                                        states[0].h.data(), jet.order(j).data());
        }
        jets.push_back(std::move(jet));
    }
    return jets;
}

}  // namespace bezjet
