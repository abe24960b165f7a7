#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bezjet {

// Affine point in E^d and displacement in R^d share the same layout;
// the distinction is carried by operation signatures.
using Point  = std::vector<double>;
using Vector = std::vector<double>;

/// Rational Bezier curve of degree `degree` in E^dim.
/// Control points are stored flat, row-major: point k occupies
/// [k*dim, (k+1)*dim). All weights must be strictly positive.
/// A polynomial curve is the same type with all weights equal to 1.
struct RationalCurve {
    int degree = 0;
    int dim = 0;
    std::vector<double> points;   // (degree+1) * dim
    std::vector<double> weights;  // degree+1

    std::span<const double> point(int k) const {
        return {points.data() + static_cast<std::size_t>(k) * dim,
                static_cast<std::size_t>(dim)};
    }

    bool has_equal_weights() const {
        for (double w : weights)
            if (w != weights[0]) return false;
        return true;
    }
};

inline RationalCurve make_curve(int dim, std::vector<double> points,
                                std::vector<double> weights) {
    if (dim < 1) throw std::invalid_argument("curve dimension must be >= 1");
    if (points.empty() || points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("point data size is not a multiple of dim");
    const int n = static_cast<int>(points.size()) / dim - 1;
    if (weights.empty()) weights.assign(static_cast<std::size_t>(n) + 1, 1.0);
    if (weights.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("weight count does not match point count");
    for (double w : weights)
        if (!(w > 0.0)) throw std::domain_error("weights must be strictly positive");
    for (double c : points)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite control point");
    return RationalCurve{n, dim, std::move(points), std::move(weights)};
}

inline RationalCurve make_poly_curve(int dim, std::vector<double> points) {
    return make_curve(dim, std::move(points), {});
}

/// Value plus derivative vectors of orders 1..r at one parameter.
/// Row 0 of `data` is the curve value, row k the k-th derivative.
struct DerivativeJet {
    int dim = 0;
    std::vector<double> data;  // (orders+1) * dim

    int orders() const { return static_cast<int>(data.size()) / dim - 1; }

    std::span<const double> order(int k) const {
        return {data.data() + static_cast<std::size_t>(k) * dim,
                static_cast<std::size_t>(dim)};
    }
    std::span<double> order(int k) {
        return {data.data() + static_cast<std::size_t>(k) * dim,
                static_cast<std::size_t>(dim)};
    }
    std::span<const double> value() const { return order(0); }
};

inline DerivativeJet make_jet(int dim, int r) {
    DerivativeJet jet;
    jet.dim = dim;
    jet.data.assign(static_cast<std::size_t>(r + 1) * dim, 0.0);
    return jet;
}

/// |a-b| <= tol * max(|a|,|b|,1), per component. Derivative magnitudes span
/// many decades with n and r, so plain relative error is unusable.
inline bool scaled_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

inline double scaled_deviation(std::span<const double> a, std::span<const double> b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1.0});
        dev = std::max(dev, std::abs(a[i] - b[i]) / scale);
    }
    return dev;
}

/// Max scaled deviation over all orders of two jets.
inline double jet_deviation(const DerivativeJet& a, const DerivativeJet& b) {
    double dev = 0.0;
    int r = std::min(a.orders(), b.orders());
    for (int k = 0; k <= r; ++k)
        dev = std::max(dev, scaled_deviation(a.order(k), b.order(k)));
    return dev;
}

}  // namespace bezjet
