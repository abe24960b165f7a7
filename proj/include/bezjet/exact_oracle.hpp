#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <vector>

#include "bezjet/geometry.hpp"

namespace bezjet::oracle {

using Rational = boost::multiprecision::mpq_rational;

/// Dense polynomial over exact rationals, monomial basis, ascending degree.
/// Deliberately the numerically hostile representation: it shares no code
/// path or algebraic structure with the evaluation schemes it checks.
struct ExactPolynomial {
    std::vector<Rational> coeffs;  // coeffs[j] multiplies t^j

    static ExactPolynomial zero() { return {{Rational(0)}}; }

    ExactPolynomial derivative() const {
        if (coeffs.size() <= 1) return zero();
        ExactPolynomial out;
        out.coeffs.resize(coeffs.size() - 1);
        for (std::size_t j = 1; j < coeffs.size(); ++j)
            out.coeffs[j - 1] = coeffs[j] * static_cast<int>(j);
        return out;
    }

    Rational eval(const Rational& t) const {
        Rational acc(0);
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * t + coeffs[j];
        return acc;
    }
};

inline ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
    ExactPolynomial out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) out.coeffs[j] += a.coeffs[j];
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[j] += b.coeffs[j];
    return out;
}

inline ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
    ExactPolynomial out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) out.coeffs[j] += a.coeffs[j];
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[j] -= b.coeffs[j];
    return out;
}

inline ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
    ExactPolynomial out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

inline ExactPolynomial operator*(const Rational& s, const ExactPolynomial& p) {
    ExactPolynomial out = p;
    for (auto& c : out.coeffs) c *= s;
    return out;
}

/// Curve expanded exactly into the monomial basis: one numerator polynomial
/// per coordinate over a shared denominator.
struct ExactCurve {
    int dim = 0;
    std::vector<ExactPolynomial> numer;  // dim polynomials
    ExactPolynomial denom;
};

/// Exact expansion of sum omega_k B^n_k W_k over sum omega_k B^n_k via
/// binomial products. Doubles convert to rationals exactly.
inline ExactCurve expand_curve(const RationalCurve& curve) {
    const int n = curve.degree;
    const int d = curve.dim;

    // Monomial expansions of t^k and (1-t)^m, multiplied up front.
    ExactPolynomial t{{Rational(0), Rational(1)}};
    ExactPolynomial one_minus_t{{Rational(1), Rational(-1)}};
    std::vector<ExactPolynomial> tpow(static_cast<std::size_t>(n) + 1);
    std::vector<ExactPolynomial> spow(static_cast<std::size_t>(n) + 1);
    tpow[0] = ExactPolynomial{{Rational(1)}};
    spow[0] = ExactPolynomial{{Rational(1)}};
    for (int k = 1; k <= n; ++k) {
        tpow[k] = tpow[k - 1] * t;
        spow[k] = spow[k - 1] * one_minus_t;
    }

    ExactCurve out;
    out.dim = d;
    out.numer.assign(static_cast<std::size_t>(d), ExactPolynomial::zero());
    out.denom = ExactPolynomial::zero();

    Rational binom(1);  // C(n,k), updated incrementally
    for (int k = 0; k <= n; ++k) {
        if (k > 0) binom = binom * (n - k + 1) / k;
        const Rational wk(curve.weights[k]);
        ExactPolynomial basis = (binom * wk) * (tpow[k] * spow[n - k]);
        out.denom = out.denom + basis;
        for (int c = 0; c < d; ++c) {
            Rational coord(curve.points[static_cast<std::size_t>(k) * d + c]);
            out.numer[c] = out.numer[c] + coord * basis;
        }
    }
    return out;
}

/// Symbolic differentiation by the iterated quotient rule: with
/// R^(k) = P_k / D^(k+1), the numerators satisfy
///   P_{k+1} = P_k' D - (k+1) P_k D'.
/// Built once per (curve, r); evaluation at each t is then Horner only.
struct ExactJetExpansion {
    int dim = 0;
    int max_order = 0;
    ExactPolynomial denom;
    std::vector<std::vector<ExactPolynomial>> numer;  // [coord][order]

    ExactJetExpansion(const ExactCurve& curve, int r)
        : dim(curve.dim), max_order(r), denom(curve.denom) {
        const ExactPolynomial dprime = denom.derivative();
        numer.resize(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) {
            auto& chain = numer[c];
            chain.reserve(static_cast<std::size_t>(r) + 1);
            chain.push_back(curve.numer[c]);
            for (int k = 0; k < r; ++k)
                chain.push_back(chain.back().derivative() * denom -
                                Rational(k + 1) * (chain.back() * dprime));
        }
    }

    /// Exact jet at rational t, rounded once to doubles at the end.
    DerivativeJet eval(const Rational& t) const {
        const Rational denom_value = denom.eval(t);
        if (denom_value == 0)
            throw std::domain_error("exact_jet: denominator vanishes at t");
        DerivativeJet jet = make_jet(dim, max_order);
        for (int c = 0; c < dim; ++c) {
            Rational denom_power = denom_value;
            for (int k = 0; k <= max_order; ++k) {
                const Rational value = numer[c][k].eval(t) / denom_power;
                jet.order(k)[c] = value.convert_to<double>();
                denom_power *= denom_value;
            }
        }
        return jet;
    }
};

/// Convenience wrapper expanding and differentiating in one call.
inline DerivativeJet exact_jet(const RationalCurve& curve, const Rational& t, int r) {
    return ExactJetExpansion(expand_curve(curve), r).eval(t);
}

}  // namespace bezjet::oracle
