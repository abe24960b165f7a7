#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace bezjet {

/// All n+1 Bernstein basis values B^n_0(t)..B^n_n(t), computed by the
/// triangular degree-elevation recurrence B^n_k = t B^{n-1}_{k-1} + (1-t) B^{n-1}_k.
/// O(n^2), but numerically robust and built once per (t, r).
inline std::vector<double> bernstein_all(int n, double t) {
    if (n < 0) throw std::invalid_argument("bernstein_all: degree must be >= 0");
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    b[0] = 1.0;
    const double s = 1.0 - t;
    for (int m = 1; m <= n; ++m) {
        b[m] = t * b[m - 1];
        for (int k = m - 1; k >= 1; --k) b[k] = t * b[k - 1] + s * b[k];
        b[0] *= s;
    }
    return b;
}

/// Values d^k/dt^k B^n_j(t) for 0 <= k <= r, 0 <= j <= n.
/// Row k is built from row k-1 via
///   (B^n_j)' = (n-j+1) B^n_{j-1} + (2j-n) B^n_j - (j+1) B^n_{j+1},
/// with B^n_j == 0 for j < 0 or j > n handled by virtual zero padding.
struct BernsteinDerivTable {
    int n = 0;
    int r = 0;
    double t = 0.0;
    std::vector<double> values;  // (r+1) x (n+1), row-major

    double at(int k, int j) const {
        return values[static_cast<std::size_t>(k) * (n + 1) + j];
    }
    std::span<const double> row(int k) const {
        return {values.data() + static_cast<std::size_t>(k) * (n + 1),
                static_cast<std::size_t>(n) + 1};
    }
};

inline BernsteinDerivTable bernstein_deriv_table(int n, double t, int r) {
    if (n < 0 || r < 0)
        throw std::invalid_argument("bernstein_deriv_table: n and r must be >= 0");
    BernsteinDerivTable table;
    table.n = n;
    table.r = r;
    table.t = t;
    table.values.assign(static_cast<std::size_t>(r + 1) * (n + 1), 0.0);

    auto row0 = bernstein_all(n, t);
    for (int j = 0; j <= n; ++j) table.values[j] = row0[j];

    for (int k = 1; k <= r && k <= n; ++k) {
        const double* prev = table.values.data() + static_cast<std::size_t>(k - 1) * (n + 1);
        double* cur = table.values.data() + static_cast<std::size_t>(k) * (n + 1);
        for (int j = 0; j <= n; ++j) {
            double v = (2.0 * j - n) * prev[j];
            if (j >= 1) v += (n - j + 1.0) * prev[j - 1];
            if (j <= n - 1) v -= (j + 1.0) * prev[j + 1];
            cur[j] = v;
        }
    }
    // Rows k > n stay identically zero.
    return table;
}

/// Pascal triangle of C(k,i) for 0 <= i <= k <= r, exact in uint64.
struct BinomialTable {
    int r = 0;
    std::vector<std::uint64_t> entries;  // triangular, row k starts at k(k+1)/2

    std::uint64_t at(int k, int i) const {
        return entries[static_cast<std::size_t>(k) * (k + 1) / 2 + i];
    }
};

inline BinomialTable binomial_table(int r) {
    if (r < 0) throw std::invalid_argument("binomial_table: r must be >= 0");
    BinomialTable table;
    table.r = r;
    table.entries.assign(static_cast<std::size_t>(r + 1) * (r + 2) / 2, 0);
    auto idx = [](int k, int i) {
        return static_cast<std::size_t>(k) * (k + 1) / 2 + i;
    };
    table.entries[0] = 1;
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    for (int k = 1; k <= r; ++k) {
        table.entries[idx(k, 0)] = 1;
        table.entries[idx(k, k)] = 1;
        for (int i = 1; i < k; ++i) {
            std::uint64_t a = table.entries[idx(k - 1, i - 1)];
            std::uint64_t b = table.entries[idx(k - 1, i)];
            if (a > kMax - b)
                throw std::overflow_error("binomial_table: C(" + std::to_string(k) +
                                          "," + std::to_string(i) + ") overflows uint64");
            table.entries[idx(k, i)] = a + b;
        }
    }
    return table;
}

}  // namespace bezjet
