#include "bezjet/bench.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "bezjet/casteljau.hpp"
#include "bezjet/poly_derivatives.hpp"
#include "bezjet/rational_derivatives.hpp"

namespace bezjet {

const char* method_name(Method m) {
    switch (m) {
        case Method::Casteljau: return "casteljau";
        case Method::Reduced: return "reduced";
        case Method::KeptDegree: return "kept";
        case Method::Floater: return "floater";
        case Method::FloaterFast: return "floater-fast";
        case Method::Scheme: return "scheme";
        case Method::Leibniz: return "leibniz";
    }
    return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
    for (Method m : {Method::Casteljau, Method::Reduced, Method::KeptDegree,
                     Method::Floater, Method::FloaterFast, Method::Scheme,
                     Method::Leibniz})
        if (name == method_name(m)) return m;
    return std::nullopt;
}

bool method_applicable(Method method, const RationalCurve& curve, int r) {
    const bool poly = curve.has_equal_weights();
    switch (method) {
        case Method::Casteljau:
            return poly ? r <= curve.degree : r == 0;
        case Method::Reduced:
        case Method::KeptDegree:
            return poly;
        case Method::Floater:
        case Method::FloaterFast:
            return r <= 2;
        case Method::Scheme:
        case Method::Leibniz:
            return true;
    }
    return false;
}

DerivativeJet compute_jet(Method method, const RationalCurve& curve, double t, int r) {
    const bool poly = curve.has_equal_weights();
    switch (method) {
        case Method::Casteljau:
            if (poly) return poly_derivatives_dc(curve.points, curve.dim, t, r);
            if (r == 0) {
                DerivativeJet jet = make_jet(curve.dim, 0);
                Point v = casteljau_value(curve, t);
                for (int c = 0; c < curve.dim; ++c) jet.order(0)[c] = v[c];
                return jet;
            }
            throw std::invalid_argument(
                "method 'casteljau' computes derivatives of polynomial curves only");
        case Method::Reduced:
            if (!poly)
                throw std::invalid_argument("method 'reduced' requires a polynomial curve");
            return derivatives_reduced(curve.points, curve.dim, t, r);
        case Method::KeptDegree:
            if (!poly)
                throw std::invalid_argument("method 'kept' requires a polynomial curve");
            return derivatives_kept_degree(curve.points, curve.dim, t, r);
        case Method::Floater:
            if (r > 2)
                throw std::invalid_argument("method 'floater' supports orders <= 2");
            return floater_jet2_baseline(curve, t, r);
        case Method::FloaterFast:
            if (r > 2)
                throw std::invalid_argument("method 'floater-fast' supports orders <= 2");
            return floater_jet2_fast(curve, t, r);
        case Method::Scheme:
            return scheme_jet(curve, t, r);
        case Method::Leibniz:
            return leibniz_jet(curve, t, r);
    }
    throw std::invalid_argument("unknown method");
}

double CurveGenerator::uniform(double lo, double hi) {
    // Portable double draw: top 53 bits of the engine output.
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

RationalCurve CurveGenerator::curve(int degree, int dim, bool rational) {
    RationalCurve out;
    out.degree = degree;
    out.dim = dim;
    out.points.resize((static_cast<std::size_t>(degree) + 1) * dim);
    for (double& c : out.points) c = uniform(-1.0, 1.0);
    out.weights.assign(static_cast<std::size_t>(degree) + 1, 1.0);
    if (rational)
        for (double& w : out.weights) w = uniform(0.01, 2.0);
    return out;
}

std::vector<RationalCurve> CurveGenerator::curves(int count, int degree, int dim,
                                                  bool rational) {
    std::vector<RationalCurve> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(curve(degree, dim, rational));
    return out;
}

namespace {

// Sub-stream seed for one (n, r) cell, so cells are independent of ordering.
std::uint64_t cell_seed(std::uint64_t seed, int n, int r) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(n) + 1)) ^
                      (0xbf58476d1ce4e5b9ULL * (static_cast<std::uint64_t>(r) + 1));
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    return x;
}

bool needs_weights(const std::vector<Method>& methods) {
    for (Method m : methods)
        if (m == Method::Floater || m == Method::FloaterFast || m == Method::Scheme ||
            m == Method::Leibniz)
            return true;
    return false;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
    using clock = std::chrono::steady_clock;
    std::vector<BenchRecord> records;
    const bool rational = needs_weights(config.methods);

    for (int n : config.degrees) {
        for (int r : config.orders) {
            if (r > n) continue;
            CurveGenerator gen(cell_seed(config.seed, n, r));
            const std::vector<RationalCurve> curves =
                gen.curves(config.sets * config.curves_per_set, n, config.dim, rational);
            std::vector<double> grid(config.grid);
            for (int i = 0; i < config.grid; ++i)
                grid[i] = static_cast<double>(i) / (config.grid - 1);

            for (Method method : config.methods) {
                if (!method_applicable(method, curves.front(), r)) continue;

                // Warm-up pass on the first curve, excluded from timing.
                volatile double sink = 0.0;
                for (double t : grid)
                    sink = sink + compute_jet(method, curves.front(), t, r).data[0];

                BenchRecord rec;
                rec.n = n;
                rec.r = r;
                rec.d = config.dim;
                rec.m = config.curves_per_set;
                rec.method = method_name(method);

                const auto start = clock::now();
                std::uint64_t evals = 0;
                bool timed_out = false;
                for (const RationalCurve& curve : curves) {
                    for (double t : grid) {
                        sink = sink + compute_jet(method, curve, t, r).data[0];
                        ++evals;
                    }
                    if (config.timeout_seconds > 0.0) {
                        const double elapsed =
                            std::chrono::duration<double>(clock::now() - start).count();
                        if (elapsed > config.timeout_seconds) {
                            timed_out = true;
                            break;
                        }
                    }
                }
                rec.seconds = std::chrono::duration<double>(clock::now() - start).count();
                rec.evaluations = evals;
                if (timed_out) rec.method += " (timeout)";
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "n,r,d,m,method,seconds,evaluations\n";
    out.precision(17);
    for (const auto& rec : records)
        out << rec.n << ',' << rec.r << ',' << rec.d << ',' << rec.m << ','
            << rec.method << ',' << rec.seconds << ',' << rec.evaluations << '\n';
}

std::vector<BenchRecord> parse_bench_csv(std::istream& in) {
    std::vector<BenchRecord> records;
    std::string line;
    if (!std::getline(in, line) || line != "n,r,d,m,method,seconds,evaluations")
        throw std::runtime_error("bench csv: bad header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        BenchRecord rec;
        char comma;
        ls >> rec.n >> comma >> rec.r >> comma >> rec.d >> comma >> rec.m >> comma;
        if (!std::getline(ls, rec.method, ',')) throw std::runtime_error("bench csv: bad row");
        ls >> rec.seconds >> comma >> rec.evaluations;
        if (!ls) throw std::runtime_error("bench csv: bad row: " + line);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace bezjet
