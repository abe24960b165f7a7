#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bezjet/geometry.hpp"

namespace bezjet {

enum class Method {
    Casteljau,    // forward-difference jet over the de Casteljau tableau
    Reduced,      // hodograph levels at reduced degree, geometric scheme
    KeptDegree,   // all levels kept at degree n, one shared HState
    Floater,      // Floater closed forms over a full de Casteljau pass
    FloaterFast,  // Floater closed forms with scheme-computed columns
    Scheme,       // differentiated geometric scheme
    Leibniz,      // Leibniz-rule method over Bernstein derivative values
};

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

/// True when `method` can produce an order-r jet for this curve.
bool method_applicable(Method method, const RationalCurve& curve, int r);

/// Single dispatch point used by the CLI and the comparison/bench loops.
/// Throws std::invalid_argument on method/curve mismatch.
DerivativeJet compute_jet(Method method, const RationalCurve& curve, double t, int r);

/// Deterministic curve generator. The PRNG is pinned to std::mt19937_64 with
/// doubles drawn as (x >> 11) * 2^-53, so a seed reproduces the same curves
/// on any platform. Points are uniform in [-1,1]^d; weights, when rational
/// curves are requested, uniform in [0.01, 2].
class CurveGenerator {
public:
    explicit CurveGenerator(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    RationalCurve curve(int degree, int dim, bool rational);
    std::vector<RationalCurve> curves(int count, int degree, int dim, bool rational);

private:
    std::mt19937_64 engine_;
};

struct BenchRecord {
    int n = 0;
    int r = 0;
    int d = 0;
    int m = 0;  // curves per set
    std::string method;
    double seconds = 0.0;
    std::uint64_t evaluations = 0;  // sets * curves * parameter-count
};

struct BenchConfig {
    std::vector<int> degrees;
    std::vector<int> orders;
    int dim = 2;
    int curves_per_set = 1;
    int sets = 1000;
    std::uint64_t seed = 1;
    std::vector<Method> methods;
    int grid = 501;                 // parameters t_i = i/(grid-1)
    double timeout_seconds = 0.0;   // 0 = no timeout, per (n, r, method) cell
};

/// Run the timing protocol: per (n, r, method), the same generated curves are
/// evaluated at every grid parameter; wall-clock totals cover the full loop,
/// one warm-up pass excluded. Single-threaded by contract.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> parse_bench_csv(std::istream& in);

}  // namespace bezjet
