// Command-line front end: evaluate curve jets from files, cross-compare
// methods on a parameter grid, and run the timing experiments as CSV.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bezjet/bench.hpp"
#include "bezjet/curve_io.hpp"
#include "bezjet/geometry.hpp"

namespace fs = std::filesystem;

namespace {

// Minimal glob: '*' and '?' in the filename component only.
bool glob_match(const std::string& pattern, const std::string& name) {
    std::size_t p = 0, s = 0, star = std::string::npos, mark = 0;
    while (s < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[s])) {
            ++p;
            ++s;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = s;
        } else if (star != std::string::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<std::string> expand_glob(const std::string& pattern) {
    const fs::path pat(pattern);
    const fs::path dir = pat.has_parent_path() ? pat.parent_path() : fs::path(".");
    const std::string leaf = pat.filename().string();
    std::vector<std::string> files;
    if (leaf.find('*') == std::string::npos && leaf.find('?') == std::string::npos) {
        if (fs::exists(pat)) files.push_back(pat.string());
        return files;
    }
    if (!fs::is_directory(dir)) return files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && glob_match(leaf, entry.path().filename().string()))
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

void print_jet(std::ostream& out, const bezjet::DerivativeJet& jet) {
    out.precision(17);
    for (int k = 0; k <= jet.orders(); ++k) {
        out << (k == 0 ? "value" : "order" + std::to_string(k));
        for (double v : jet.order(k)) out << ' ' << v;
        out << '\n';
    }
}

int cmd_eval(const std::string& file, double t, int r, const std::string& method_name) {
    auto method = bezjet::method_from_name(method_name);
    if (!method) {
        std::cerr << "error: unknown method '" << method_name << "'\n";
        return 2;
    }
    bezjet::RationalCurve curve;
    try {
        curve = bezjet::read_curve_file(file);
    } catch (const bezjet::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    try {
        print_jet(std::cout, bezjet::compute_jet(*method, curve, t, r));
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int cmd_compare(const std::string& pattern, int r, int grid,
                const std::vector<std::string>& only_methods) {
    const auto files = expand_glob(pattern);
    if (files.empty()) {
        std::cerr << "error: no files match '" << pattern << "'\n";
        return 1;
    }
    std::vector<bezjet::RationalCurve> curves;
    for (const auto& f : files) {
        try {
            curves.push_back(bezjet::read_curve_file(f));
        } catch (const bezjet::ParseError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }

    std::vector<bezjet::Method> methods;
    for (bezjet::Method m :
         {bezjet::Method::Casteljau, bezjet::Method::Reduced, bezjet::Method::KeptDegree,
          bezjet::Method::Floater, bezjet::Method::FloaterFast, bezjet::Method::Scheme,
          bezjet::Method::Leibniz}) {
        if (!only_methods.empty() &&
            std::find(only_methods.begin(), only_methods.end(),
                      bezjet::method_name(m)) == only_methods.end())
            continue;
        bool ok = true;
        for (const auto& c : curves)
            ok = ok && bezjet::method_applicable(m, c, r) && r <= c.degree;
        if (ok) methods.push_back(m);
    }
    if (methods.size() < 2) {
        std::cerr << "usage error: fewer than two methods are applicable to the "
                     "requested curves and order\n";
        return 2;
    }

    std::cout << "method_a,method_b,max_scaled_deviation,argmax_t\n";
    std::cout.precision(17);
    for (std::size_t a = 0; a < methods.size(); ++a) {
        for (std::size_t b = a + 1; b < methods.size(); ++b) {
            double worst = 0.0, worst_t = 0.0;
            for (const auto& curve : curves) {
                for (int i = 0; i < grid; ++i) {
                    const double t = static_cast<double>(i) / (grid - 1);
                    const auto ja = bezjet::compute_jet(methods[a], curve, t, r);
                    const auto jb = bezjet::compute_jet(methods[b], curve, t, r);
                    const double dev = bezjet::jet_deviation(ja, jb);
                    if (dev > worst) {
                        worst = dev;
                        worst_t = t;
                    }
                }
            }
            std::cout << bezjet::method_name(methods[a]) << ','
                      << bezjet::method_name(methods[b]) << ',' << worst << ','
                      << worst_t << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bezier curve and derivative evaluation toolkit"};
    app.require_subcommand(1);

    // eval
    std::string eval_file, eval_method = "leibniz";
    double eval_t = 0.0;
    int eval_r = 0;
    auto* eval = app.add_subcommand("eval", "evaluate a curve jet at one parameter");
    eval->add_option("--curve", eval_file, "curve file (text or .json)")->required();
    eval->add_option("--t", eval_t, "parameter in [0,1]")->required()
        ->check(CLI::Range(0.0, 1.0));
    eval->add_option("--r", eval_r, "max derivative order")->default_val(0);
    eval->add_option("--method", eval_method,
                     "casteljau|reduced|kept|floater|floater-fast|scheme|leibniz");

    // compare
    std::string cmp_glob;
    int cmp_r = 1, cmp_grid = 501;
    std::vector<std::string> cmp_methods;
    auto* cmp = app.add_subcommand("compare",
                                   "max pairwise deviation report per method pair");
    cmp->add_option("--curves", cmp_glob, "curve file glob")->required();
    cmp->add_option("--r", cmp_r, "max derivative order")->default_val(1);
    cmp->add_option("--grid", cmp_grid, "number of grid parameters")->default_val(501);
    cmp->add_option("--methods", cmp_methods, "restrict to these methods")
        ->delimiter(',');

    // bench
    bezjet::BenchConfig cfg;
    std::vector<std::string> bench_methods{"casteljau", "reduced", "kept"};
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "timing experiments, CSV output");
    bench->add_option("--n", cfg.degrees, "degrees")->required()->delimiter(',');
    bench->add_option("--r", cfg.orders, "derivative orders")->required()->delimiter(',');
    bench->add_option("--d", cfg.dim, "space dimension")->default_val(2);
    bench->add_option("--m", cfg.curves_per_set, "curves per set")->default_val(1);
    bench->add_option("--sets", cfg.sets, "number of sets")->default_val(1000);
    bench->add_option("--seed", cfg.seed, "PRNG seed")->required();
    bench->add_option("--out", bench_out, "output CSV path (default stdout)");
    bench->add_option("--methods", bench_methods, "methods to time")->delimiter(',');
    bench->add_option("--grid", cfg.grid, "grid parameter count")->default_val(501);
    bench->add_option("--timeout", cfg.timeout_seconds,
                      "per-cell timeout in seconds (0 = none)");

    CLI11_PARSE(app, argc, argv);

    if (eval->parsed()) return cmd_eval(eval_file, eval_t, eval_r, eval_method);
    if (cmp->parsed()) return cmd_compare(cmp_glob, cmp_r, cmp_grid, cmp_methods);

    for (const auto& name : bench_methods) {
        auto m = bezjet::method_from_name(name);
        if (!m) {
            std::cerr << "error: unknown method '" << name << "'\n";
            return 2;
        }
        cfg.methods.push_back(*m);
    }
    const auto records = bezjet::run_bench(cfg);
    if (bench_out.empty()) {
        bezjet::write_bench_csv(std::cout, records);
    } else {
        std::ofstream out(bench_out);
        if (!out) {
            std::cerr << "error: cannot open " << bench_out << '\n';
            return 1;
        }
        bezjet::write_bench_csv(out, records);
    }
    return 0;
}
