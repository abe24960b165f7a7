#include "bezjet/curve_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace bezjet {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
    throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

RationalCurve parse_curve_text(std::istream& in, const std::string& name) {
    int degree = -1;
    int dimension = -1;
    std::vector<double> points;
    std::vector<double> weights;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        if (key == "degree") {
            if (!(ls >> degree) || degree < 0) fail(name, lineno, "bad degree");
        } else if (key == "dimension") {
            if (!(ls >> dimension) || dimension < 1) fail(name, lineno, "bad dimension");
        } else if (key == "point") {
            if (dimension < 1) fail(name, lineno, "point before dimension");
            for (int c = 0; c < dimension; ++c) {
                double v;
                if (!(ls >> v)) fail(name, lineno, "point needs " +
                                     std::to_string(dimension) + " coordinates");
                points.push_back(v);
            }
        } else if (key == "weights") {
            double v;
            while (ls >> v) weights.push_back(v);
        } else {
            fail(name, lineno, "unknown directive '" + key + "'");
        }
    }
    if (degree < 0) fail(name, lineno, "missing degree");
    if (dimension < 1) fail(name, lineno, "missing dimension");
    if (points.size() != static_cast<std::size_t>(degree + 1) * dimension)
        fail(name, lineno, "expected " + std::to_string(degree + 1) + " points, got " +
             std::to_string(points.size() / dimension));
    if (!weights.empty() && weights.size() != static_cast<std::size_t>(degree) + 1)
        fail(name, lineno, "expected " + std::to_string(degree + 1) + " weights");
    try {
        return make_curve(dimension, std::move(points), std::move(weights));
    } catch (const std::exception& e) {
        fail(name, lineno, e.what());
    }
}

RationalCurve parse_curve_json(std::istream& in, const std::string& name) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(name + ": " + e.what());
    }
    try {
        const int degree = j.at("degree").get<int>();
        const int dimension = j.at("dimension").get<int>();
        std::vector<double> points;
        for (const auto& row : j.at("points")) {
            if (static_cast<int>(row.size()) != dimension)
                throw ParseError(name + ": point row width does not match dimension");
            for (const auto& v : row) points.push_back(v.get<double>());
        }
        std::vector<double> weights;
        if (j.contains("weights"))
            weights = j.at("weights").get<std::vector<double>>();
        if (points.size() != static_cast<std::size_t>(degree + 1) * dimension)
            throw ParseError(name + ": point count does not match degree");
        return make_curve(dimension, std::move(points), std::move(weights));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(name + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(name + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw ParseError(name + ": " + e.what());
    }
}

RationalCurve read_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_curve_json(in, path);
    return parse_curve_text(in, path);
}

void write_curve_text(std::ostream& out, const RationalCurve& curve) {
    out << std::setprecision(17);
    out << "degree " << curve.degree << "\n";
    out << "dimension " << curve.dim << "\n";
    for (int k = 0; k <= curve.degree; ++k) {
        out << "point";
        for (double c : curve.point(k)) out << ' ' << c;
        out << "\n";
    }
    if (!curve.has_equal_weights() || curve.weights[0] != 1.0) {
        out << "weights";
        for (double w : curve.weights) out << ' ' << w;
        out << "\n";
    }
}

void write_curve_json(std::ostream& out, const RationalCurve& curve) {
    nlohmann::json j;
    j["degree"] = curve.degree;
    j["dimension"] = curve.dim;
    auto points = nlohmann::json::array();
    for (int k = 0; k <= curve.degree; ++k) {
        auto row = nlohmann::json::array();
        for (double c : curve.point(k)) row.push_back(c);
        points.push_back(row);
    }
    j["points"] = points;
    if (!curve.has_equal_weights() || curve.weights[0] != 1.0)
        j["weights"] = curve.weights;
    out << j.dump(2) << "\n";
}

void write_curve_file(const std::string& path, const RationalCurve& curve) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        write_curve_json(out, curve);
    else
        write_curve_text(out, curve);
}

}  // namespace bezjet
