#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>

#include <string>
#include <vector>

#include "bezjet/casteljau.hpp"
#include "bezjet/geometric_eval.hpp"
#include "bezjet/geometry.hpp"
#include "bezjet/poly_derivatives.hpp"
#include "bezjet/rational_derivatives.hpp"

namespace py = pybind11;
using namespace bezjet;

namespace {

// Accepts (n+1, d) or (n+1,) float arrays; flattens row-major.
std::pair<std::vector<double>, int> flatten_points(const py::array_t<double>& arr) {
    const auto buf = arr.request();
    if (buf.ndim != 1 && buf.ndim != 2)
        throw py::value_error("points must be a 1- or 2-dimensional array");
    const int dim = buf.ndim == 2 ? static_cast<int>(buf.shape[1]) : 1;
    auto contiguous = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(arr);
    const double* data = contiguous.data();
    return {std::vector<double>(data, data + contiguous.size()), dim};
}

std::vector<double> flatten_weights(const py::object& weights, std::size_t count) {
    if (weights.is_none()) return std::vector<double>(count, 1.0);
    auto arr = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(weights);
    if (!arr || arr.ndim() != 1)
        throw py::value_error("weights must be a 1-dimensional array or None");
    return std::vector<double>(arr.data(), arr.data() + arr.size());
}

RationalCurve curve_from(const py::array_t<double>& points, const py::object& weights) {
    auto [flat, dim] = flatten_points(points);
    const std::size_t count = flat.size() / static_cast<std::size_t>(dim);
    return make_curve(dim, std::move(flat), flatten_weights(weights, count));
}

py::array_t<double> jet_to_array(const DerivativeJet& jet) {
    py::array_t<double> out({jet.orders() + 1, jet.dim});
    std::copy(jet.data.begin(), jet.data.end(), out.mutable_data());
    return out;
}

py::array_t<double> point_to_array(const Point& p) {
    py::array_t<double> out(static_cast<py::ssize_t>(p.size()));
    std::copy(p.begin(), p.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_bezjet, m) {
    m.doc() = "Derivatives of polynomial and rational Bezier curves";

    m.def(
        "evaluate",
        [](py::array_t<double> points, double t, py::object weights) {
            return point_to_array(eval_rational(curve_from(points, weights), t));
        },
        py::arg("points"), py::arg("t"), py::arg("weights") = py::none(),
        "Curve value at t via the linear-time geometric scheme.");

    m.def(
        "poly_derivatives",
        [](py::array_t<double> points, double t, int r, const std::string& method) {
            auto [flat, dim] = flatten_points(points);
            if (method == "reduced") return jet_to_array(derivatives_reduced(flat, dim, t, r));
            if (method == "kept") return jet_to_array(derivatives_kept_degree(flat, dim, t, r));
            if (method == "casteljau") return jet_to_array(poly_derivatives_dc(flat, dim, t, r));
            throw py::value_error("method must be 'reduced', 'kept' or 'casteljau'");
        },
        py::arg("points"), py::arg("t"), py::arg("r"), py::arg("method") = "reduced",
        "Value and derivatives up to order r of a polynomial curve; rows are orders 0..r.");

    m.def(
        "rational_derivatives",
        [](py::array_t<double> points, py::object weights, double t, int r,
           const std::string& method) {
            const RationalCurve curve = curve_from(points, weights);
            if (method == "scheme") return jet_to_array(scheme_jet(curve, t, r));
            if (method == "leibniz") return jet_to_array(leibniz_jet(curve, t, r));
            if (method == "floater") return jet_to_array(floater_jet2_baseline(curve, t, r));
            if (method == "floater_fast") return jet_to_array(floater_jet2_fast(curve, t, r));
            throw py::value_error(
                "method must be 'scheme', 'leibniz', 'floater' or 'floater_fast'");
        },
        py::arg("points"), py::arg("weights"), py::arg("t"), py::arg("r"),
        py::arg("method") = "leibniz",
        "Value and derivatives up to order r of a rational curve; rows are orders 0..r. "
        "The floater methods support r <= 2 only.");

    m.def(
        "h_values",
        [](py::array_t<double> weights, double t) {
            auto arr = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(
                weights);
            std::vector<double> w(arr.data(), arr.data() + arr.size());
            HState st = h_values(w, t);
            py::array_t<double> out(static_cast<py::ssize_t>(st.h.size()));
            std::copy(st.h.begin(), st.h.end(), out.mutable_data());
            return out;
        },
        py::arg("weights"), py::arg("t"),
        "Convex blend factors h_0..h_n of the linear-time scheme.");
}
