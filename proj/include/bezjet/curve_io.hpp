#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "bezjet/geometry.hpp"

namespace bezjet {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Read a curve from a file. Files ending in `.json` use the JSON schema
/// {"degree": n, "dimension": d, "points": [[...], ...], "weights": [...]};
/// anything else uses the line-oriented text format:
///
///   # comment
///   degree 2
///   dimension 2
///   point 0 0
///   point 1 0
///   point 1 1
///   weights 1 0.75 1        (optional; absent means polynomial)
///
/// Parse failures throw ParseError with the file name and line number.
RationalCurve read_curve_file(const std::string& path);

RationalCurve parse_curve_text(std::istream& in, const std::string& name);
RationalCurve parse_curve_json(std::istream& in, const std::string& name);

void write_curve_text(std::ostream& out, const RationalCurve& curve);
void write_curve_json(std::ostream& out, const RationalCurve& curve);
void write_curve_file(const std::string& path, const RationalCurve& curve);

}  // namespace bezjet
