#pragma once

#include <string>

#include "weylscope/measure.hpp"

namespace weylscope {

/// Parse a measure description:
///   {"atoms": [[pos, weight], ...],
///    "density": [{"from": a, "to": b, "coeffs": [c0, c1, c2, c3]}, ...],
///    "domain_end": b | "inf"}
/// Density coefficients are in the absolute coordinate y. Every error is a
/// ParseError carrying the 1-based line of the offending element.
SignedMeasure parse_measure(const std::string& text);

SignedMeasure load_measure(const std::string& path);

/// Serialize in the same format (17 significant digits).
std::string measure_to_json(const SignedMeasure& m);

}  // namespace weylscope
