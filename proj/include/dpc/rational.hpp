#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace dpc {

// All weights, deltas and error values are exact rationals over int64.
// Magnitudes in this domain stay tiny (weights, grid steps of 1/64,
// fractional marks with denominator 1024), so int64 components are ample.
using Rational = boost::rational<long long>;

inline Rational rat_abs(const Rational& r) {
    return r < Rational(0) ? -r : r;
}

/**
 * Parse an exact rational literal.
 *
 * Accepted forms: integers ("42", "-7"), decimals ("3.25", "0.015625"),
 * and explicit fractions ("13/4", "-1/64").  Parsing is exact: "3.25"
 * becomes 13/4, never a binary float.  Throws std::invalid_argument on
 * malformed input (including division by zero).
 */
Rational parse_rational(const std::string& text);

/**
 * Format a rational so that parse_rational(format_rational(r)) == r.
 * Integers print bare ("7"), everything else as "p/q" in lowest terms.
 */
std::string format_rational(const Rational& r);

}  // namespace dpc
