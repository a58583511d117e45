#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace dynflow {

// Exact arbitrary-precision rational; the carrier for every quantity in the
// library (rates, times, masses). Always stored in lowest terms with a
// positive denominator (guaranteed by cpp_rational).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p/q" or an integer string "p". Throws std::invalid_argument on
// anything else (in particular, decimal floats are rejected).
Rational parse_rational(const std::string& s);

// Serializes as "p/q", or "p" when the denominator is 1.
std::string rational_to_string(const Rational& r);

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Smallest integer >= r.
BigInt rational_ceil(const Rational& r);

// Largest integer <= r.
BigInt rational_floor(const Rational& r);

}  // namespace dynflow
