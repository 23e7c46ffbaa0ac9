#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace scorevote {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar used for all ballot values, weights, scores and
// utilities. Always stored in canonical form (reduced, positive denominator),
// so operator== is mathematical equality.
using Rational = boost::multiprecision::cpp_rational;

// Parses "7", "-7" or "p/q" (denominator must be nonzero).
// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// Inverse of parse_rational: "7" when integral, "p/q" otherwise.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

// Best rational approximation of x with denominator <= max_denominator,
// computed from the continued-fraction convergents of x.
Rational rationalize(double x, long long max_denominator = 1'000'000);

}  // namespace scorevote
