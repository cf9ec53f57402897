#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace contagion {

// Exact rational arithmetic for every threshold comparison. The default
// cascade sits exactly on equality boundaries (L/d == E whenever C-1 is an
// integer), so all exposure sums and equity tests go through this type.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", a plain integer, or a decimal such as "2.5" into an exact
// rational. Rejects anything else (including exponent notation).
Rational parse_rational(std::string_view text);

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

// floor(value) for non-negative rationals, as an unsigned integer.
std::uint64_t floor_to_uint64(const Rational& value);

} // namespace contagion
