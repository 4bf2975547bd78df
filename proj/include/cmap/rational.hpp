#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cmap {

/// Exact rational arithmetic for memory sizes, replication factors and rates.
using Rational = boost::multiprecision::cpp_rational;

/// Accepts "3", "-2", "1.5", "0.125" and "3/2". Decimal input is converted
/// exactly (1.5 -> 3/2). Throws ParameterError on malformed text.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Decimal rendering with the given number of significant digits.
std::string format_decimal(const Rational& value, int significant_digits = 6);

bool is_integer(const Rational& value);
std::int64_t floor_to_int(const Rational& value);
std::int64_t ceil_to_int(const Rational& value);
std::int64_t to_int(const Rational& value);  // requires is_integer()

}  // namespace cmap
