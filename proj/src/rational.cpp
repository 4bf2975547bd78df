#include "cmap/rational.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "cmap/errors.hpp"

namespace cmap {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Rational parse_unsigned_decimal(std::string_view text, std::string_view original) {
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
      (dot != std::string_view::npos && !all_digits(frac))) {
    throw ParameterError("not a number: '" + std::string(original) + "'");
  }
  cpp_int num = whole.empty() ? cpp_int(0) : cpp_int(std::string(whole));
  cpp_int den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return Rational(num, den);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view p = body.substr(0, slash);
    std::string_view q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) {
      throw ParameterError("not a fraction: '" + std::string(text) + "'");
    }
    cpp_int den(std::string{q});
    if (den == 0) throw ParameterError("zero denominator: '" + std::string(text) + "'");
    value = Rational(cpp_int(std::string{p}), den);
  } else {
    value = parse_unsigned_decimal(body, text);
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  const cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_decimal(const Rational& value, int significant_digits) {
  std::ostringstream out;
  out << std::setprecision(significant_digits) << value.convert_to<double>();
  return out.str();
}

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

std::int64_t floor_to_int(const Rational& value) {
  const cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  cpp_int q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q.convert_to<std::int64_t>();
}

std::int64_t ceil_to_int(const Rational& value) {
  std::int64_t f = floor_to_int(value);
  return is_integer(value) ? f : f + 1;
}

std::int64_t to_int(const Rational& value) {
  if (!is_integer(value)) {
    throw ParameterError("expected an integer, got " + format_rational(value));
  }
  return boost::multiprecision::numerator(value).convert_to<std::int64_t>();
}

}  // namespace cmap
