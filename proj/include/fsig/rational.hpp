#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace fsig {

// Expression templates off: values, not lazy expressions, flow through auto.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Parses "num/den" or "num" (optional sign, decimal digits).
Rational parse_rational(std::string_view text);

/// Always emits "num/den" with den > 0, e.g. "1/1", "-3/4".
std::string format_rational(const Rational& value);

/// Fixed-point decimal rendering for human tables.
std::string format_decimal(const Rational& value, int digits = 6);

BigInt floor_of(const Rational& value);
BigInt ceil_of(const Rational& value);
bool is_integer(const Rational& value);
double to_double(const Rational& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace fsig
