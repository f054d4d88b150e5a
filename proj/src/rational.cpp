#include "fsig/rational.hpp"

#include "fsig/error.hpp"

#include <cctype>

namespace fsig {
namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw InvalidInput("malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(whole, whole));
  const BigInt num = parse_integer(trim(whole.substr(0, slash)), whole);
  const BigInt den = parse_integer(trim(whole.substr(slash + 1)), whole);
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(whole) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

BigInt floor_of(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& value) { return -floor_of(-value); }

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string format_decimal(const Rational& value, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half away from zero
  const Rational scaled = value * scale;
  const bool negative = scaled < 0;
  BigInt rounded = floor_of((negative ? Rational(-scaled) : scaled) + Rational(1, 2));
  std::string body = rounded.str();
  if (static_cast<int>(body.size()) <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out = body.substr(0, body.size() - digits);
  if (digits > 0) out += "." + body.substr(body.size() - digits);
  if (negative && rounded != 0) out.insert(0, "-");
  return out;
}

}  // namespace fsig
