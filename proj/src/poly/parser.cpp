#include "fsig/poly/parser.hpp"

#include <cctype>
#include <sstream>

namespace fsig::poly {

std::vector<std::string> default_variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names, std::uint32_t p)
      : text_(text), names_(names), p_(p) {}

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Polynomial out = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return out;
  }

 private:
  Polynomial expression() {
    Polynomial acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip_space();
      if (accept('*')) acc = acc * unary();
      else return acc;
    }
  }

  Polynomial unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    skip_space();
    if (accept('^')) {
      skip_space();
      const std::size_t at = pos_;
      if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("expected exponent", pos_);
      }
      std::uint64_t k = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
        if (k > (UINT32_MAX - digit) / 10) throw ParseError("exponent too large", at);
        k = k * 10 + digit;
        ++pos_;
      }
      return base.pow(k);
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      skip_space();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t r = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        r = (r * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p_;
        ++pos_;
      }
      return Polynomial::constant(names_.size(), p_, static_cast<std::int64_t>(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Polynomial::variable(names_.size(), p_, i);
      throw ParseError("unknown variable '" + std::string(name) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::uint32_t p_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars, std::uint32_t p) {
  return parse_polynomial(text, default_variable_names(nvars), p);
}

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, std::uint32_t p) {
  PrimeField check(p);
  return Parser(text, names, p).parse();
}

std::string to_string(const Polynomial& f) { return to_string(f, default_variable_names(f.nvars())); }

std::string to_string(const Polynomial& f, const std::vector<std::string>& names) {
  if (names.size() != f.nvars()) throw UsageError("wrong number of variable names");
  if (f.is_zero()) return "0";
  const Polynomial g = f.with_order(MonomialOrder::grevlex());
  std::ostringstream out;
  bool first = true;
  for (const auto& t : g.terms()) {
    if (!first) out << " + ";
    first = false;
    bool wrote = false;
    if (t.coeff != 1 || t.monomial.is_one()) {
      out << t.coeff;
      wrote = true;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (wrote) out << '*';
      out << names[i];
      if (t.monomial[i] > 1) out << '^' << t.monomial[i];
      wrote = true;
    }
  }
  return out.str();
}

}  // namespace fsig::poly
