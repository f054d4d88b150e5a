#include "fsig/poly/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

namespace fsig::poly {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Polynomial::Polynomial(std::size_t nvars, std::uint32_t p, MonomialOrder order)
    : nvars_(nvars), field_(p), order_(order) {}

Polynomial Polynomial::constant(std::size_t nvars, std::uint32_t p, std::int64_t c) {
  return from_monomial(Monomial(nvars), p, c);
}

Polynomial Polynomial::variable(std::size_t nvars, std::uint32_t p, std::size_t index) {
  if (index >= nvars) throw InvalidInput("variable index out of range");
  return from_monomial(Monomial::variable(nvars, index), p);
}

Polynomial Polynomial::from_monomial(const Monomial& m, std::uint32_t p, std::int64_t c) {
  Polynomial out(m.size(), p);
  const std::uint32_t r = out.field_.reduce(c);
  if (r != 0) out.terms_.push_back({m, r});
  return out;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::uint32_t p, std::vector<Term> terms,
                                  MonomialOrder order) {
  Polynomial out(nvars, p, order);
  for (auto& t : terms) {
    if (t.monomial.size() != nvars) throw InvalidInput("term has wrong number of variables");
    t.coeff %= p;
  }
  out.sort_and_merge(terms);
  out.terms_ = std::move(terms);
  return out;
}

void Polynomial::sort_and_merge(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [this](const Term& a, const Term& b) { return order_.greater(a.monomial, b.monomial); });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coeff = field_.add(merged.back().coeff, t.coeff);
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  terms = std::move(merged);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = terms_.front().monomial.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.monomial.degree() == d; });
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw UsageError("leading term of the zero polynomial");
  return terms_.front();
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::uint32_t Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.monomial == m) return t.coeff;
  return 0;
}

Polynomial Polynomial::with_order(const MonomialOrder& order) const {
  Polynomial out(nvars_, characteristic(), order);
  out.terms_ = terms_;
  if (!(order == order_)) {
    std::sort(out.terms_.begin(), out.terms_.end(),
              [&order](const Term& a, const Term& b) { return order.greater(a.monomial, b.monomial); });
  }
  return out;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field_.inv(leading_coeff()));
}

Polynomial Polynomial::scaled(std::uint32_t c) const {
  Polynomial out(nvars_, characteristic(), order_);
  c %= characteristic();
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.monomial, field_.mul(t.coeff, c)});
  return out;
}

Polynomial Polynomial::times_term(const Monomial& m, std::uint32_t c) const {
  Polynomial out(nvars_, characteristic(), order_);
  c %= characteristic();
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  // multiplication by a monomial preserves any monomial order
  for (const auto& t : terms_) out.terms_.push_back({t.monomial * m, field_.mul(t.coeff, c)});
  return out;
}

Polynomial Polynomial::frobenius(std::uint64_t q) const {
  Polynomial out(nvars_, characteristic(), order_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.monomial.pow(q), t.coeff});
  return out;
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  const std::uint32_t p = characteristic();
  Polynomial result = constant(nvars_, p, 1).with_order(order_);
  std::uint64_t q = 1;
  while (k > 0) {
    const std::uint64_t digit = k % p;
    if (digit != 0) {
      Polynomial factor = constant(nvars_, p, 1).with_order(order_);
      for (std::uint64_t i = 0; i < digit; ++i) factor = factor * *this;
      result = result * factor.frobenius(q);
    }
    k /= p;
    if (k > 0) {
      if (q > UINT64_MAX / p) throw ExponentOverflow("power exponent overflow");
      q *= p;
    }
  }
  return result;
}

Polynomial Polynomial::with_inserted_variables(std::size_t at, std::size_t count, const MonomialOrder& order) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Monomial::Exponent> e(t.monomial.exponents().begin(), t.monomial.exponents().end());
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(at), count, 0);
    terms.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(nvars_ + count, characteristic(), std::move(terms), order);
}

void Polynomial::require_compatible(const Polynomial& other) const {
  if (nvars_ != other.nvars_ || characteristic() != other.characteristic()) {
    throw UsageError("polynomials live in different rings");
  }
}

Polynomial combine(const Polynomial& a, const Polynomial& b, std::uint32_t b_scale) {
  a.require_compatible(b);
  const auto& field = a.field_;
  b_scale %= a.characteristic();
  if (b_scale == 0 || b.terms_.empty()) return a;
  const Polynomial* bb = &b;
  Polynomial resorted(a.nvars_, a.characteristic());
  if (!(b.order_ == a.order_)) {
    resorted = b.with_order(a.order_);
    bb = &resorted;
  }
  Polynomial out(a.nvars_, a.characteristic(), a.order_);
  out.terms_.reserve(a.terms_.size() + bb->terms_.size());
  std::size_t i = 0, j = 0;
  const auto& at = a.terms_;
  const auto& bt = bb->terms_;
  while (i < at.size() || j < bt.size()) {
    int c;
    if (i == at.size()) c = -1;
    else if (j == bt.size()) c = 1;
    else c = a.order_.compare(at[i].monomial, bt[j].monomial);
    if (c > 0) {
      out.terms_.push_back(at[i++]);
    } else if (c < 0) {
      out.terms_.push_back({bt[j].monomial, field.mul(bt[j].coeff, b_scale)});
      ++j;
    } else {
      const std::uint32_t s = field.add(at[i].coeff, field.mul(bt[j].coeff, b_scale));
      if (s != 0) out.terms_.push_back({at[i].monomial, s});
      ++i;
      ++j;
    }
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, 1); }

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return combine(a, b, a.characteristic() - 1);
}

Polynomial Polynomial::operator-() const { return scaled(characteristic() - 1); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_compatible(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_, a.characteristic(), a.order_);
  if (b.terms_.size() == 1) return a.times_term(b.terms_[0].monomial, b.terms_[0].coeff);
  if (a.terms_.size() == 1) return b.with_order(a.order_).times_term(a.terms_[0].monomial, a.terms_[0].coeff);
  const auto& field = a.field_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial, 0);
      it->second = field.add(it->second, field.mul(s.coeff, t.coeff));
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, c});
  Polynomial out(a.nvars_, a.characteristic(), a.order_);
  std::sort(terms.begin(), terms.end(),
            [&a](const Term& x, const Term& y) { return a.order_.greater(x.monomial, y.monomial); });
  out.terms_ = std::move(terms);
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.characteristic() != b.characteristic()) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.order_ == b.order_) return a.terms_ == b.terms_;
  return a.terms_ == b.with_order(a.order_).terms_;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InvalidInput("division by the zero polynomial");
  const Polynomial divisor = b.with_order(a.order());
  const auto& field = a.field();
  const Term& lead = divisor.leading_term();
  const std::uint32_t lead_inv = field.inv(lead.coeff);
  Polynomial remainder = a;
  std::vector<Term> quotient;
  while (!remainder.is_zero()) {
    const Term& t = remainder.leading_term();
    if (!lead.monomial.divides(t.monomial)) throw InvalidInput("polynomial division is not exact");
    const Monomial m = t.monomial / lead.monomial;
    const std::uint32_t c = field.mul(t.coeff, lead_inv);
    quotient.push_back({m, c});
    remainder = combine(remainder, divisor.times_term(m, c), field.neg(1));
  }
  return Polynomial::from_terms(a.nvars(), a.characteristic(), std::move(quotient), a.order());
}

}  // namespace fsig::poly
