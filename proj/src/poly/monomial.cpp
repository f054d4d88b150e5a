#include "fsig/poly/monomial.hpp"

#include "fsig/error.hpp"

#include <algorithm>
#include <limits>

namespace fsig::poly {

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t e = std::uint64_t{a.exps_[i]} + b.exps_[i];
    if (e > std::numeric_limits<Monomial::Exponent>::max()) throw ExponentOverflow("monomial exponent overflow");
    out.exps_[i] = static_cast<Monomial::Exponent>(e);
  }
  return out;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.exps_[i] > a.exps_[i]) throw UsageError("monomial division without divisibility");
    out.exps_[i] = a.exps_[i] - b.exps_[i];
  }
  return out;
}

Monomial Monomial::pow(std::uint64_t k) const {
  Monomial out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (exps_[i] != 0 && k > std::numeric_limits<Exponent>::max() / exps_[i]) {
      throw ExponentOverflow("monomial exponent overflow");
    }
    out.exps_[i] = static_cast<Exponent>(exps_[i] * k);
  }
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
  return out;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
  return out;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto e : exps_) h = (h ^ e) * 0x100000001b3ull;
  return h;
}

namespace {

// grevlex restricted to [begin, end)
int grevlex_range(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = begin; i < end; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = end; i-- > begin;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::elimination: {
      const std::size_t k = std::min(block_, a.size());
      if (int c = grevlex_range(a, b, 0, k)) return c;
      return grevlex_range(a, b, k, a.size());
    }
    case Kind::grevlex:
    default:
      return grevlex_range(a, b, 0, a.size());
  }
}

}  // namespace fsig::poly
