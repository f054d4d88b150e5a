#pragma once

#include "fsig/error.hpp"

#include <cstdint>
#include <string>

namespace fsig::poly {

bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for a prime p < 2^31. Residues are kept in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p)) {
      throw InvalidInput("characteristic must be a prime below 2^31, got " + std::to_string(p));
    }
  }

  std::uint32_t characteristic() const { return p_; }

  std::uint32_t reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t result = 1 % p_;
    while (k) {
      if (k & 1) result = mul(result, a);
      a = mul(a, a);
      k >>= 1;
    }
    return result;
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a % p_ == 0) throw InvalidInput("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

 private:
  std::uint32_t p_;
};

/// A single element of F_p carrying its modulus.
class PrimeFieldElement {
 public:
  PrimeFieldElement(std::int64_t value, std::uint32_t p) : field_(p), value_(field_.reduce(value)) {}

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return field_.characteristic(); }
  bool is_zero() const { return value_ == 0; }

  PrimeFieldElement inverse() const { return {field_.inv(value_), modulus()}; }

  friend PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    a.require_same(b);
    return {a.field_.add(a.value_, b.value_), a.modulus()};
  }
  friend PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    a.require_same(b);
    return {a.field_.sub(a.value_, b.value_), a.modulus()};
  }
  friend PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    a.require_same(b);
    return {a.field_.mul(a.value_, b.value_), a.modulus()};
  }
  friend PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    return a * b.inverse();
  }
  friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    return a.modulus() == b.modulus() && a.value_ == b.value_;
  }

 private:
  void require_same(const PrimeFieldElement& other) const {
    if (modulus() != other.modulus()) throw UsageError("mixing elements of different prime fields");
  }

  PrimeField field_;
  std::uint32_t value_;
};

}  // namespace fsig::poly
