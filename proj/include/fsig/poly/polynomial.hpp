#pragma once

#include "fsig/poly/monomial.hpp"
#include "fsig/poly/prime_field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fsig::poly {

struct Term {
  Monomial monomial;
  std::uint32_t coeff;  // in [1, p)

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_p in a fixed number of variables. Terms are
/// kept sorted in descending order for the polynomial's monomial order and
/// never carry a zero coefficient.
class Polynomial {
 public:
  Polynomial(std::size_t nvars, std::uint32_t p, MonomialOrder order = MonomialOrder::grevlex());

  static Polynomial constant(std::size_t nvars, std::uint32_t p, std::int64_t c);
  static Polynomial variable(std::size_t nvars, std::uint32_t p, std::size_t index);
  static Polynomial from_monomial(const Monomial& m, std::uint32_t p, std::int64_t c = 1);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial from_terms(std::size_t nvars, std::uint32_t p, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::grevlex());

  std::size_t nvars() const { return nvars_; }
  std::uint32_t characteristic() const { return field_.characteristic(); }
  const PrimeField& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_homogeneous() const;
  std::size_t num_terms() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  std::uint32_t leading_coeff() const { return leading_term().coeff; }
  std::uint64_t total_degree() const;

  std::uint32_t coefficient(const Monomial& m) const;

  /// Same polynomial with terms re-sorted for another order.
  Polynomial with_order(const MonomialOrder& order) const;
  Polynomial monic() const;
  Polynomial scaled(std::uint32_t c) const;
  Polynomial times_term(const Monomial& m, std::uint32_t c) const;

  /// this^k by base-p digits: f^(sum d_i p^i) = prod (f^(d_i))^[p^i].
  Polynomial pow(std::uint64_t k) const;
  /// Frobenius: f^q for q a power of p (coefficients fixed, exponents scaled).
  Polynomial frobenius(std::uint64_t q) const;

  /// Inserts `count` new variables (all with exponent 0) at position `at`.
  Polynomial with_inserted_variables(std::size_t at, std::size_t count, const MonomialOrder& order) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  /// Compares term sets, independent of the stored order.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void require_compatible(const Polynomial& other) const;
  void sort_and_merge(std::vector<Term>& terms);

  std::size_t nvars_;
  PrimeField field_;
  MonomialOrder order_;
  std::vector<Term> terms_;

  friend Polynomial combine(const Polynomial& a, const Polynomial& b, std::uint32_t b_scale);
};

/// a + c*b in the order of a.
Polynomial combine(const Polynomial& a, const Polynomial& b, std::uint32_t b_scale);

/// Exact quotient a / b; throws InvalidInput if b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

}  // namespace fsig::poly
