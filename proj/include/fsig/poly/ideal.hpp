#pragma once

#include "fsig/deadline.hpp"
#include "fsig/poly/polynomial.hpp"

#include <optional>
#include <vector>

namespace fsig::poly {

/// Ideal of F_p[x_0..x_{n-1}] given by generators, optionally carrying a
/// reduced Groebner basis for a stated order.
class Ideal {
 public:
  Ideal(std::size_t nvars, std::uint32_t p);
  /// Zero generators are dropped.
  Ideal(std::size_t nvars, std::uint32_t p, std::vector<Polynomial> generators);

  static Ideal maximal(std::size_t nvars, std::uint32_t p);
  static Ideal from_monomials(std::size_t nvars, std::uint32_t p, const std::vector<Monomial>& monomials);
  /// Trusts the caller that `basis` is the reduced Groebner basis for `order`.
  static Ideal from_groebner(std::size_t nvars, std::uint32_t p, std::vector<Polynomial> basis,
                             const MonomialOrder& order);

  std::size_t nvars() const { return nvars_; }
  std::uint32_t characteristic() const { return p_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }

  /// True when every generator is a single term.
  bool is_monomial() const;
  /// Minimal monomial generators; requires is_monomial().
  std::vector<Monomial> minimal_monomial_generators() const;
  /// Monomial ideal containing a pure power of every variable.
  bool is_artinian_monomial() const;

  bool has_groebner() const { return groebner_.has_value(); }
  /// Requires has_groebner().
  const std::vector<Polynomial>& groebner() const;
  const MonomialOrder& groebner_order() const { return order_; }

 private:
  friend Ideal buchberger(const Ideal&, const MonomialOrder&, const Deadline&);

  std::size_t nvars_;
  std::uint32_t p_;
  std::vector<Polynomial> generators_;
  std::optional<std::vector<Polynomial>> groebner_;
  MonomialOrder order_;
};

/// Ideal with its reduced Groebner basis cached. The empty ideal yields an
/// empty basis.
Ideal buchberger(const Ideal& ideal, const MonomialOrder& order = MonomialOrder::grevlex(),
                 const Deadline& deadline = {});

/// Fully reduced remainder. Throws UsageError without a cached basis.
Polynomial normal_form(const Polynomial& f, const Ideal& ideal);

/// Membership through normal_form; requires a cached basis.
bool contains(const Ideal& ideal, const Polynomial& f);

/// (I : f). Artinian monomial I goes through linear algebra on standard
/// monomials, anything else through elimination.
Ideal colon_ideal(const Ideal& ideal, const Polynomial& f, const Deadline& deadline = {});
/// (I : f) = (I ∩ <f>) / f with I ∩ <f> from t*I + (1-t)*f.
Ideal colon_ideal_by_elimination(const Ideal& ideal, const Polynomial& f, const Deadline& deadline = {});
/// (I : f) for Artinian monomial I as the kernel of multiplication by f on
/// P/I. The result carries its reduced grevlex basis.
Ideal colon_ideal_by_linear_algebra(const Ideal& ideal, const Polynomial& f, const Deadline& deadline = {});

/// I^[q] = <g^q>; q must be a power of the characteristic.
Ideal frobenius_power(const Ideal& ideal, std::uint64_t q);

Ideal ideal_sum(const Ideal& a, const Ideal& b);

/// dim_{F_p} P/I, or nullopt when infinite.
std::optional<std::uint64_t> quotient_length(const Ideal& ideal, const Deadline& deadline = {});

/// dim of g * (P/I) = dim P/(I : g), for Artinian monomial I.
std::uint64_t multiplication_rank(const Ideal& ideal, const Polynomial& g, const Deadline& deadline = {});

/// Standard monomials of an Artinian monomial ideal, grevlex ascending.
std::vector<Monomial> standard_monomials(const Ideal& ideal);

}  // namespace fsig::poly
