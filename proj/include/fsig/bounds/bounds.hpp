#pragma once

#include "fsig/covers/cover.hpp"
#include "fsig/frobenius/splitting.hpp"
#include "fsig/toric/toric_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsig::bounds {

/// floor(1/s) for s in (0, 1].
std::int64_t inverse_floor(const Rational& s);

struct BoundReport {
  std::string kind;  // "order", "index" or "veronese"
  Rational s;
  bool exact = true;
  std::int64_t bound = 0;  // floor(1/s)
  std::uint32_t prime_to_p = 0;
  /// Sequence-based estimates: the interval [last value, extrapolation] and its floors.
  std::optional<Rational> s_low;
  std::optional<Rational> s_high;
  std::optional<std::int64_t> bound_low;
  std::optional<std::int64_t> bound_high;
  /// Degrees of the constructible covers checked against the bound.
  std::vector<std::int64_t> admissible_degrees;
  /// The order, index or m compared with the bound (index and Veronese reports).
  std::optional<std::int64_t> order;
  bool attained = false;
  bool ok = true;
  bool provisional() const { return !exact; }
};

/// Exact bound from the toric backend; covers found by the overlattice search.
BoundReport pi1_order_bound(const toric::ToricRing& ring,
                            const std::optional<toric::TorusQDivisor>& delta = std::nullopt);

/// Provisional bound from a splitting sequence.
BoundReport pi1_order_bound(const frobenius::SplittingSequence& seq, std::uint32_t p);

struct PurityVerdict {
  Rational s;
  bool exact = true;
  bool forced = false;
  Rational threshold;
  std::string clause;  // "s > 1/2", "p = 2, s > 1/3" or "none"
  /// Nontrivial étale-in-codimension-one covers found (toric rings only).
  std::optional<std::size_t> covers_found;
  bool consistent = true;
};

PurityVerdict purity_check(const Rational& s, std::uint32_t p, bool exact = true);
PurityVerdict purity_check(const toric::ToricRing& ring);

/// Cyclic cover of a torsion divisor class: order n must be prime to p and at most 1/s.
BoundReport index_bound(const toric::ToricRing& ring, const toric::TorusQDivisor& divisor);

/// m-th Veronese subring of F_p[x_1..x_d] against its cover by the polynomial ring.
BoundReport veronese_bound(std::size_t d, std::int64_t m, std::uint32_t p);

}  // namespace fsig::bounds
