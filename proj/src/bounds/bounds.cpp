#include "fsig/bounds/bounds.hpp"

#include "fsig/error.hpp"
#include "fsig/toric/fsignature.hpp"

#include <algorithm>
#include <numeric>

namespace fsig::bounds {

using covers::CoverDescriptor;
using lattice::IntMat;
using lattice::IntVec;

std::int64_t inverse_floor(const Rational& s) {
  if (s <= 0) throw NotStronglyFRegular("s = 0: the ring is not strongly F-regular and no bound applies");
  return floor_of(Rational(1) / s).convert_to<std::int64_t>();
}

namespace {

void record_covers(BoundReport& rep, const std::vector<CoverDescriptor>& found) {
  for (const auto& c : found) rep.admissible_degrees.push_back(c.degree);
  std::sort(rep.admissible_degrees.begin(), rep.admissible_degrees.end());
  rep.admissible_degrees.erase(std::unique(rep.admissible_degrees.begin(), rep.admissible_degrees.end()),
                               rep.admissible_degrees.end());
  const std::int64_t top = rep.admissible_degrees.empty() ? 1 : rep.admissible_degrees.back();
  rep.attained = top == rep.bound;
  rep.ok = top <= rep.bound;
  for (auto deg : rep.admissible_degrees) rep.ok = rep.ok && deg % rep.prime_to_p != 0;
}

}  // namespace

BoundReport pi1_order_bound(const toric::ToricRing& ring, const std::optional<toric::TorusQDivisor>& delta) {
  BoundReport rep;
  rep.kind = "order";
  rep.prime_to_p = ring.characteristic();
  rep.s = delta ? toric::toric_fsig_exact(ring, *delta) : toric::toric_fsig_exact(ring);
  rep.bound = inverse_floor(rep.s);
  record_covers(rep, delta ? covers::pair_cover_search(ring, *delta) : covers::etale_cover_search(ring));
  return rep;
}

BoundReport pi1_order_bound(const frobenius::SplittingSequence& seq, std::uint32_t p) {
  if (seq.records.empty()) throw InvalidInput("empty splitting sequence");
  BoundReport rep;
  rep.kind = "order";
  rep.exact = false;
  rep.prime_to_p = p;
  rep.s = seq.estimate;
  rep.bound = inverse_floor(rep.s);
  const Rational a = seq.last_value, b = seq.extrapolated.value_or(seq.last_value);
  rep.s_low = std::min(a, b);
  rep.s_high = std::max(a, b);
  if (*rep.s_high > 0) rep.bound_low = inverse_floor(*rep.s_high);
  if (*rep.s_low > 0) rep.bound_high = inverse_floor(*rep.s_low);
  return rep;
}

PurityVerdict purity_check(const Rational& s, std::uint32_t p, bool exact) {
  PurityVerdict v;
  v.s = s;
  v.exact = exact;
  if (s > make_rational(1, 2)) {
    v.forced = true;
    v.threshold = make_rational(1, 2);
    v.clause = "s > 1/2";
  } else if (p == 2 && s > make_rational(1, 3)) {
    v.forced = true;
    v.threshold = make_rational(1, 3);
    v.clause = "p = 2, s > 1/3";
  } else {
    v.threshold = p == 2 ? make_rational(1, 3) : make_rational(1, 2);
    v.clause = "none";
  }
  return v;
}

PurityVerdict purity_check(const toric::ToricRing& ring) {
  auto v = purity_check(toric::toric_fsig_exact(ring), ring.characteristic(), true);
  v.covers_found = covers::etale_cover_search(ring).size();
  v.consistent = !v.forced || *v.covers_found == 0;
  return v;
}

BoundReport index_bound(const toric::ToricRing& ring, const toric::TorusQDivisor& divisor) {
  const std::size_t d = ring.dimension();
  if (divisor.coeffs.size() != ring.num_facets()) throw InvalidInput("divisor does not match the facets");
  for (const auto& c : divisor.coeffs)
    if (!is_integer(c)) throw InvalidInput("index bound needs an integral divisor");
  // m0 with <m0, n_F> = c_F; nD is principal iff n m0 lies in M
  IntMat a(d, IntVec(d));
  std::vector<std::size_t> chosen;
  const auto& normals = ring.facet_normals();
  for (std::size_t f = 0; f < normals.size() && chosen.size() < d; ++f) {
    IntMat rows;
    for (auto i : chosen) rows.push_back(normals[i]);
    rows.push_back(normals[f]);
    if (lattice::rank(rows, d) == rows.size()) chosen.push_back(f);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = normals[chosen[j]][i];
  const auto inv = lattice::inverse(a);
  lattice::RatVec m0(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m0[i] += divisor.coeffs[chosen[j]] * inv[j][i];
  for (std::size_t f = 0; f < normals.size(); ++f) {
    Rational s = 0;
    for (std::size_t i = 0; i < d; ++i) s += m0[i] * Rational(normals[f][i]);
    if (s != divisor.coeffs[f]) throw InvalidInput("divisor class is not torsion");
  }
  BigInt n = 1;
  for (const auto& x : m0) n = boost::multiprecision::lcm(n, BigInt(denominator(x)));
  BoundReport rep;
  rep.kind = "index";
  rep.prime_to_p = ring.characteristic();
  rep.order = n.convert_to<std::int64_t>();
  if (*rep.order % ring.characteristic() == 0) {
    throw InvalidInput("p divides the index " + std::to_string(*rep.order));
  }
  rep.s = toric::toric_fsig_exact(ring);
  rep.bound = inverse_floor(rep.s);
  const auto cover = covers::overlattice_cover(ring, {m0});
  rep.admissible_degrees = {cover.degree};
  rep.attained = *rep.order == rep.bound;
  rep.ok = *rep.order <= rep.bound && cover.degree == *rep.order && cover.etale_in_codim1;
  return rep;
}

BoundReport veronese_bound(std::size_t d, std::int64_t m, std::uint32_t p) {
  if (m < 1) throw InvalidInput("Veronese degree must be positive");
  const auto v = toric::veronese(d, m, p);
  BoundReport rep;
  rep.kind = "veronese";
  rep.prime_to_p = p;
  rep.order = m;
  rep.s = toric::toric_fsig_exact(v.ring);
  rep.bound = inverse_floor(rep.s);
  const auto cover = covers::quotient_cover(m, std::vector<std::int64_t>(d, 1), p, 1);
  rep.admissible_degrees = {cover.degree};
  rep.attained = m == rep.bound;
  rep.ok = m <= rep.bound && cover.degree == m && (m == 1 || d < 2 || cover.etale_in_codim1);
  return rep;
}

}  // namespace fsig::bounds
