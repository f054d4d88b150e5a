// Acceptance gate: one PASS/FAIL line per criterion.
#include "fsig/bounds/bounds.hpp"
#include "fsig/covers/cover.hpp"
#include "fsig/frobenius/splitting.hpp"
#include "fsig/poly/parser.hpp"
#include "fsig/toric/fsignature.hpp"

#include <fmt/core.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace fsig;
using namespace fsig::covers;
using fsig::toric::Rounding;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Rational frac(std::int64_t a, std::int64_t b) { return make_rational(a, b); }

Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

struct QuotientCase {
  std::int64_t n;
  std::vector<std::int64_t> w;
  std::uint32_t p;
};

// 1/n(a,b), n <= 8, small actions, p in {3,5,7} prime to n.
std::vector<QuotientCase> quotient_matrix() {
  std::vector<QuotientCase> out;
  for (std::uint32_t p : {3u, 5u, 7u})
    for (std::int64_t n = 2; n <= 8; ++n) {
      if (n % p == 0) continue;
      for (std::int64_t a = 1; a < n; ++a)
        for (std::int64_t b = a; b < n; ++b)
          if (toric::action_is_small(n, {a, b})) out.push_back({n, {a, b}, p});
    }
  return out;
}

frobenius::RingPresentation a_type(std::int64_t n, std::uint32_t p) {
  const std::vector<std::string> xyz{"x", "y", "z"};
  return frobenius::RingPresentation::hypersurface(
      poly::parse_polynomial("x*y - z^" + std::to_string(n), xyz, p), xyz);
}

Outcome quadric_value() {
  Outcome o;
  const std::uint32_t p = 3;
  const auto ring = frobenius::RingPresentation::hypersurface(
      poly::parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, p));
  const auto seq = frobenius::fsig_sequence(ring, {}, 3, false, Deadline::after_seconds(300.0));
  const Rational target = frac(3, 4);
  std::string values;
  for (std::size_t i = 0; i < seq.records.size(); ++i) {
    const auto& v = seq.records[i].normalized;
    values += (i ? ", " : "") + format_rational(v);
    o.require(v >= 0 && v <= 1, "value outside [0,1]");
    if (i > 0) o.require(v <= seq.records[i - 1].normalized, "sequence not monotone");
  }
  const Rational last = seq.last_value;
  const Rational extrapolated = seq.extrapolated.value_or(last);
  o.require(abs_value(last - target) <= frac(1, 10), "e=3 value not within 0.1 of 3/4");
  o.require(abs_value(extrapolated - target) <= frac(1, 50),
            fmt::format("extrapolation {} is {} from 3/4 (tolerance 0.02)", format_decimal(extrapolated),
                        format_decimal(abs_value(extrapolated - target))));
  o.detail = fmt::format("a_e/q^3 = [{}], e=3 value {}, extrapolation {}{}{}", values, format_decimal(last),
                         format_decimal(extrapolated), o.pass ? "" : "; ", o.detail);
  return o;
}

Outcome transformation_rule() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& c : quotient_matrix()) {
    for (const auto& chain : chain_simulation(c.n, c.w, c.p)) {
      for (const auto& step : chain.steps) {
        const auto& cover = step.cover;
        o.require(cover.etale_in_codim1, "chain step not étale in codimension one");
        const auto report = verify_transformation(cover);
        const Rational s_r = toric::toric_fsig_exact(cover.lower);
        const Rational s_s = toric::toric_fsig_exact(cover.upper);
        const Rational predicted = Rational(cover.degree) / Rational(cover.residue_degree) * s_r;
        o.require(report.exact && report.holds, "verify_transformation failed");
        o.require(s_s == predicted, fmt::format("1/{}({},{}) p={}: s(S) = {} but [L:K]/[l:k] s(R) = {}", c.n, c.w[0],
                                                c.w[1], c.p, format_rational(s_s), format_rational(predicted)));
        ++checked;
      }
    }
  }
  o.require(checked > 0, "no covers checked");
  if (o.pass) o.detail = fmt::format("{} chain steps over {} quotient cases", checked, quotient_matrix().size());
  return o;
}

Outcome pairs_rule() {
  Outcome o;
  std::size_t checked = 0;
  for (std::int64_t n : {2, 3}) {
    for (std::uint32_t p : {5u, 7u}) {
      const auto cover = root_cover(2, 0, n, p);
      const Rational t = 1 - frac(1, n);
      toric::TorusQDivisor dx{{t, Rational(0)}};
      const auto report = verify_transformation(cover, dx);
      o.require(report.holds && report.lhs == report.rhs,
                fmt::format("n={} p={}: f s(S,D_Y) = {} vs [L:K] s(R,D_X) = {}", n, p, format_rational(report.lhs),
                            format_rational(report.rhs)));
      o.require(report.s_lower == frac(1, n), "s(R, D_X) is not 1/n");

      const auto plane = frobenius::RingPresentation::regular(2, p);
      frobenius::PairDivisorSpec spec;
      spec.components.push_back({poly::parse_polynomial("x0", 2, p), t});
      const auto seq = frobenius::fsig_sequence(plane, spec, 3);
      const auto q = seq.records.back().q;
      o.require(abs_value(seq.records.back().normalized - frac(1, n)) <= frac(1, static_cast<std::int64_t>(q)),
                fmt::format("n={} p={}: sequence value {} not within 1/q of 1/n", n, p,
                            format_rational(seq.records.back().normalized)));
      ++checked;
    }
  }
  if (o.pass) o.detail = fmt::format("{} root covers, exact identity and sequence value within 1/q at e=3", checked);
  return o;
}

Outcome bound_tightness() {
  Outcome o;
  std::size_t checked = 0;
  for (std::int64_t n = 2; n <= 6; ++n) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      if (n % p == 0) continue;
      const auto q = toric::quotient_singularity(n, {1, 1}, p);
      const auto report = bounds::pi1_order_bound(q.ring);
      const std::string tag = fmt::format("1/{}(1,1) p={}", n, p);
      o.require(report.exact && report.bound == n, tag + ": floor(1/s) != n");
      const auto cover = quotient_cover(n, {1, 1}, p, 1);
      o.require(cover.degree == n && cover.etale_in_codim1, tag + ": degree-n cover missing");
      o.require(toric::toric_fsig_exact(cover.upper) == 1, tag + ": cover is not regular");
      bool realized = false;
      for (auto d : report.admissible_degrees) {
        o.require(std::gcd<std::int64_t>(d, p) == 1, tag + ": admissible degree divisible by p");
        o.require(d <= report.bound, tag + ": admissible degree above the bound");
        realized = realized || d == n;
      }
      o.require(realized && report.attained, tag + ": bound not realized");
      ++checked;
    }
  }
  if (o.pass) o.detail = fmt::format("{} cases, bound n attained by the degree-n cover", checked);
  return o;
}

Outcome doubling() {
  Outcome o;
  std::size_t applicable = 0;
  for (const auto& c : quotient_matrix()) {
    for (const auto& chain : chain_simulation(c.n, c.w, c.p)) {
      for (const auto& step : chain.steps) {
        const auto r = doubling_check(step.cover);
        if (!r.applicable) continue;
        ++applicable;
        o.require(r.s_upper >= 2 * r.s_lower,
                  fmt::format("1/{}({},{}) p={}: s(S) = {} < 2 s(R) = {}", c.n, c.w[0], c.w[1], c.p,
                              format_rational(r.s_upper), format_rational(2 * r.s_lower)));
      }
    }
  }
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto r = doubling_check(quotient_cover(2, {1, 1}, p, 1));
    o.require(r.applicable && r.equality && r.s_upper == 2 * r.s_lower, "A1 in the plane is not an equality case");
  }
  if (o.pass) o.detail = fmt::format("{} non-étale steps, A1 equality in every characteristic", applicable);
  return o;
}

Outcome purity() {
  Outcome o;
  std::vector<toric::ToricRing> rings;
  for (const auto& c : quotient_matrix()) rings.push_back(toric::quotient_singularity(c.n, c.w, c.p).ring);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    rings.push_back(toric::ToricRing::from_rays({{1, 0}, {0, 1}}, p));
    rings.push_back(toric::ToricRing::from_rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, p));
    rings.push_back(toric::ToricRing::from_rays({{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}}, p));
    rings.push_back(toric::ToricRing::from_rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}}, p));
    rings.push_back(toric::ToricRing::from_rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 1}}, p));
    for (std::int64_t n : {2, 3, 4})
      if (n % p != 0) rings.push_back(toric::quotient_singularity(n, {1, 1, 1}, p).ring);
  }
  std::size_t above = 0;
  for (const auto& ring : rings) {
    const Rational s = toric::toric_fsig_exact(ring);
    const Rational threshold = ring.characteristic() == 2 ? frac(1, 3) : frac(1, 2);
    const auto verdict = bounds::purity_check(ring);
    o.require(verdict.consistent, "purity verdict inconsistent with the cover search");
    if (!(s > threshold)) continue;
    ++above;
    const auto covers = etale_cover_search(ring);
    o.require(covers.empty(),
              fmt::format("ring with s = {} has {} étale-in-codim-1 covers", format_rational(s), covers.size()));
    o.require(verdict.forced, "purity not forced above the threshold");
  }
  std::size_t boundary = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto a1 = toric::quotient_singularity(2, {1, 1}, p).ring;
    o.require(toric::toric_fsig_exact(a1) == frac(1, 2), "A1 does not have s = 1/2");
    const auto covers = etale_cover_search(a1);
    bool non_etale = false;
    for (const auto& c : covers) non_etale = non_etale || (c.etale_in_codim1 && c.degree == 2);
    o.require(non_etale, "A1 admits no étale-in-codim-1 cover");
    o.require(!bounds::purity_check(a1).forced, "purity forced at s = 1/2");
    boundary += covers.size();
  }
  if (o.pass)
    o.detail = fmt::format("{} rings above the threshold have no covers; A1 boundary admits {} covers over 3 primes",
                           above, boundary);
  return o;
}

Outcome cross_backend() {
  Outcome o;
  std::size_t checked = 0;
  for (std::int64_t n : {2, 3}) {
    for (std::uint32_t p : {3u, 5u}) {
      if (n % p == 0) continue;
      const auto ring = toric::quotient_singularity(n, {1, n - 1}, p).ring;
      const auto hyp = a_type(n, p);
      for (unsigned e = 1; e <= 3; ++e) {
        const auto t = toric::toric_splitting_number(ring, toric::TorusQDivisor::zero(ring.num_facets()), e);
        const auto f = frobenius::splitting_number(hyp, {}, e);
        o.require(t == f, fmt::format("A{} p={} e={}: toric {} vs Fedder {}", n - 1, p, e, t, f));
        ++checked;
      }
    }
  }
  if (o.pass) o.detail = fmt::format("{} (n, p, e) triples agree exactly", checked);
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  std::size_t rounding = 0;
  const std::vector<std::uint32_t> primes{2, 3, 5, 7, 11};
  for (int i = 0; i < 200; ++i) {
    const auto p = primes[rng() % primes.size()];
    const unsigned e = 1 + static_cast<unsigned>(rng() % 4);
    std::uint64_t q = 1;
    for (unsigned k = 0; k < e; ++k) q *= p;
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 40);
    // every fourth sample has (q-1) t integral
    const Rational t = i % 4 == 0 ? frac(static_cast<std::int64_t>(rng() % (q - 1)), static_cast<std::int64_t>(q - 1))
                                  : frac(static_cast<std::int64_t>(rng() % den), den);
    frobenius::PairDivisorSpec spec;
    spec.components.push_back({poly::parse_polynomial("x0", 1, p), t});
    const auto r = frobenius::rounding_gap_check(spec, q);
    for (const auto& entry : r.entries) {
      o.require(entry.floor_exponent <= entry.ceil_exponent, "floor(qt) > ceil((q-1)t)");
      if (entry.integral) o.require(entry.floor_exponent == entry.ceil_exponent, "integral case not an equality");
    }
    o.require(r.ok, "rounding report not ok");
    ++rounding;
  }

  struct CTrickCase {
    frobenius::RingPresentation ring;
    std::string c;
    unsigned e_max;
  };
  const std::vector<CTrickCase> ctrick{
      {frobenius::RingPresentation::regular(2, 3), "x0", 4},
      {frobenius::RingPresentation::regular(2, 5), "x0*x1", 3},
      {a_type(2, 3), "x", 3},
      {a_type(3, 5), "z", 2},
  };
  for (const auto& c : ctrick) {
    const auto& names = c.ring.variable_names();
    const auto gaps =
        frobenius::ctrick_gap_sequence(c.ring, poly::parse_polynomial(c.c, names, c.ring.characteristic()), c.e_max);
    for (std::size_t i = 1; i < gaps.size(); ++i) o.require(gaps[i] <= gaps[i - 1], "CTrick gaps increase");
    std::uint64_t q = 1;
    for (unsigned k = 0; k < c.e_max; ++k) q *= c.ring.characteristic();
    o.require(gaps.back() < frac(2, static_cast<std::int64_t>(q)), "final CTrick gap not below 2/q");
  }

  std::size_t towers = 0;
  std::vector<CoverDescriptor> all_covers;
  std::vector<QuotientCase> with_reflections = quotient_matrix();
  for (std::uint32_t p : {3u, 5u, 7u})
    for (std::int64_t n = 2; n <= 8; ++n)
      if (n % p != 0) with_reflections.push_back({n, {1, 0}, p});
  for (const auto& c : with_reflections) {
    for (std::int64_t m = 1; m < c.n; ++m) {
      if (c.n % m != 0) continue;
      const auto bottom = quotient_cover(c.n, c.w, c.p, m);
      all_covers.push_back(bottom);
      for (std::int64_t k = 1; k < m; ++k) {
        if (m % k != 0) continue;
        const auto top = quotient_cover(m, c.w, c.p, k);
        const auto whole = compose(bottom, top);
        o.require(ramification_divisor(whole) == ramification_divisor(top) + pullback(top, ramification_divisor(bottom)),
                  fmt::format("tower 1/{}({},{}) -> 1/{} -> 1/{} not additive", c.n, c.w[0], c.w[1], m, k));
        ++towers;
      }
    }
  }
  for (std::int64_t n : {2, 3}) {
    for (std::uint32_t p : {5u, 7u}) all_covers.push_back(root_cover(2, 0, n, p));
  }

  std::size_t traces = 0;
  for (const auto& cover : all_covers) {
    o.require(verify_note_trace(cover).ok, "Tr(n) not inside m for " + cover.label);
    if (cover.trace.surjective())
      o.require(count_trace_summands(cover) == cover.residue_degree && cover.residue_degree == 1,
                "Tr-summand count differs from 1 for " + cover.label);
    ++traces;
  }
  if (o.pass)
    o.detail = fmt::format("{} rounding samples, {} CTrick sequences, {} towers, {} trace checks", rounding,
                           ctrick.size(), towers, traces);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"quadric value", quadric_value},
      {"transformation rule", transformation_rule},
      {"pairs rule", pairs_rule},
      {"order bound tightness", bound_tightness},
      {"doubling", doubling},
      {"purity thresholds", purity},
      {"cross-backend splitting numbers", cross_backend},
      {"property suites", property_suites},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("{} [{}] {} ({:.2f}s): {}\n", o.pass ? "PASS" : "FAIL", index++, name, secs, o.detail);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
