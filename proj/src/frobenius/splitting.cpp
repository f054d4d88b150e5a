#include "fsig/frobenius/splitting.hpp"

#include "fsig/poly/parser.hpp"

#include <algorithm>
#include <limits>

namespace fsig::frobenius {

using poly::Monomial;
using poly::MonomialOrder;

RingPresentation::RingPresentation(Kind kind, std::size_t nvars, std::uint32_t p, std::optional<Polynomial> f,
                                   std::vector<std::string> names)
    : kind_(kind), nvars_(nvars), p_(p), f_(std::move(f)), names_(std::move(names)) {
  if (names_.empty()) names_ = poly::default_variable_names(nvars_);
  if (names_.size() != nvars_) throw InvalidInput("expected " + std::to_string(nvars_) + " variable names");
}

RingPresentation RingPresentation::regular(std::size_t nvars, std::uint32_t p, std::vector<std::string> names) {
  if (nvars == 0) throw InvalidInput("a regular ring needs at least one variable");
  poly::PrimeField check(p);
  return RingPresentation(Kind::regular, nvars, p, std::nullopt, std::move(names));
}

RingPresentation RingPresentation::hypersurface(const Polynomial& f, std::vector<std::string> names) {
  if (f.nvars() < 2) throw InvalidInput("a hypersurface needs at least two variables");
  if (f.is_zero()) throw InvalidInput("hypersurface equation is zero");
  if (f.coefficient(Monomial(f.nvars())) != 0) throw InvalidInput("hypersurface equation must vanish at the origin");
  return RingPresentation(Kind::hypersurface, f.nvars(), f.characteristic(), f.with_order(MonomialOrder::grevlex()),
                          std::move(names));
}

const Polynomial& RingPresentation::equation() const {
  if (!f_) throw UsageError("regular ring has no equation");
  return *f_;
}

std::string to_string(Convention c) { return c == Convention::floor_pe ? "floor_pe" : "ceil_pe_minus_1"; }

void PairDivisorSpec::validate(const RingPresentation& ring) const {
  for (std::size_t j = 0; j < components.size(); ++j) {
    const auto& [g, t] = components[j];
    const std::string where = "pair component " + std::to_string(j);
    if (g.nvars() != ring.nvars() || g.characteristic() != ring.characteristic()) {
      throw InvalidInput(where + ": polynomial lives in a different ring");
    }
    if (g.is_zero()) throw InvalidInput(where + ": g is zero");
    if (g.coefficient(Monomial(g.nvars())) != 0) throw InvalidInput(where + ": g is a unit");
    if (t < 0 || t >= 1) throw InvalidInput(where + ": coefficient must lie in [0,1)");
  }
}

namespace {

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) throw ExponentOverflow("exponent out of range");
  return static_cast<std::uint64_t>(v);
}

Rational power_of(std::uint64_t q, std::size_t d) {
  BigInt r = 1;
  for (std::size_t i = 0; i < d; ++i) r *= q;
  return Rational(r);
}

bool vanishes_in_ring(const RingPresentation& ring, const Polynomial& c) {
  if (c.is_zero()) return true;
  if (ring.kind() == RingPresentation::Kind::regular) return false;
  const auto gb = poly::buchberger(Ideal(ring.nvars(), ring.characteristic(), {ring.equation()}));
  return poly::contains(gb, c);
}

void require_ambient(const RingPresentation& ring, const Polynomial& c, const char* what) {
  if (c.nvars() != ring.nvars() || c.characteristic() != ring.characteristic()) {
    throw InvalidInput(std::string(what) + " lives in a different ring");
  }
}

bool outside_bracket_power(const Polynomial& h, std::uint64_t q) {
  for (const auto& t : h.terms()) {
    const auto e = t.monomial.exponents();
    if (std::all_of(e.begin(), e.end(), [q](Monomial::Exponent x) { return x < q; })) return true;
  }
  return false;
}

Ideal bracket_maximal(const RingPresentation& ring, std::uint64_t q) {
  return poly::frobenius_power(Ideal::maximal(ring.nvars(), ring.characteristic()), q);
}

}  // namespace

std::vector<std::uint64_t> PairDivisorSpec::exponents(std::uint64_t q) const {
  std::vector<std::uint64_t> out;
  for (const auto& c : components) {
    const Rational scaled = convention == Convention::floor_pe ? Rational(BigInt(q)) * c.t
                                                               : Rational(BigInt(q - 1)) * c.t;
    out.push_back(to_u64(convention == Convention::floor_pe ? floor_of(scaled) : ceil_of(scaled)));
  }
  return out;
}

std::uint64_t checked_power(std::uint32_t p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > std::numeric_limits<Monomial::Exponent>::max() / p) {
      throw ExponentOverflow("q = " + std::to_string(p) + "^" + std::to_string(e) + " exceeds the exponent range");
    }
    q *= p;
  }
  return q;
}

Polynomial splitting_multiplier(const RingPresentation& ring, const PairDivisorSpec& delta, unsigned e) {
  if (e == 0) throw InvalidInput("e must be positive");
  delta.validate(ring);
  const std::uint64_t q = checked_power(ring.characteristic(), e);
  Polynomial m = Polynomial::constant(ring.nvars(), ring.characteristic(), 1);
  if (ring.kind() == RingPresentation::Kind::hypersurface) m = ring.equation().pow(q - 1);
  const auto r = delta.exponents(q);
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] > 0) m = m * delta.components[j].g.pow(r[j]);
  }
  return m;
}

Ideal splitting_ideal(const RingPresentation& ring, const PairDivisorSpec& delta, unsigned e,
                      const Deadline& deadline) {
  const Polynomial m = splitting_multiplier(ring, delta, e);
  const std::uint64_t q = checked_power(ring.characteristic(), e);
  return poly::colon_ideal_by_linear_algebra(bracket_maximal(ring, q), m, deadline);
}

std::uint64_t splitting_number(const RingPresentation& ring, const PairDivisorSpec& delta, unsigned e,
                               const Deadline& deadline) {
  const Polynomial m = splitting_multiplier(ring, delta, e);
  const std::uint64_t q = checked_power(ring.characteristic(), e);
  return poly::multiplication_rank(bracket_maximal(ring, q), m, deadline);
}

SplittingSequence summarize_sequence(std::vector<SplittingRecord> records) {
  if (records.empty()) throw InvalidInput("empty splitting sequence");
  SplittingSequence seq;
  seq.records = std::move(records);
  const auto& recs = seq.records;
  auto extrapolate = [&recs](std::size_t i) -> Rational {
    const Rational qa(BigInt(recs[i - 1].q)), qb(BigInt(recs[i].q));
    return (qb * recs[i].normalized - qa * recs[i - 1].normalized) / (qb - qa);
  };
  seq.last_value = recs.back().normalized;
  seq.estimate = seq.last_value;
  const std::size_t n = recs.size();
  if (n >= 2) seq.extrapolated = extrapolate(n - 1);
  if (n >= 3) {
    const Rational step = abs(recs[n - 1].normalized - recs[n - 2].normalized);
    const Rational drift = abs(extrapolate(n - 1) - extrapolate(n - 2));
    seq.consistent_with_1_over_q = drift <= step;
    seq.diagnostic = seq.consistent_with_1_over_q
                         ? "last three values fit s + c/q; estimate is the extrapolation"
                         : "values do not fit s + c/q; estimate is the last value";
  } else if (n == 2) {
    seq.diagnostic = "two values only; estimate is the last value";
  } else {
    seq.diagnostic = "single value; estimate is the last value";
  }
  if (seq.consistent_with_1_over_q) seq.estimate = *seq.extrapolated;
  return seq;
}

SplittingSequence fsig_sequence(const RingPresentation& ring, const PairDivisorSpec& delta, unsigned e_max,
                                bool keep_ideals, const Deadline& deadline) {
  if (e_max == 0) throw InvalidInput("e_max must be at least 1");
  SplittingSequence seq;
  for (unsigned e = 1; e <= e_max; ++e) {
    deadline.check("splitting sequence");
    SplittingRecord rec;
    rec.e = e;
    rec.q = checked_power(ring.characteristic(), e);
    rec.a_e = splitting_number(ring, delta, e, deadline);
    rec.normalized = Rational(BigInt(rec.a_e)) / power_of(rec.q, ring.dimension());
    if (keep_ideals) rec.ideal = splitting_ideal(ring, delta, e, deadline);
    seq.records.push_back(std::move(rec));
  }

  return summarize_sequence(std::move(seq.records));
}

RoundingReport rounding_gap_check(const PairDivisorSpec& delta, std::uint64_t q) {
  if (q < 2) throw InvalidInput("q must be at least 2");
  RoundingReport report{q, {}, true};
  for (const auto& c : delta.components) {
    if (c.t < 0 || c.t >= 1) throw InvalidInput("pair coefficient must lie in [0,1)");
    const Rational lo = Rational(BigInt(q)) * c.t;
    const Rational hi = Rational(BigInt(q - 1)) * c.t;
    RoundingEntry entry{c.t, to_u64(floor_of(lo)), to_u64(ceil_of(hi)), is_integer(hi), false};
    entry.ok = entry.floor_exponent <= entry.ceil_exponent &&
               (!entry.integral || entry.floor_exponent == entry.ceil_exponent);
    report.ok = report.ok && entry.ok;
    report.entries.push_back(entry);
  }
  return report;
}

std::vector<Rational> ctrick_gap_sequence(const RingPresentation& ring, const Polynomial& c, unsigned e_max,
                                          const Deadline& deadline) {
  require_ambient(ring, c, "c");
  if (vanishes_in_ring(ring, c)) throw InvalidInput("c must be nonzero in the ring");
  std::vector<Rational> gaps;
  for (unsigned e = 1; e <= e_max; ++e) {
    deadline.check("gap sequence");
    const std::uint64_t q = checked_power(ring.characteristic(), e);
    const Polynomial m = splitting_multiplier(ring, {}, e);
    const Ideal bracket = bracket_maximal(ring, q);
    const std::uint64_t a = poly::multiplication_rank(bracket, m, deadline);
    const std::uint64_t b = poly::multiplication_rank(bracket, m * c, deadline);
    gaps.push_back(Rational(BigInt(a - b)) / power_of(q, ring.dimension()));
  }
  return gaps;
}

PerturbationReport perturbed_limit_check(const RingPresentation& ring, const PairDivisorSpec& delta,
                                         const PairDivisorSpec& extra, unsigned e_max, const Deadline& deadline) {
  if (e_max == 0) throw InvalidInput("e_max must be at least 1");
  for (std::size_t j = 0; j < extra.components.size(); ++j) {
    const auto& [h, t] = extra.components[j];
    require_ambient(ring, h, "extra divisor component");
    if (t < 0 || !is_integer(t)) throw InvalidInput("extra divisor coefficients must be nonnegative integers");
    if (h.is_zero()) throw InvalidInput("extra divisor component is zero");
  }
  PerturbationReport report;
  report.ok = true;
  std::uint64_t q = 1;
  for (unsigned e = 1; e <= e_max; ++e) {
    deadline.check("perturbation check");
    q = checked_power(ring.characteristic(), e);
    Polynomial m = splitting_multiplier(ring, delta, e);
    const Ideal bracket = bracket_maximal(ring, q);
    const std::uint64_t a = poly::multiplication_rank(bracket, m, deadline);
    for (const auto& [h, t] : extra.components) m = m * h.pow(to_u64(numerator(t)));
    const std::uint64_t b = poly::multiplication_rank(bracket, m, deadline);
    const Rational scale = power_of(q, ring.dimension());
    report.base.push_back(Rational(BigInt(a)) / scale);
    report.perturbed.push_back(Rational(BigInt(b)) / scale);
    report.gaps.push_back(report.base.back() - report.perturbed.back());
    if (report.gaps.back() < 0) report.ok = false;
  }
  report.threshold = Rational(2) / Rational(BigInt(q));
  report.ok = report.ok && report.gaps.back() < report.threshold;
  return report;
}

std::vector<Rational> hk_length_sequence(const RingPresentation& ring, const Ideal& ideal, unsigned e_max,
                                         const Deadline& deadline) {
  if (ideal.nvars() != ring.nvars() || ideal.characteristic() != ring.characteristic()) {
    throw InvalidInput("ideal lives in a different ring");
  }
  std::vector<Rational> out;
  for (unsigned e = 1; e <= e_max; ++e) {
    deadline.check("Hilbert-Kunz sequence");
    const std::uint64_t q = checked_power(ring.characteristic(), e);
    const Ideal bracket = poly::frobenius_power(ideal, q);
    std::optional<std::uint64_t> length;
    if (ring.kind() == RingPresentation::Kind::regular) {
      length = poly::quotient_length(bracket, deadline);
    } else if (bracket.is_artinian_monomial()) {
      const std::uint64_t whole = *poly::quotient_length(bracket, deadline);
      length = whole - poly::multiplication_rank(bracket, ring.equation(), deadline);
    } else {
      const Ideal sum = poly::ideal_sum(bracket, Ideal(ring.nvars(), ring.characteristic(), {ring.equation()}));
      length = poly::quotient_length(sum, deadline);
    }
    if (!length) throw InvalidInput("ideal does not have finite colength");
    out.push_back(Rational(BigInt(*length)) / power_of(q, ring.dimension()));
  }
  return out;
}

WitnessReport sfr_witness(const RingPresentation& ring, const Polynomial& c, unsigned e_max) {
  require_ambient(ring, c, "c");
  if (vanishes_in_ring(ring, c)) throw InvalidInput("c must be nonzero in the ring");
  WitnessReport report{std::nullopt, e_max, true};
  for (unsigned e = 1; e <= e_max; ++e) {
    const std::uint64_t q = checked_power(ring.characteristic(), e);
    const Polynomial h =
        ring.kind() == RingPresentation::Kind::regular ? c : c * ring.equation().pow(q - 1);
    if (outside_bracket_power(h, q)) {
      report.e = e;
      report.inconclusive = false;
      break;
    }
  }
  return report;
}

}  // namespace fsig::frobenius
