#include "doctest.h"
#include "oracles.hpp"

#include "fsig/frobenius/splitting.hpp"
#include "fsig/poly/parser.hpp"

#include <random>

using namespace fsig;
using namespace fsig::frobenius;
using fsig::poly::parse_polynomial;

namespace {

const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> xyz{"x", "y", "z"};

RingPresentation a1(std::uint32_t p) {
  return RingPresentation::hypersurface(parse_polynomial("x*y - z^2", xyz, p), xyz);
}

RingPresentation quadric() {
  return RingPresentation::hypersurface(parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, 3));
}

PairDivisorSpec half_x(std::uint32_t p, Convention c = Convention::floor_pe) {
  return PairDivisorSpec{{{parse_polynomial("x", xy, p), make_rational(1, 2)}}, c};
}

oracle::Sparse sparse(const poly::Polynomial& f) {
  oracle::Sparse out;
  for (const auto& t : f.terms()) out[oracle::Exps(t.monomial.exponents().begin(), t.monomial.exponents().end())] = t.coeff;
  return out;
}

std::vector<oracle::Exps> bracket_gens(int n, int q) {
  std::vector<oracle::Exps> gens;
  for (int i = 0; i < n; ++i) {
    oracle::Exps e(n, 0);
    e[i] = q;
    gens.push_back(e);
  }
  return gens;
}

}  // namespace

TEST_CASE("splitting ideal examples") {
  const auto reg = RingPresentation::regular(2, 5, xy);
  auto i1 = splitting_ideal(reg, {}, 1);
  CHECK(poly::to_string(i1.groebner()[0], xy) == "y^5");
  CHECK(poly::to_string(i1.groebner()[1], xy) == "x^5");

  auto i2 = splitting_ideal(reg, half_x(5), 1);
  REQUIRE(i2.groebner().size() == 2);
  CHECK(poly::to_string(i2.groebner()[0], xy) == "x^3");
  CHECK(poly::to_string(i2.groebner()[1], xy) == "y^5");
  CHECK(splitting_number(reg, half_x(5), 1) == 15);

  // hypersurface xy - z^2 over F_3 at e = 1 against the full multiplication matrix
  const auto ring = a1(3);
  const auto ideal = splitting_ideal(ring, {}, 1);
  const auto f2 = ring.equation().pow(2);
  const auto bracket = poly::buchberger(poly::frobenius_power(poly::Ideal::maximal(3, 3), 3));
  for (const auto& g : ideal.groebner()) CHECK(poly::contains(bracket, g * f2));
  const auto expected = oracle::multiplication_rank(bracket_gens(3, 3), sparse(f2), 3, 3, 3);
  CHECK(poly::quotient_length(ideal) == expected);
  CHECK(splitting_number(ring, {}, 1) == expected);
}

TEST_CASE("splitting numbers of regular rings are q^d") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      const auto reg = RingPresentation::regular(n, p);
      for (unsigned e = 1; e <= 3; ++e) {
        std::uint64_t qd = 1;
        for (std::size_t i = 0; i < n; ++i) qd *= checked_power(p, e);
        CHECK(splitting_number(reg, {}, e) == qd);
      }
    }
  }
}

TEST_CASE("pair sequence on the plane") {
  const auto reg = RingPresentation::regular(2, 5, xy);
  const auto seq = fsig_sequence(reg, half_x(5), 3);
  for (const auto& rec : seq.records) {
    CHECK(rec.a_e == (rec.q - rec.q / 2) * rec.q);
  }
  CHECK(seq.records[0].normalized == make_rational(3, 5));
  CHECK(seq.records[1].normalized == make_rational(13, 25));
  REQUIRE(seq.extrapolated);
  CHECK(*seq.extrapolated == make_rational(1, 2));
  CHECK(seq.consistent_with_1_over_q);
  CHECK(seq.estimate == make_rational(1, 2));

  const auto flat = fsig_sequence(RingPresentation::regular(3, 3), {}, 3);
  for (const auto& rec : flat.records) CHECK(rec.normalized == 1);
  CHECK(flat.estimate == 1);
}

TEST_CASE("quadric splitting numbers") {
  const auto ring = quadric();
  const auto f2 = ring.equation().pow(2);
  CHECK(splitting_number(ring, {}, 1) == oracle::multiplication_rank(bracket_gens(4, 3), sparse(f2), 4, 3, 3));
  // frozen after an independent brute-force computation: a_e = 2q^3/3 + q/3
  CHECK(splitting_number(ring, {}, 1) == 19);
  CHECK(splitting_number(ring, {}, 2) == 489);
}

TEST_CASE("sequence records satisfy the basic bounds") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> names = xyz;
  const char* eqs[] = {"x*y - z^2", "x^2 + y^3 + z^5", "x*y*z", "x^2*y + z^3", "x^3"};
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const char* eq : eqs) {
      const auto ring = RingPresentation::hypersurface(parse_polynomial(eq, names, p), names);
      std::uniform_int_distribution<int> num(0, 5);
      PairDivisorSpec delta{{{parse_polynomial("x + z", names, p), make_rational(num(rng), 7)}}};
      for (unsigned e = 1; e <= 2; ++e) {
        const std::uint64_t q = checked_power(p, e);
        const auto ideal = splitting_ideal(ring, delta, e);
        const auto bracket = poly::frobenius_power(poly::Ideal::maximal(3, p), q);
        for (const auto& g : bracket.generators()) CHECK(poly::contains(ideal, g));
        const auto a = splitting_number(ring, delta, e);
        CHECK(a <= q * q);
        CHECK(poly::quotient_length(ideal) == a);
      }
    }
  }
}

TEST_CASE("rounding conventions") {
  PairDivisorSpec half{{{parse_polynomial("x", xy, 5), make_rational(1, 2)}}};
  auto r = rounding_gap_check(half, 5);
  CHECK(r.ok);
  CHECK(r.entries[0].floor_exponent == 2);
  CHECK(r.entries[0].ceil_exponent == 2);
  CHECK(r.entries[0].integral);
  PairDivisorSpec two_thirds{{{parse_polynomial("x", xy, 3), make_rational(2, 3)}}};
  r = rounding_gap_check(two_thirds, 3);
  CHECK(r.entries[0].floor_exponent == 2);
  CHECK(r.entries[0].ceil_exponent == 2);

  std::mt19937_64 rng(7);
  int sampled = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int k = 0; k < 50; ++k) {
      std::uniform_int_distribution<int> den(2, 40);
      const int d = den(rng);
      std::uniform_int_distribution<int> num(0, d - 1);
      const Rational t = make_rational(num(rng), d);
      const std::uint64_t q = checked_power(p, 1 + k % 3);
      PairDivisorSpec s{{{parse_polynomial("x", xy, p), t}}};
      const auto rep = rounding_gap_check(s, q);
      CHECK(rep.ok);
      CHECK(rep.entries[0].floor_exponent <= rep.entries[0].ceil_exponent);
      ++sampled;
    }
  }
  CHECK(sampled == 200);
}

TEST_CASE("conventions agree when (q-1)t is integral") {
  const auto reg = RingPresentation::regular(2, 5, xy);
  for (unsigned e = 1; e <= 3; ++e) {
    // (q-1)/2 is integral for odd q
    const auto a = splitting_ideal(reg, half_x(5, Convention::floor_pe), e);
    const auto b = splitting_ideal(reg, half_x(5, Convention::ceil_pe_minus_1), e);
    CHECK(a.groebner() == b.groebner());
  }
  const auto ring = a1(3);
  std::mt19937_64 rng(99);
  for (int k = 0; k < 20; ++k) {
    std::uniform_int_distribution<int> num(0, 8);
    PairDivisorSpec f{{{parse_polynomial("x + y", xyz, 3), make_rational(num(rng), 9)}}, Convention::floor_pe};
    PairDivisorSpec c = f;
    c.convention = Convention::ceil_pe_minus_1;
    for (unsigned e = 1; e <= 2; ++e) CHECK(splitting_number(ring, f, e) >= splitting_number(ring, c, e));
  }
}

TEST_CASE("gap sequences") {
  const auto reg = RingPresentation::regular(2, 3, xy);
  const auto unit = ctrick_gap_sequence(reg, parse_polynomial("1", xy, 3), 3);
  for (const auto& g : unit) CHECK(g == 0);
  const auto gx = ctrick_gap_sequence(reg, parse_polynomial("x", xy, 3), 3);
  CHECK(gx == std::vector<Rational>{make_rational(1, 3), make_rational(1, 9), make_rational(1, 27)});

  const auto gaps = ctrick_gap_sequence(a1(3), parse_polynomial("x", xyz, 3), 3);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    CHECK(gaps[i] >= 0);
    if (i > 0) CHECK(gaps[i] < gaps[i - 1]);
  }
  CHECK_THROWS_AS(ctrick_gap_sequence(a1(3), parse_polynomial("x*y - z^2", xyz, 3), 1), InvalidInput);
}

TEST_CASE("perturbation by a fixed divisor") {
  const auto reg = RingPresentation::regular(2, 3, xy);
  const auto none = perturbed_limit_check(reg, {}, {}, 3);
  CHECK(none.ok);
  for (const auto& g : none.gaps) CHECK(g == 0);
  PairDivisorSpec dx{{{parse_polynomial("x", xy, 3), Rational(1)}}};
  const auto r = perturbed_limit_check(reg, {}, dx, 3);
  CHECK(r.ok);
  CHECK(r.gaps == std::vector<Rational>{make_rational(1, 3), make_rational(1, 9), make_rational(1, 27)});

  PairDivisorSpec dq{{{parse_polynomial("x0", 4, 3), Rational(1)}}};
  const auto rq = perturbed_limit_check(quadric(), {}, dq, 3);
  CHECK(rq.ok);
  CHECK(rq.gaps[2] < make_rational(2, 27));
  CHECK(rq.gaps[2] < rq.gaps[1]);
  CHECK(rq.gaps[1] < rq.gaps[0]);
  PairDivisorSpec bad{{{parse_polynomial("x", xy, 3), make_rational(1, 2)}}};
  CHECK_THROWS_AS(perturbed_limit_check(reg, {}, bad, 1), InvalidInput);
}

TEST_CASE("Hilbert-Kunz lengths") {
  const auto reg = RingPresentation::regular(2, 3, xy);
  for (const auto& v : hk_length_sequence(reg, poly::Ideal::maximal(2, 3), 3)) CHECK(v == 1);
  const poly::Ideal ideal(2, 3, {parse_polynomial("x^2", xy, 3), parse_polynomial("y", xy, 3)});
  for (const auto& v : hk_length_sequence(reg, ideal, 3)) CHECK(v == 2);

  const auto ring = a1(3);
  const auto seq = hk_length_sequence(ring, poly::Ideal::maximal(3, 3), 3);
  const auto f = ring.equation();
  const std::uint64_t rank = oracle::multiplication_rank(bracket_gens(3, 3), sparse(f), 3, 3, 3);
  CHECK(seq[0] == Rational(BigInt(27 - rank)) / 9);
  const Rational target = make_rational(3, 2);
  CHECK(abs(seq[2] - target) <= abs(seq[0] - target));
  CHECK(abs(seq[2] - target) <= make_rational(1, 27));
  // non-monomial bracket goes through a Groebner basis
  const poly::Ideal mixed(3, 3, {parse_polynomial("x + y", xyz, 3), parse_polynomial("y^2", xyz, 3),
                                 parse_polynomial("z", xyz, 3)});
  CHECK(hk_length_sequence(RingPresentation::regular(3, 3, xyz), mixed, 2)[1] == Rational(2));
  CHECK_THROWS_AS(hk_length_sequence(reg, poly::Ideal(2, 3, {parse_polynomial("x", xy, 3)}), 1), InvalidInput);
}

TEST_CASE("strong F-regularity witnesses") {
  const auto reg = RingPresentation::regular(2, 3, xy);
  CHECK(sfr_witness(reg, parse_polynomial("1", xy, 3)).e == 1u);
  CHECK(sfr_witness(reg, parse_polynomial("x^2*y^2", xy, 3)).e == 1u);
  CHECK(sfr_witness(reg, parse_polynomial("x^4", xy, 3)).e == 2u);
  const auto w = sfr_witness(a1(3), parse_polynomial("x", xyz, 3), 3);
  REQUIRE(w.e);
  CHECK(*w.e <= 2u);
  // not F-pure: no witness, reported as inconclusive only
  const auto cusp = RingPresentation::hypersurface(parse_polynomial("x^2 + y^3", xy, 3), xy);
  const auto none = sfr_witness(cusp, parse_polynomial("1", xy, 3), 2);
  CHECK(!none.e);
  CHECK(none.inconclusive);
  CHECK_THROWS_AS(sfr_witness(reg, parse_polynomial("0", xy, 3)), InvalidInput);
}

TEST_CASE("F-splitness consistency") {
  const char* eqs[] = {"x*y - z^2", "x^2 + y^3 + z^5", "x*y*z", "x^3 + y^3 + z^3", "x^2*y + y^2*z"};
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const char* eq : eqs) {
      const auto ring = RingPresentation::hypersurface(parse_polynomial(eq, xyz, p), xyz);
      const bool witness = sfr_witness(ring, parse_polynomial("1", xyz, p), 1).e == 1u;
      CHECK(witness == (splitting_number(ring, {}, 1) >= 1));
    }
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(RingPresentation::hypersurface(parse_polynomial("x*y + 1", xy, 3), xy), InvalidInput);
  CHECK_THROWS_AS(RingPresentation::regular(0, 3), InvalidInput);
  const auto reg = RingPresentation::regular(2, 3, xy);
  PairDivisorSpec big{{{parse_polynomial("x", xy, 3), Rational(1)}}};
  CHECK_THROWS_AS(splitting_number(reg, big, 1), InvalidInput);
  PairDivisorSpec unit{{{parse_polynomial("1 + x", xy, 3), make_rational(1, 2)}}};
  CHECK_THROWS_AS(splitting_number(reg, unit, 1), InvalidInput);
  CHECK_THROWS_AS(checked_power(3, 40), ExponentOverflow);
  CHECK_THROWS_AS(splitting_number(reg, {}, 0), InvalidInput);
}
