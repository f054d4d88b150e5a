#include "doctest.h"

#include "fsig/bounds/bounds.hpp"
#include "fsig/error.hpp"
#include "fsig/poly/parser.hpp"

using namespace fsig;
using namespace fsig::bounds;
using toric::quotient_singularity;

TEST_CASE("inverse floor") {
  CHECK(inverse_floor(Rational(1)) == 1);
  CHECK(inverse_floor(make_rational(2, 3)) == 1);
  CHECK(inverse_floor(make_rational(1, 2)) == 2);
  CHECK(inverse_floor(make_rational(2, 5)) == 2);
  CHECK_THROWS_AS(inverse_floor(Rational(0)), NotStronglyFRegular);
}

TEST_CASE("order bound is attained on 1/n(1,1)") {
  for (std::int64_t n = 2; n <= 6; ++n) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      if (n % p == 0) continue;
      CAPTURE(n);
      CAPTURE(p);
      const auto rep = pi1_order_bound(quotient_singularity(n, {1, 1}, p).ring);
      CHECK(rep.exact);
      CHECK(rep.bound == n);
      CHECK(rep.attained);
      CHECK(rep.ok);
      CHECK(rep.admissible_degrees.back() == n);
      for (auto d : rep.admissible_degrees) CHECK(d % p != 0);
    }
  }
  const auto reg = pi1_order_bound(toric::ToricRing::from_rays({{1, 0}, {0, 1}}, 3));
  CHECK(reg.bound == 1);
  CHECK(reg.admissible_degrees.empty());
  CHECK(reg.attained);
}

TEST_CASE("order bound with a pair") {
  const auto plane = toric::ToricRing::from_rays({{1, 0}, {0, 1}}, 5);
  const auto rep = pi1_order_bound(plane, toric::TorusQDivisor{{make_rational(1, 2), Rational(0)}});
  CHECK(rep.s == make_rational(1, 2));
  CHECK(rep.bound == 2);
  CHECK(rep.admissible_degrees == std::vector<std::int64_t>{2});
  CHECK(rep.attained);
  const auto two_thirds = pi1_order_bound(plane, toric::TorusQDivisor{{make_rational(2, 3), make_rational(1, 2)}});
  CHECK(two_thirds.bound == 6);
  CHECK(two_thirds.ok);
  CHECK(two_thirds.attained);
}

TEST_CASE("provisional bound from a sequence") {
  const auto f = poly::parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, 3);
  const auto ring = frobenius::RingPresentation::hypersurface(f);
  const auto seq = frobenius::fsig_sequence(ring, {}, 2);
  const auto rep = pi1_order_bound(seq, 3);
  CHECK_FALSE(rep.exact);
  CHECK(rep.provisional());
  CHECK(rep.bound == 1);
  CHECK(*rep.bound_low == 1);
  CHECK(*rep.bound_high == 1);
  CHECK(purity_check(rep.s, 3, false).forced);
}

TEST_CASE("purity thresholds") {
  const auto a1 = purity_check(quotient_singularity(2, {1, 1}, 3).ring);
  CHECK_FALSE(a1.forced);
  CHECK(*a1.covers_found == 1);
  CHECK(a1.consistent);
  const auto cone = purity_check(toric::ToricRing::from_rays({{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}, {0, -1, 1}}, 5));
  CHECK(cone.forced);
  CHECK(cone.s == make_rational(2, 3));
  CHECK(*cone.covers_found == 0);
  const auto synthetic = purity_check(make_rational(2, 5), 2);
  CHECK(synthetic.forced);
  CHECK(synthetic.threshold == make_rational(1, 3));
  CHECK_FALSE(purity_check(make_rational(2, 5), 3).forced);
  CHECK(purity_check(Rational(3, 4), 3).clause == "s > 1/2");
}

TEST_CASE("index bound") {
  const auto a1 = quotient_singularity(2, {1, 1}, 3).ring;
  const auto rep = index_bound(a1, toric::TorusQDivisor{{Rational(1), Rational(0)}});
  CHECK(*rep.order == 2);
  CHECK(rep.bound == 2);
  CHECK(rep.ok);
  CHECK(rep.attained);
  const auto q3 = quotient_singularity(3, {1, 1}, 5).ring;
  const auto rep3 = index_bound(q3, toric::TorusQDivisor{{Rational(1), Rational(0)}});
  CHECK(*rep3.order == 3);
  CHECK(rep3.ok);
  const auto plane = toric::ToricRing::from_rays({{1, 0}, {0, 1}}, 3);
  CHECK(*index_bound(plane, toric::TorusQDivisor{{Rational(1), Rational(0)}}).order == 1);
  CHECK_THROWS_AS(index_bound(a1, toric::TorusQDivisor{{make_rational(1, 2), Rational(0)}}), InvalidInput);
  const auto cone = toric::ToricRing::from_rays({{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}, {0, -1, 1}}, 5);
  CHECK_THROWS_AS(index_bound(cone, toric::TorusQDivisor{{Rational(1), Rational(0), Rational(0), Rational(0)}}),
                  InvalidInput);
  const auto q3_at_3 = toric::ToricRing::from_rays({{0, 1}, {3, -1}}, 3);
  CHECK_THROWS_AS(index_bound(q3_at_3, toric::TorusQDivisor{{Rational(1), Rational(0)}}), InvalidInput);
}

TEST_CASE("Veronese bound") {
  const auto r = veronese_bound(2, 3, 5);
  CHECK(r.s == make_rational(1, 3));
  CHECK(r.bound == 3);
  CHECK(r.ok);
  CHECK(r.attained);
  CHECK(veronese_bound(2, 2, 3).s == make_rational(1, 2));
  CHECK(veronese_bound(2, 1, 3).bound == 1);
  CHECK(veronese_bound(3, 2, 5).s == make_rational(1, 2));
  CHECK(veronese_bound(3, 2, 5).ok);
  CHECK_THROWS_AS(veronese_bound(2, 3, 3), InvalidInput);
}
