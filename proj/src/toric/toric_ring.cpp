#include "fsig/toric/toric_ring.hpp"

#include "fsig/error.hpp"
#include "fsig/poly/prime_field.hpp"
#include "fsig/toric/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace fsig::toric {

using lattice::dot;

namespace {

void choose(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      visit(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

RatVec to_rat(const IntVec& v) {
  RatVec out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

}  // namespace

ToricRing ToricRing::from_rays(const IntMat& rays, std::uint32_t p) {
  if (rays.empty()) throw InvalidInput("toric ring needs at least one ray");
  const std::size_t d = rays.front().size();
  IntMat identity(d, IntVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) identity[i][i] = 1;
  return with_lattice(identity, rays, p);
}

ToricRing ToricRing::with_lattice(const IntMat& lattice_basis, const IntMat& ambient_facets, std::uint32_t p) {
  poly::PrimeField check(p);
  ToricRing r;
  r.p_ = p;
  r.dim_ = lattice_basis.size();
  if (r.dim_ == 0) throw InvalidInput("toric ring must have positive dimension");
  for (const auto& row : lattice_basis)
    if (row.size() != r.dim_) throw InvalidInput("lattice basis must be square");
  if (lattice::determinant(lattice_basis) == 0) throw InvalidInput("lattice basis is singular");
  if (ambient_facets.empty()) throw InvalidInput("toric ring needs at least one ray");
  r.basis_ = lattice_basis;
  for (const auto& v : ambient_facets) {
    if (v.size() != r.dim_) throw InvalidInput("ray has the wrong dimension");
    if (lattice::gcd_of(v) == 0) throw InvalidInput("ray is zero");
    IntVec image(r.dim_);
    for (std::size_t i = 0; i < r.dim_; ++i) image[i] = dot(lattice_basis[i], v);
    const std::int64_t g = lattice::gcd_of(image);
    r.ambient_facets_.push_back(v);
    r.scales_.push_back(g);
    r.normals_.push_back(lattice::primitive(image));
  }
  r.finish();
  return r;
}

void ToricRing::finish() {
  const std::size_t d = dim_;
  for (std::size_t i = 0; i < normals_.size(); ++i)
    for (std::size_t j = i + 1; j < normals_.size(); ++j)
      if (normals_[i] == normals_[j]) throw InvalidInput("repeated ray " + std::to_string(j));
  if (lattice::rank(normals_, d) != d) throw InvalidInput("rays do not span the space (cone not full-dimensional)");

  std::set<IntVec> rays;
  choose(normals_.size(), d - 1, [&](const std::vector<std::size_t>& idx) {
    IntMat rows;
    for (auto i : idx) rows.push_back(normals_[i]);
    if (d > 1 && lattice::rank(rows, d) != d - 1) return;
    IntVec w = lattice::orthogonal_complement_line(rows, d);
    bool pos = true, neg = true;
    for (const auto& v : normals_) {
      const auto s = dot(w, v);
      pos = pos && s >= 0;
      neg = neg && s <= 0;
    }
    if (neg && !pos)
      for (auto& x : w) x = -x;
    if (pos != neg) rays.insert(w);
  });
  extreme_rays_.assign(rays.begin(), rays.end());
  if (extreme_rays_.empty() || lattice::rank(extreme_rays_, d) != d) {
    throw InvalidInput("cone is not strongly convex");
  }
  for (std::size_t f = 0; f < normals_.size(); ++f) {
    IntMat on_facet;
    for (const auto& r : extreme_rays_)
      if (dot(r, normals_[f]) == 0) on_facet.push_back(r);
    if (lattice::rank(on_facet, d) + 1 != d) throw InvalidInput("ray " + std::to_string(f) + " is redundant");
  }

  grading_.assign(d, 0);
  for (const auto& v : normals_)
    for (std::size_t i = 0; i < d; ++i) grading_[i] += v[i];
  degree_bound_ = 0;
  for (const auto& r : extreme_rays_) degree_bound_ += dot(r, grading_);

  std::vector<HalfSpace> hs;
  for (const auto& v : normals_) hs.push_back({to_rat(v), Rational(0)});
  RatVec neg_grading;
  for (auto x : grading_) neg_grading.emplace_back(-x);
  hs.push_back({neg_grading, Rational(-degree_bound_)});
  IntMat points;
  for_each_lattice_point(hs, d, [&points](const IntVec& u) {
    if (lattice::gcd_of(u) != 0) points.push_back(u);
  });
  std::sort(points.begin(), points.end(), [this](const IntVec& a, const IntVec& b) {
    const auto da = dot(a, grading_), db = dot(b, grading_);
    return da != db ? da < db : a < b;
  });
  for (const auto& u : points) {
    bool reducible = false;
    for (const auto& h : hilbert_) {
      IntVec diff(d);
      for (std::size_t i = 0; i < d; ++i) diff[i] = u[i] - h[i];
      if (contains(diff)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) hilbert_.push_back(u);
  }
  std::sort(hilbert_.begin(), hilbert_.end());
}

IntMat ToricRing::hilbert_basis_ambient() const {
  IntMat out;
  for (const auto& h : hilbert_) out.push_back(to_ambient(h));
  std::sort(out.begin(), out.end());
  return out;
}

IntVec ToricRing::to_ambient(const IntVec& c) const { return lattice::row_times(c, basis_); }

std::optional<IntVec> ToricRing::to_lattice(const IntVec& a) const { return lattice::solve_left_integral(basis_, a); }

bool ToricRing::contains(const IntVec& c) const {
  return std::all_of(normals_.begin(), normals_.end(), [&c](const IntVec& v) { return dot(c, v) >= 0; });
}

BigInt ToricRing::lattice_index() const {
  BigInt det = lattice::determinant(basis_);
  return det < 0 ? BigInt(-det) : det;
}

bool TorusQDivisor::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

bool TorusQDivisor::is_boundary() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c >= 0 && c < 1; });
}

TorusQDivisor operator+(const TorusQDivisor& a, const TorusQDivisor& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw UsageError("divisors on different rings");
  TorusQDivisor out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

TorusQDivisor operator-(const TorusQDivisor& a, const TorusQDivisor& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw UsageError("divisors on different rings");
  TorusQDivisor out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

TorusQDivisor canonical_divisor(const ToricRing& ring) {
  return {std::vector<Rational>(ring.num_facets(), Rational(-1))};
}

TorusQDivisor divisor_round(const TorusQDivisor& delta, const Rational& scalar, Rounding mode) {
  TorusQDivisor out;
  for (const auto& c : delta.coeffs) {
    const Rational v = scalar * c;
    out.coeffs.emplace_back(mode == Rounding::floor ? floor_of(v) : ceil_of(v));
  }
  return out;
}

bool action_is_small(std::int64_t n, const std::vector<std::int64_t>& weights) {
  const auto d = static_cast<std::int64_t>(weights.size());
  for (std::int64_t j = 1; j < n; ++j) {
    std::int64_t fixed = 0;
    for (auto a : weights)
      if ((j * a) % n == 0) ++fixed;
    if (fixed > d - 2) return false;
  }
  return true;
}

QuotientSingularity quotient_singularity(std::int64_t n, const std::vector<std::int64_t>& weights, std::uint32_t p) {
  poly::PrimeField check(p);
  if (n < 1) throw InvalidInput("group order n must be positive");
  if (weights.empty()) throw InvalidInput("weights must be nonempty");
  if (n % p == 0) {
    throw InvalidInput("p = " + std::to_string(p) + " divides n = " + std::to_string(n) +
                       "; covers of degree divisible by p are excluded (degrees must be prime to p)");
  }
  std::vector<std::int64_t> w;
  std::int64_t g = n;
  for (auto a : weights) {
    w.push_back(((a % n) + n) % n);
    g = std::gcd(g, w.back());
  }
  if (g != 1) throw InvalidInput("gcd(n, weights) must be 1");
  const std::size_t d = w.size();
  double box = 1;
  for (std::size_t i = 0; i < d; ++i) box *= static_cast<double>(n);
  if (box > 5e6) throw InvalidInput("quotient singularity too large to construct");

  IntMat gens;
  for (std::size_t i = 0; i < d; ++i) {
    IntVec e(d, 0);
    e[i] = n;
    gens.push_back(e);
  }
  IntVec u(d, 0);
  for (;;) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < d; ++i) s = (s + w[i] * u[i]) % n;
    if (s == 0 && lattice::gcd_of(u) != 0) gens.push_back(u);
    std::size_t i = 0;
    while (i < d && ++u[i] == n) u[i++] = 0;
    if (i == d) break;
  }
  IntMat identity(d, IntVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) identity[i][i] = 1;
  return {ToricRing::with_lattice(lattice::hermite_basis(gens, d), identity, p), n, w, action_is_small(n, w)};
}

QuotientSingularity veronese(std::size_t d, std::int64_t m, std::uint32_t p) {
  return quotient_singularity(m, std::vector<std::int64_t>(d, 1), p);
}

}  // namespace fsig::toric
