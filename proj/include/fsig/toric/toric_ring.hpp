#pragma once

#include "fsig/lattice.hpp"
#include "fsig/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsig::toric {

using lattice::IntMat;
using lattice::IntVec;

/// Normal affine semigroup ring k[S], S = sigma^dual ∩ M.
///
/// M is a full-rank sublattice of an ambient Z^d with basis rows B; points
/// of M are handled in lattice coordinates c (ambient point c*B). Facets of
/// sigma^dual are ambient covectors v_F; in lattice coordinates the
/// primitive normal is B v_F / g_F, where g_F is the facet scale. The
/// ambient description lets rings sharing an ambient space form covers.
class ToricRing {
 public:
  /// M = Z^d and the given primitive facet normals (the rays of sigma).
  static ToricRing from_rays(const IntMat& rays, std::uint32_t p);
  /// General sublattice form; `ambient_facets` need not be primitive.
  static ToricRing with_lattice(const IntMat& lattice_basis, const IntMat& ambient_facets, std::uint32_t p);

  std::size_t dimension() const { return dim_; }
  std::uint32_t characteristic() const { return p_; }
  std::size_t num_facets() const { return normals_.size(); }

  const IntMat& lattice_basis() const { return basis_; }
  const IntMat& ambient_facets() const { return ambient_facets_; }
  /// Primitive facet normals in lattice coordinates.
  const IntMat& facet_normals() const { return normals_; }
  /// g_F with <c*B, v_F> = g_F <c, normal_F>.
  const std::vector<std::int64_t>& facet_scales() const { return scales_; }
  /// Primitive generators of the extreme rays of sigma^dual (lattice coordinates).
  const IntMat& extreme_rays() const { return extreme_rays_; }
  /// Minimal generators of S in lattice coordinates, sorted.
  const IntMat& hilbert_basis() const { return hilbert_; }
  /// Same, in ambient coordinates.
  IntMat hilbert_basis_ambient() const;
  /// Degree bound used for the Hilbert basis search (grading = sum of normals).
  std::int64_t hilbert_degree_bound() const { return degree_bound_; }
  /// Sum of the facet normals; positive on S \ {0}.
  const IntVec& grading() const { return grading_; }

  IntVec to_ambient(const IntVec& lattice_point) const;
  /// Lattice coordinates of an ambient point, if it lies in M.
  std::optional<IntVec> to_lattice(const IntVec& ambient_point) const;
  bool contains(const IntVec& lattice_point) const;
  /// |det B| = [Z^d : M].
  BigInt lattice_index() const;
  /// Regular iff S is generated by d elements.
  bool is_regular() const { return hilbert_.size() == dim_; }

 private:
  ToricRing() = default;
  void finish();

  std::size_t dim_ = 0;
  std::uint32_t p_ = 0;
  IntMat basis_;
  IntMat ambient_facets_;
  IntMat normals_;
  std::vector<std::int64_t> scales_;
  IntMat extreme_rays_;
  IntMat hilbert_;
  IntVec grading_;
  std::int64_t degree_bound_ = 0;
};

/// Rational coefficients on the facet divisors D_F.
struct TorusQDivisor {
  std::vector<Rational> coeffs;

  static TorusQDivisor zero(std::size_t facets) { return {std::vector<Rational>(facets, Rational(0))}; }
  bool is_zero() const;
  /// Coefficients in [0,1).
  bool is_boundary() const;
  friend bool operator==(const TorusQDivisor&, const TorusQDivisor&) = default;
};

TorusQDivisor operator+(const TorusQDivisor& a, const TorusQDivisor& b);
TorusQDivisor operator-(const TorusQDivisor& a, const TorusQDivisor& b);

/// K_R = -sum D_F.
TorusQDivisor canonical_divisor(const ToricRing& ring);

enum class Rounding { floor, ceil };

/// Componentwise floor or ceiling of scalar * coefficient.
TorusQDivisor divisor_round(const TorusQDivisor& delta, const Rational& scalar, Rounding mode);

struct QuotientSingularity {
  ToricRing ring;
  std::int64_t n;
  std::vector<std::int64_t> weights;
  /// No pseudo-reflections: k[x]^mu_n ⊆ k[x] is étale in codimension 1.
  bool small;
};

/// k[x_1..x_d]^{mu_n} with mu_n acting by the given weights.
QuotientSingularity quotient_singularity(std::int64_t n, const std::vector<std::int64_t>& weights, std::uint32_t p);

/// 1 <= j < n has at most d-2 weights with j a_i = 0 mod n.
bool action_is_small(std::int64_t n, const std::vector<std::int64_t>& weights);

/// m-th Veronese subring of F_p[x_1..x_d], i.e. 1/m(1,...,1).
QuotientSingularity veronese(std::size_t d, std::int64_t m, std::uint32_t p);

}  // namespace fsig::toric
