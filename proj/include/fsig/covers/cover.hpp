#pragma once

#include "fsig/toric/fsignature.hpp"
#include "fsig/toric/toric_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsig::covers {

using toric::IntMat;
using toric::IntVec;
using toric::ToricRing;
using toric::TorusQDivisor;

/// Tr = degree * (projection onto the lower lattice), on monomials.
struct TraceMap {
  std::int64_t degree = 1;
  std::uint32_t characteristic = 2;

  /// Coefficient of x^u in Tr(x^u), reduced mod p; u in upper lattice coordinates.
  std::uint32_t coefficient(const ToricRing& lower, const ToricRing& upper, const IntVec& u) const;
  bool surjective() const { return degree % characteristic != 0; }
};

/// Finite cover R ⊆ S of toric rings sharing one cone: M_R ⊆ M_S inside a common ambient lattice.
struct CoverDescriptor {
  ToricRing lower;
  ToricRing upper;
  std::int64_t degree = 1;           // [L:K] = [M_S : M_R]
  std::int64_t residue_degree = 1;   // [l:k]
  std::vector<std::int64_t> ramification_indices;
  TorusQDivisor ramification;        // on the upper ring
  bool etale_in_codim1 = true;
  bool wild = false;                 // p | degree; validation mode only
  TraceMap trace;
  std::string label;
};

/// Builds the cover from two rings over the same ambient facets.
CoverDescriptor make_cover(const ToricRing& lower, const ToricRing& upper, bool allow_wild = false,
                           std::string label = {});

/// k[x]^{mu_n} ⊆ k[x]^{mu_m} for m | n.
CoverDescriptor quotient_cover(std::int64_t n, const std::vector<std::int64_t>& weights, std::uint32_t p,
                               std::int64_t m);

/// k[x_1..x_d] ⊆ k[x_1..x_d][x_i^{1/n}]. With allow_wild, p | n is accepted for validation.
CoverDescriptor root_cover(std::size_t dim, std::size_t along, std::int64_t n, std::uint32_t p,
                           bool allow_wild = false);

/// Ram = K_S - pi^* K_R, coefficient e_F - 1.
TorusQDivisor ramification_divisor(const CoverDescriptor& cover);

/// pi^* D: coefficient e_F c_F on the upper facet F.
TorusQDivisor pullback(const CoverDescriptor& cover, const TorusQDivisor& lower_divisor);

/// Delta_Y = pi^* Delta_X - Ram; throws NonEffectiveDivisor naming the facet if negative.
TorusQDivisor pullback_pair(const CoverDescriptor& cover, const TorusQDivisor& delta_x);

/// R ⊆ S ⊆ T from R ⊆ S and S ⊆ T.
CoverDescriptor compose(const CoverDescriptor& bottom, const CoverDescriptor& top);

struct TraceEvidence {
  IntVec generator;  // ambient coordinates
  std::uint32_t coefficient;
  bool in_lower;
  bool in_maximal_ideal;
};

struct NoteTraceReport {
  std::vector<TraceEvidence> evidence;
  bool ok;
};

/// Tr(h) ∈ m_R for every Hilbert basis element h of S.
NoteTraceReport verify_note_trace(const CoverDescriptor& cover);

/// Number of Tr-summands; 0 when Tr is not surjective.
std::int64_t count_trace_summands(const CoverDescriptor& cover);

struct TransformationReport {
  std::int64_t degree;
  std::int64_t residue_degree;
  std::int64_t f;
  TorusQDivisor delta_x;
  TorusQDivisor delta_y;
  Rational s_lower;
  Rational s_upper;
  Rational lhs;  // f * s(S, Delta_Y)
  Rational rhs;  // [L:K] * s(R, Delta_X)
  bool exact = true;
  bool holds;
};

/// f * s(S, Delta_Y) = [L:K] * s(R, Delta_X), both sides from the exact backend.
/// Without a pair the cover must be étale in codimension one.
TransformationReport verify_transformation(const CoverDescriptor& cover,
                                           const std::optional<TorusQDivisor>& delta_x = std::nullopt);

struct DoublingReport {
  bool applicable;  // étale in codim 1 and not étale everywhere
  Rational s_lower;
  Rational s_upper;
  bool holds;       // s(S) >= 2 s(R), vacuous when not applicable
  bool equality;
};

DoublingReport doubling_check(const CoverDescriptor& cover);

/// All nontrivial covers of R étale in codimension one with degree prime to p,
/// realized as overlattices M_R ⊊ M' ⊆ N, N the largest such lattice.
std::vector<CoverDescriptor> etale_cover_search(const ToricRing& ring);

/// Covers whose ramification keeps pi^* Delta - Ram effective, degree and
/// ramification prime to p. Includes the étale-in-codimension-one ones.
std::vector<CoverDescriptor> pair_cover_search(const ToricRing& ring, const TorusQDivisor& delta);

/// [N : M_R] before removing the p-part; the maximal candidate degree.
std::int64_t etale_lattice_index(const ToricRing& ring);

/// The cover R ⊆ R[M_R + Z m] for a rational point m (lattice coordinates) whose
/// pairings with all facet normals are integers.
CoverDescriptor overlattice_cover(const ToricRing& ring, const std::vector<lattice::RatVec>& extra);

struct ChainStep {
  CoverDescriptor cover;
  Rational s_lower;
  Rational s_upper;
  bool etale_in_codim1;
  bool etale;
  bool doubling_ok;
};

struct ChainReport {
  std::vector<std::int64_t> orders;  // n = m_0 > m_1 > ... > m_k = 1
  std::vector<ChainStep> steps;
  std::vector<Rational> s_values;
  std::size_t stabilization_index;  // number of non-étale steps
  bool ok;
};

/// Every maximal chain of subgroups of mu_n, walked from 1/n(a) up to affine space.
std::vector<ChainReport> chain_simulation(std::int64_t n, const std::vector<std::int64_t>& weights,
                                          std::uint32_t p);

}  // namespace fsig::covers
