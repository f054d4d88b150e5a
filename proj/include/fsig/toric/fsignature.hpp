#pragma once

#include "fsig/deadline.hpp"
#include "fsig/toric/toric_ring.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fsig::toric {

/// Outcome of the freeness test for one residue class c of M/qM.
///
/// The class contributes the module N_c = { m : <m, n_F> >= b_F } with
/// b_F = ceil(-<c, n_F>/q). It is a free summand when N_c = m0 + S and
/// the generator w = c + q*m0 satisfies <w, n_F> <= q - 1 - d_F.
struct FreeClassCertificate {
  IntVec residue;
  bool free = false;
  /// w = c + q*m0 when N_c is principal.
  std::optional<IntVec> generator;
  /// Two distinct minimal generators of N_c when it is not principal.
  std::vector<IntVec> obstruction;
  /// Facet whose Delta bound the generator violates.
  std::optional<std::size_t> violated_facet;
  /// Degree bound (grading of the ring) within which minimal generators were enumerated.
  std::int64_t degree_bound = 0;
};

/// d_F per facet: floor(q*delta_F) or ceil((q-1)*delta_F).
std::vector<std::int64_t> facet_shifts(const ToricRing& ring, const TorusQDivisor& delta, std::uint64_t q,
                                       Rounding mode = Rounding::floor);

/// Checks coefficients lie in [0,1) and match the facet count.
void validate_pair(const ToricRing& ring, const TorusQDivisor& delta);

/// a_e as a lattice-point count: #{ w in M : 0 <= <w, n_F> <= q - 1 - d_F }.
std::uint64_t toric_splitting_number(const ToricRing& ring, const TorusQDivisor& delta, unsigned e,
                                     Rounding mode = Rounding::floor, const Deadline& deadline = {});

/// a_e by testing every residue class for principality.
std::uint64_t toric_splitting_number_by_classes(const ToricRing& ring, const TorusQDivisor& delta, unsigned e,
                                                Rounding mode = Rounding::floor, const Deadline& deadline = {});

/// Certificate for the class of `residue` (lattice coordinates, reduced mod q).
FreeClassCertificate certify_class(const ToricRing& ring, const TorusQDivisor& delta, std::uint64_t q,
                                   const IntVec& residue, Rounding mode = Rounding::floor);

/// Certificates for all q^d classes.
std::vector<FreeClassCertificate> certify_classes(const ToricRing& ring, const TorusQDivisor& delta, unsigned e,
                                                  Rounding mode = Rounding::floor, const Deadline& deadline = {});

/// Volume of { u : 0 <= <u, n_F> <= 1 - delta_F }; 0 when the pair is not strongly F-regular.
Rational toric_fsig_exact(const ToricRing& ring, const TorusQDivisor& delta);
Rational toric_fsig_exact(const ToricRing& ring);

}  // namespace fsig::toric
