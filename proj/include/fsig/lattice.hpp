#pragma once

// Small dense integer linear algebra for cones and lattices of rank <= ~6.

#include "fsig/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fsig::lattice {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;  // row-major, rows are vectors
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

std::int64_t dot(const IntVec& a, const IntVec& b);
std::int64_t gcd_of(const IntVec& v);
/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVec primitive(const IntVec& v);

/// Row-style Hermite normal form of the lattice spanned by `generators`:
/// echelon rows with positive pivots, entries above each pivot in
/// [0, pivot). Zero rows are dropped, so the result is a basis.
IntMat hermite_basis(const IntMat& generators, std::size_t ambient_dim);

/// Canonical representative of v modulo the lattice with the given
/// Hermite basis.
IntVec reduce_modulo(const IntMat& hermite, IntVec v);

bool in_lattice(const IntMat& hermite, const IntVec& v);

std::size_t rank(const IntMat& rows, std::size_t ambient_dim);

BigInt determinant(const IntMat& square);

/// Exact inverse of a nonsingular square integer matrix.
RatMat inverse(const IntMat& square);

/// Solves x * A = b for a row vector x (A square, nonsingular).
RatVec solve_left(const IntMat& a, const IntVec& b);

/// Integer row vector x with x * A = b, if one exists (A square, nonsingular).
std::optional<IntVec> solve_left_integral(const IntMat& a, const IntVec& b);

IntMat transpose(const IntMat& m);

/// v * M for a row vector v.
IntVec row_times(const IntVec& v, const IntMat& m);

/// Primitive integer generator of the one-dimensional space orthogonal to
/// the d-1 independent rows given (generalised cross product).
IntVec orthogonal_complement_line(const IntMat& rows, std::size_t ambient_dim);

/// Affine dimension of a finite point set.
int affine_dimension(const std::vector<RatVec>& points);

}  // namespace fsig::lattice
