#pragma once

#include "fsig/lattice.hpp"
#include "fsig/rational.hpp"

#include <functional>
#include <vector>

namespace fsig::toric {

using lattice::IntMat;
using lattice::IntVec;
using lattice::RatVec;

/// { x : normal . x >= offset }.
struct HalfSpace {
  RatVec normal;
  Rational offset;
};

/// Vertices of a bounded polyhedron given by half-spaces, each listed once.
/// Unbounded input is not detected; callers pass bounded systems.
std::vector<RatVec> polytope_vertices(const std::vector<HalfSpace>& halfspaces, std::size_t dim);

/// Calls visit for every integer point of the bounded polyhedron.
void for_each_lattice_point(const std::vector<HalfSpace>& halfspaces, std::size_t dim,
                            const std::function<void(const IntVec&)>& visit);

/// Euclidean volume (unit cube has volume 1) by coning every face from an
/// interior point. Lower-dimensional polytopes have volume 0.
Rational polytope_volume(const std::vector<HalfSpace>& halfspaces, std::size_t dim);

}  // namespace fsig::toric
