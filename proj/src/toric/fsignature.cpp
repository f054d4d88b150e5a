#include "fsig/toric/fsignature.hpp"

#include "fsig/error.hpp"
#include "fsig/toric/polytope.hpp"

#include <algorithm>
#include <limits>

namespace fsig::toric {

using lattice::dot;

namespace {

std::uint64_t frobenius_q(std::uint32_t p, unsigned e, std::size_t dim) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > std::numeric_limits<std::int32_t>::max() / p) {
      throw ExponentOverflow(std::to_string(p) + "^" + std::to_string(e) + " is too large");
    }
    q *= p;
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > std::numeric_limits<std::int64_t>::max() / q) {
      throw ExponentOverflow("q^d overflows for q = " + std::to_string(q));
    }
    total *= q;
  }
  return q;
}

RatVec to_rat(const IntVec& v) {
  RatVec out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

// Adjugate solver for m * A = b over the integers, where the columns of A
// are d linearly independent facet normals.
class PrincipalSolver {
 public:
  explicit PrincipalSolver(const ToricRing& ring) : normals_(ring.facet_normals()) {
    const std::size_t d = ring.dimension();
    for (std::size_t f = 0; f < normals_.size() && chosen_.size() < d; ++f) {
      IntMat rows;
      for (auto i : chosen_) rows.push_back(normals_[i]);
      rows.push_back(normals_[f]);
      if (lattice::rank(rows, d) == rows.size()) chosen_.push_back(f);
    }
    IntMat a(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a[i][j] = normals_[chosen_[j]][i];
    det_ = lattice::determinant(a).convert_to<std::int64_t>();
    const auto inv = lattice::inverse(a);
    adj_.assign(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) adj_[i][j] = Rational(inv[i][j] * det_).convert_to<std::int64_t>();
  }

  // m with <m, n_F> = b_F for every facet, if one exists.
  std::optional<IntVec> solve(const IntVec& b) const {
    const std::size_t d = chosen_.size();
    IntVec m(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < d; ++j) s = lattice::checked_add(s, lattice::checked_mul(b[chosen_[j]], adj_[j][i]));
      if (s % det_ != 0) return std::nullopt;
      m[i] = s / det_;
    }
    for (std::size_t f = 0; f < normals_.size(); ++f)
      if (dot(m, normals_[f]) != b[f]) return std::nullopt;
    return m;
  }

 private:
  const IntMat& normals_;
  std::vector<std::size_t> chosen_;
  std::int64_t det_ = 1;
  IntMat adj_;
};

IntVec class_offsets(const IntMat& normals, const IntVec& c, std::int64_t q) {
  IntVec b;
  for (const auto& n : normals) b.push_back(lattice::ceil_div(-dot(c, n), q));
  return b;
}

bool in_module(const IntMat& normals, const IntVec& b, const IntVec& m) {
  for (std::size_t f = 0; f < normals.size(); ++f)
    if (dot(m, normals[f]) < b[f]) return false;
  return true;
}

// Minimal generators of { m : <m, n_F> >= b_F } as a module over S.
std::vector<IntVec> module_generators(const ToricRing& ring, const IntVec& b, std::int64_t& bound) {
  const std::size_t d = ring.dimension();
  const auto& normals = ring.facet_normals();
  std::vector<HalfSpace> hs;
  for (std::size_t f = 0; f < normals.size(); ++f) hs.push_back({to_rat(normals[f]), Rational(b[f])});
  const auto vertices = polytope_vertices(hs, d);
  if (vertices.empty()) throw Error("class module has no vertex");
  const RatVec g = to_rat(ring.grading());
  Rational top = 0;
  bool first = true;
  for (const auto& v : vertices) {
    Rational s = 0;
    for (std::size_t i = 0; i < d; ++i) s += v[i] * g[i];
    if (first || s > top) top = s;
    first = false;
  }
  bound = floor_of(top).convert_to<std::int64_t>() + ring.hilbert_degree_bound();
  RatVec neg;
  for (const auto& x : g) neg.push_back(-x);
  hs.push_back({neg, Rational(-bound)});
  std::vector<IntVec> gens;
  for_each_lattice_point(hs, d, [&](const IntVec& m) {
    for (const auto& h : ring.hilbert_basis()) {
      IntVec diff(d);
      for (std::size_t i = 0; i < d; ++i) diff[i] = m[i] - h[i];
      if (in_module(normals, b, diff)) return;
    }
    gens.push_back(m);
  });
  std::sort(gens.begin(), gens.end());
  return gens;
}

template <typename Visit>
void for_each_class(std::size_t d, std::int64_t q, const Deadline& deadline, Visit&& visit) {
  IntVec c(d, 0);
  std::uint64_t counter = 0;
  for (;;) {
    if ((++counter & 1023u) == 0) deadline.check("toric class enumeration");
    visit(c);
    std::size_t i = 0;
    while (i < d && ++c[i] == q) c[i++] = 0;
    if (i == d) break;
  }
}

}  // namespace

void validate_pair(const ToricRing& ring, const TorusQDivisor& delta) {
  if (delta.coeffs.size() != ring.num_facets()) {
    throw InvalidInput("divisor has " + std::to_string(delta.coeffs.size()) + " coefficients but the ring has " +
                       std::to_string(ring.num_facets()) + " facets");
  }
  for (std::size_t f = 0; f < delta.coeffs.size(); ++f) {
    if (delta.coeffs[f] < 0) throw NonEffectiveDivisor("coefficient on facet " + std::to_string(f) + " is negative", f);
    if (delta.coeffs[f] >= 1) throw InvalidInput("coefficient on facet " + std::to_string(f) + " must be below 1");
  }
}

std::vector<std::int64_t> facet_shifts(const ToricRing& ring, const TorusQDivisor& delta, std::uint64_t q,
                                       Rounding mode) {
  validate_pair(ring, delta);
  const Rational scalar(mode == Rounding::floor ? q : q - 1);
  const auto rounded = divisor_round(delta, scalar, mode);
  std::vector<std::int64_t> out;
  for (const auto& c : rounded.coeffs) out.push_back(numerator(c).convert_to<std::int64_t>());
  return out;
}

std::uint64_t toric_splitting_number(const ToricRing& ring, const TorusQDivisor& delta, unsigned e, Rounding mode,
                                     const Deadline& deadline) {
  const std::size_t d = ring.dimension();
  const auto q = static_cast<std::int64_t>(frobenius_q(ring.characteristic(), e, d));
  const auto shifts = facet_shifts(ring, delta, q, mode);
  std::vector<HalfSpace> hs;
  for (std::size_t f = 0; f < ring.num_facets(); ++f) {
    const auto& n = ring.facet_normals()[f];
    hs.push_back({to_rat(n), Rational(0)});
    IntVec neg(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) neg[i] = -n[i];
    hs.push_back({to_rat(neg), Rational(-(q - 1 - shifts[f]))});
  }
  std::uint64_t count = 0, visited = 0;
  for_each_lattice_point(hs, d, [&](const IntVec&) {
    if ((++visited & 4095u) == 0) deadline.check("toric splitting number");
    ++count;
  });
  return count;
}

std::uint64_t toric_splitting_number_by_classes(const ToricRing& ring, const TorusQDivisor& delta, unsigned e,
                                                Rounding mode, const Deadline& deadline) {
  const std::size_t d = ring.dimension();
  const auto q = static_cast<std::int64_t>(frobenius_q(ring.characteristic(), e, d));
  const auto shifts = facet_shifts(ring, delta, q, mode);
  const auto& normals = ring.facet_normals();
  const PrincipalSolver solver(ring);
  std::uint64_t count = 0;
  for_each_class(d, q, deadline, [&](const IntVec& c) {
    const auto m0 = solver.solve(class_offsets(normals, c, q));
    if (!m0) return;
    for (std::size_t f = 0; f < normals.size(); ++f) {
      const std::int64_t w = dot(c, normals[f]) + q * dot(*m0, normals[f]);
      if (w > q - 1 - shifts[f]) return;
    }
    ++count;
  });
  return count;
}

FreeClassCertificate certify_class(const ToricRing& ring, const TorusQDivisor& delta, std::uint64_t q,
                                   const IntVec& residue, Rounding mode) {
  const std::size_t d = ring.dimension();
  if (residue.size() != d) throw InvalidInput("residue has the wrong dimension");
  const auto qi = static_cast<std::int64_t>(q);
  const auto shifts = facet_shifts(ring, delta, q, mode);
  const auto& normals = ring.facet_normals();
  FreeClassCertificate cert;
  for (auto x : residue) cert.residue.push_back(((x % qi) + qi) % qi);
  const IntVec b = class_offsets(normals, cert.residue, qi);
  const PrincipalSolver solver(ring);
  if (const auto m0 = solver.solve(b)) {
    IntVec w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = cert.residue[i] + qi * (*m0)[i];
    cert.generator = w;
    cert.degree_bound = dot(*m0, ring.grading()) + ring.hilbert_degree_bound();
    cert.free = true;
    for (std::size_t f = 0; f < normals.size(); ++f) {
      if (dot(w, normals[f]) > qi - 1 - shifts[f]) {
        cert.free = false;
        cert.violated_facet = f;
        break;
      }
    }
    return cert;
  }
  auto gens = module_generators(ring, b, cert.degree_bound);
  if (gens.size() < 2) {
    throw Error("cannot certify non-principal class within degree bound " + std::to_string(cert.degree_bound));
  }
  gens.resize(2);
  for (auto& m : gens)
    for (std::size_t i = 0; i < d; ++i) m[i] = cert.residue[i] + qi * m[i];
  cert.obstruction = std::move(gens);
  return cert;
}

std::vector<FreeClassCertificate> certify_classes(const ToricRing& ring, const TorusQDivisor& delta, unsigned e,
                                                  Rounding mode, const Deadline& deadline) {
  const std::size_t d = ring.dimension();
  const auto q = frobenius_q(ring.characteristic(), e, d);
  std::vector<FreeClassCertificate> out;
  for_each_class(d, static_cast<std::int64_t>(q), deadline,
                 [&](const IntVec& c) { out.push_back(certify_class(ring, delta, q, c, mode)); });
  return out;
}

Rational toric_fsig_exact(const ToricRing& ring, const TorusQDivisor& delta) {
  validate_pair(ring, delta);
  std::vector<HalfSpace> hs;
  for (std::size_t f = 0; f < ring.num_facets(); ++f) {
    const auto& n = ring.facet_normals()[f];
    hs.push_back({to_rat(n), Rational(0)});
    RatVec neg;
    for (auto x : n) neg.emplace_back(-x);
    hs.push_back({neg, delta.coeffs[f] - 1});
  }
  return polytope_volume(hs, ring.dimension());
}

Rational toric_fsig_exact(const ToricRing& ring) {
  return toric_fsig_exact(ring, TorusQDivisor::zero(ring.num_facets()));
}

}  // namespace fsig::toric
