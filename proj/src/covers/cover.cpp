#include "fsig/covers/cover.hpp"

#include "fsig/error.hpp"
#include "fsig/poly/prime_field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace fsig::covers {

using lattice::RatVec;

namespace {

IntMat identity(std::size_t d) {
  IntMat m(d, IntVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

bool same_lattice(const ToricRing& a, const ToricRing& b) {
  const std::size_t d = a.dimension();
  return lattice::hermite_basis(a.lattice_basis(), d) == lattice::hermite_basis(b.lattice_basis(), d);
}

// Coordinates in which every étale-in-codimension-one overlattice of M_R is integral.
struct EtaleFrame {
  IntMat lower_basis;    // M_R, rows of H^T
  IntMat facets;         // ambient covectors y_F with n_F = y_F H
  IntMat hermite;        // H
  std::int64_t index;    // |det H| = [N : M_R]
};

// Overlattices allowed to have ramification index dividing k_F along F lie
// in the dual of the span of the k_F n_F.
EtaleFrame etale_frame(const ToricRing& ring, const std::vector<std::int64_t>& multipliers = {}) {
  const std::size_t d = ring.dimension();
  EtaleFrame fr;
  IntMat scaled = ring.facet_normals();
  for (std::size_t f = 0; f < multipliers.size(); ++f)
    for (auto& x : scaled[f]) x *= multipliers[f];
  fr.hermite = lattice::hermite_basis(scaled, d);
  fr.lower_basis = lattice::transpose(fr.hermite);
  for (const auto& n : scaled) {
    auto y = lattice::solve_left_integral(fr.hermite, n);
    if (!y) throw Error("facet normal outside its own span");
    fr.facets.push_back(*y);
  }
  BigInt det = lattice::determinant(fr.hermite);
  if (det < 0) det = -det;
  if (det > 10000) throw InvalidInput("étale cover search: lattice index too large");
  fr.index = det.convert_to<std::int64_t>();
  return fr;
}

}  // namespace

std::uint32_t TraceMap::coefficient(const ToricRing& lower, const ToricRing& upper, const IntVec& u) const {
  if (!lower.to_lattice(upper.to_ambient(u))) return 0;
  return static_cast<std::uint32_t>(degree % characteristic);
}

CoverDescriptor make_cover(const ToricRing& lower, const ToricRing& upper, bool allow_wild, std::string label) {
  if (lower.dimension() != upper.dimension()) throw InvalidInput("cover rings have different dimensions");
  if (lower.characteristic() != upper.characteristic()) throw InvalidInput("cover rings have different characteristics");
  if (lower.ambient_facets() != upper.ambient_facets()) throw InvalidInput("cover rings must share their cone");
  for (const auto& row : lower.lattice_basis()) {
    if (!upper.to_lattice(row)) throw InvalidInput("lower lattice is not contained in the upper lattice");
  }
  const std::uint32_t p = lower.characteristic();
  CoverDescriptor c{lower, upper, 1, 1, {}, {}, true, false, {}, {}};
  c.degree = BigInt(lower.lattice_index() / upper.lattice_index()).convert_to<std::int64_t>();
  c.residue_degree = 1;
  c.ramification.coeffs.clear();
  for (std::size_t f = 0; f < lower.num_facets(); ++f) {
    const auto gl = lower.facet_scales()[f], gu = upper.facet_scales()[f];
    if (gl % gu != 0) throw Error("ramification index is not an integer");
    const auto e = gl / gu;
    c.ramification_indices.push_back(e);
    c.ramification.coeffs.emplace_back(e - 1);
    if (e % p == 0) c.wild = true;
  }
  if (c.degree % p == 0) c.wild = true;
  if (c.wild && !allow_wild) {
    throw InvalidInput("p = " + std::to_string(p) + " divides the cover degree " + std::to_string(c.degree) +
                       "; such covers do not exist with equal residue fields");
  }
  c.etale_in_codim1 = c.ramification.is_zero();
  c.trace = TraceMap{c.degree, p};
  c.label = std::move(label);
  return c;
}

CoverDescriptor quotient_cover(std::int64_t n, const std::vector<std::int64_t>& weights, std::uint32_t p,
                               std::int64_t m) {
  if (m < 1 || n % m != 0) throw InvalidInput("subgroup order m must divide n");
  const auto lower = toric::quotient_singularity(n, weights, p);
  const auto upper = toric::quotient_singularity(m, weights, p);
  return make_cover(lower.ring, upper.ring, false,
                    "1/" + std::to_string(n) + " ⊆ 1/" + std::to_string(m));
}

CoverDescriptor root_cover(std::size_t dim, std::size_t along, std::int64_t n, std::uint32_t p, bool allow_wild) {
  poly::PrimeField check(p);
  if (dim == 0) throw InvalidInput("root cover needs at least one variable");
  if (along >= dim) throw InvalidInput("root cover variable out of range");
  if (n < 1) throw InvalidInput("root order n must be positive");
  IntMat lower = identity(dim);
  lower[along][along] = n;
  return make_cover(ToricRing::with_lattice(lower, identity(dim), p), ToricRing::with_lattice(identity(dim), identity(dim), p),
                    allow_wild, "x" + std::to_string(along) + "^(1/" + std::to_string(n) + ")");
}

TorusQDivisor ramification_divisor(const CoverDescriptor& cover) { return cover.ramification; }

TorusQDivisor pullback(const CoverDescriptor& cover, const TorusQDivisor& lower_divisor) {
  if (lower_divisor.coeffs.size() != cover.ramification_indices.size()) {
    throw InvalidInput("divisor does not match the facets of the lower ring");
  }
  TorusQDivisor out;
  for (std::size_t f = 0; f < lower_divisor.coeffs.size(); ++f) {
    out.coeffs.push_back(lower_divisor.coeffs[f] * Rational(cover.ramification_indices[f]));
  }
  return out;
}

TorusQDivisor pullback_pair(const CoverDescriptor& cover, const TorusQDivisor& delta_x) {
  toric::validate_pair(cover.lower, delta_x);
  TorusQDivisor out = pullback(cover, delta_x) - cover.ramification;
  for (std::size_t f = 0; f < out.coeffs.size(); ++f) {
    if (out.coeffs[f] < 0) {
      throw NonEffectiveDivisor("pullback minus ramification is negative on facet " + std::to_string(f) + " (" +
                                    format_rational(out.coeffs[f]) + ")",
                                f);
    }
  }
  return out;
}

CoverDescriptor compose(const CoverDescriptor& bottom, const CoverDescriptor& top) {
  if (!same_lattice(bottom.upper, top.lower) || bottom.upper.ambient_facets() != top.lower.ambient_facets()) {
    throw InvalidInput("covers do not compose: middle rings differ");
  }
  return make_cover(bottom.lower, top.upper, bottom.wild || top.wild, bottom.label + " ⊆ " + top.label);
}

NoteTraceReport verify_note_trace(const CoverDescriptor& cover) {
  NoteTraceReport rep{{}, true};
  for (const auto& h : cover.upper.hilbert_basis()) {
    TraceEvidence ev;
    ev.generator = cover.upper.to_ambient(h);
    ev.in_lower = cover.lower.to_lattice(ev.generator).has_value();
    ev.coefficient = cover.trace.coefficient(cover.lower, cover.upper, h);
    const bool nonzero_degree = lattice::dot(h, cover.upper.grading()) > 0;
    ev.in_maximal_ideal = ev.coefficient == 0 || (ev.in_lower && nonzero_degree);
    rep.ok = rep.ok && ev.in_maximal_ideal;
    rep.evidence.push_back(std::move(ev));
  }
  return rep;
}

std::int64_t count_trace_summands(const CoverDescriptor& cover) {
  if (!cover.trace.surjective()) return 0;
  // Tr(x^w * -) reaches a unit iff x^w x^u = 1 for some u in S
  IntMat candidates{IntVec(cover.upper.dimension(), 0)};
  for (const auto& h : cover.upper.hilbert_basis()) candidates.push_back(h);
  std::int64_t count = 0;
  for (const auto& w : candidates) {
    IntVec neg(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
    if (cover.upper.contains(neg) && cover.trace.coefficient(cover.lower, cover.upper, IntVec(w.size(), 0)) != 0) ++count;
  }
  return count;
}

TransformationReport verify_transformation(const CoverDescriptor& cover, const std::optional<TorusQDivisor>& delta_x) {
  if (cover.wild) throw InvalidInput("transformation rule requires p to not divide the degree");
  if (!delta_x && !cover.etale_in_codim1) {
    throw InvalidInput("cover is not étale in codimension one; a pair is required");
  }
  TransformationReport rep;
  rep.degree = cover.degree;
  rep.residue_degree = cover.residue_degree;
  rep.delta_x = delta_x.value_or(TorusQDivisor::zero(cover.lower.num_facets()));
  rep.delta_y = pullback_pair(cover, rep.delta_x);
  rep.s_lower = toric::toric_fsig_exact(cover.lower, rep.delta_x);
  if (rep.s_lower == 0) throw NotStronglyFRegular("lower pair is not strongly F-regular");
  rep.s_upper = toric::toric_fsig_exact(cover.upper, rep.delta_y);
  rep.f = count_trace_summands(cover);
  rep.lhs = Rational(rep.f) * rep.s_upper;
  rep.rhs = Rational(rep.degree) * rep.s_lower;
  rep.holds = rep.lhs == rep.rhs;
  return rep;
}

DoublingReport doubling_check(const CoverDescriptor& cover) {
  DoublingReport rep;
  rep.applicable = cover.etale_in_codim1 && cover.degree > 1;
  rep.s_lower = toric::toric_fsig_exact(cover.lower);
  rep.s_upper = toric::toric_fsig_exact(cover.upper);
  rep.holds = !rep.applicable || rep.s_upper >= 2 * rep.s_lower;
  rep.equality = rep.applicable && rep.s_upper == 2 * rep.s_lower;
  return rep;
}

std::int64_t etale_lattice_index(const ToricRing& ring) { return etale_frame(ring).index; }

namespace {

std::vector<CoverDescriptor> overlattice_search(const ToricRing& ring, const std::vector<std::int64_t>& multipliers,
                                                const std::function<bool(const CoverDescriptor&)>& keep) {
  const auto fr = etale_frame(ring, multipliers);
  const std::size_t d = ring.dimension();
  const std::uint32_t p = ring.characteristic();
  const auto lower = ToricRing::with_lattice(fr.lower_basis, fr.facets, p);
  std::vector<CoverDescriptor> out;
  if (fr.index == 1) return out;
  // upper-triangular Hermite bases with diagonal product dividing the index
  IntMat basis(d, IntVec(d, 0));
  std::function<void(std::size_t, std::int64_t)> diag = [&](std::size_t i, std::int64_t remaining) {
    if (i == d) {
      const std::int64_t degree = remaining;
      if (degree == 1 || degree % p == 0) return;
      std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t r, std::size_t c) {
        if (r == d) {
          for (const auto& row : fr.lower_basis)
            if (!lattice::in_lattice(basis, row)) return;
          auto cover = make_cover(lower, ToricRing::with_lattice(basis, fr.facets, p), true);
          if (!cover.wild && keep(cover)) out.push_back(std::move(cover));
          return;
        }
        if (c == d) {
          fill(r + 1, r + 2);
          return;
        }
        for (std::int64_t v = 0; v < basis[c][c]; ++v) {
          basis[r][c] = v;
          fill(r, c + 1);
        }
        basis[r][c] = 0;
      };
      fill(0, 1);
      return;
    }
    for (std::int64_t k = 1; k <= remaining; ++k) {
      if (remaining % k != 0) continue;
      basis[i][i] = k;
      diag(i + 1, remaining / k);
    }
  };
  diag(0, fr.index);
  std::sort(out.begin(), out.end(), [](const CoverDescriptor& a, const CoverDescriptor& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.upper.lattice_basis() < b.upper.lattice_basis();
  });
  return out;
}

}  // namespace

std::vector<CoverDescriptor> etale_cover_search(const ToricRing& ring) {
  return overlattice_search(ring, {}, [](const CoverDescriptor&) { return true; });
}

std::vector<CoverDescriptor> pair_cover_search(const ToricRing& ring, const TorusQDivisor& delta) {
  toric::validate_pair(ring, delta);
  std::vector<std::int64_t> multipliers;
  for (const auto& t : delta.coeffs) {
    // largest e with e t - (e - 1) >= 0, i.e. e <= 1/(1-t); allow every such e
    const std::int64_t k = floor_of(Rational(1) / (Rational(1) - t)).convert_to<std::int64_t>();
    std::int64_t l = 1;
    for (std::int64_t e = 2; e <= k; ++e) l = std::lcm(l, e);
    multipliers.push_back(l);
  }
  return overlattice_search(ring, multipliers, [&delta](const CoverDescriptor& c) {
    try {
      pullback_pair(c, delta);
      return true;
    } catch (const NonEffectiveDivisor&) {
      return false;
    }
  });
}

CoverDescriptor overlattice_cover(const ToricRing& ring, const std::vector<RatVec>& extra) {
  const auto fr = etale_frame(ring);
  const std::size_t d = ring.dimension();
  IntMat gens = fr.lower_basis;
  for (const auto& m : extra) {
    if (m.size() != d) throw InvalidInput("overlattice generator has the wrong dimension");
    IntVec z(d);
    for (std::size_t j = 0; j < d; ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < d; ++i) s += m[i] * Rational(fr.lower_basis[i][j]);
      if (!is_integer(s)) throw InvalidInput("overlattice generator pairs non-integrally with a facet");
      z[j] = numerator(s).convert_to<std::int64_t>();
    }
    gens.push_back(z);
  }
  const std::uint32_t p = ring.characteristic();
  return make_cover(ToricRing::with_lattice(fr.lower_basis, fr.facets, p),
                    ToricRing::with_lattice(lattice::hermite_basis(gens, d), fr.facets, p));
}

std::vector<ChainReport> chain_simulation(std::int64_t n, const std::vector<std::int64_t>& weights, std::uint32_t p) {
  std::map<std::int64_t, ToricRing> rings;
  std::map<std::int64_t, Rational> sig;
  auto ring_of = [&](std::int64_t m) -> const ToricRing& {
    auto it = rings.find(m);
    if (it == rings.end()) {
      it = rings.emplace(m, toric::quotient_singularity(m, weights, p).ring).first;
      sig.emplace(m, toric::toric_fsig_exact(it->second));
    }
    return it->second;
  };

  ring_of(n);
  std::vector<std::vector<std::int64_t>> chains;
  std::vector<std::int64_t> current{n};
  std::function<void(std::int64_t)> walk = [&](std::int64_t m) {
    if (m == 1) {
      chains.push_back(current);
      return;
    }
    for (std::int64_t r = 2; r <= m; ++r) {
      bool prime = true;
      for (std::int64_t k = 2; k * k <= r; ++k) prime = prime && r % k != 0;
      if (!prime || m % r != 0) continue;
      current.push_back(m / r);
      walk(m / r);
      current.pop_back();
    }
  };
  walk(n);

  std::vector<ChainReport> out;
  for (const auto& orders : chains) {
    ChainReport rep;
    rep.orders = orders;
    rep.stabilization_index = 0;
    rep.ok = true;
    bool all_codim1 = true;
    rep.s_values.push_back(sig.at(orders[0]));
    for (std::size_t i = 0; i + 1 < orders.size(); ++i) {
      const auto& lo = ring_of(orders[i]);
      const auto& hi = ring_of(orders[i + 1]);
      ChainStep step{make_cover(lo, hi, false,
                                "1/" + std::to_string(orders[i]) + " ⊆ 1/" + std::to_string(orders[i + 1])),
                     sig.at(orders[i]), sig.at(orders[i + 1]), false, false, true};
      step.etale_in_codim1 = step.cover.etale_in_codim1;
      step.etale = step.cover.degree == 1;
      if (step.etale_in_codim1 && !step.etale) step.doubling_ok = step.s_upper >= 2 * step.s_lower;
      if (!step.etale) ++rep.stabilization_index;
      all_codim1 = all_codim1 && step.etale_in_codim1;
      rep.ok = rep.ok && step.doubling_ok && step.s_upper <= 1;
      rep.s_values.push_back(step.s_upper);
      rep.steps.push_back(std::move(step));
    }
    rep.ok = rep.ok && rep.s_values.back() == 1;
    if (all_codim1) {
      // 2^k <= 1/s(start)
      rep.ok = rep.ok && Rational(BigInt(1) << rep.stabilization_index) * rep.s_values.front() <= 1;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace fsig::covers
