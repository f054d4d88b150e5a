#include "fsig/poly/ideal.hpp"

#include "detail.hpp"

#include <algorithm>
#include <set>

namespace fsig::poly {

Ideal::Ideal(std::size_t nvars, std::uint32_t p) : nvars_(nvars), p_(p) { PrimeField check(p); }

Ideal::Ideal(std::size_t nvars, std::uint32_t p, std::vector<Polynomial> generators) : Ideal(nvars, p) {
  for (auto& g : generators) {
    if (g.nvars() != nvars || g.characteristic() != p) throw UsageError("generator lives in a different ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::maximal(std::size_t nvars, std::uint32_t p) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < nvars; ++i) gens.push_back(Polynomial::variable(nvars, p, i));
  return Ideal(nvars, p, std::move(gens));
}

Ideal Ideal::from_monomials(std::size_t nvars, std::uint32_t p, const std::vector<Monomial>& monomials) {
  std::vector<Polynomial> gens;
  for (const auto& m : monomials) gens.push_back(Polynomial::from_monomial(m, p));
  return Ideal(nvars, p, std::move(gens));
}

Ideal Ideal::from_groebner(std::size_t nvars, std::uint32_t p, std::vector<Polynomial> basis,
                           const MonomialOrder& order) {
  Ideal out(nvars, p, basis);
  out.groebner_ = std::move(basis);
  out.order_ = order;
  return out;
}

bool Ideal::is_monomial() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Polynomial& g) { return g.is_monomial(); });
}

namespace detail {

std::vector<Monomial> minimalize(std::vector<Monomial> monomials) {
  std::sort(monomials.begin(), monomials.end(), [](const Monomial& a, const Monomial& b) {
    return MonomialOrder::grevlex().compare(a, b) < 0;
  });
  monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
  std::vector<Monomial> out;
  for (const auto& m : monomials) {
    // grevlex refines degree, so a divisor always precedes its multiples
    if (std::none_of(out.begin(), out.end(), [&m](const Monomial& d) { return d.divides(m); })) out.push_back(m);
  }
  return out;
}

bool has_all_pure_powers(const std::vector<Monomial>& monomials, std::size_t nvars) {
  for (std::size_t i = 0; i < nvars; ++i) {
    bool found = false;
    for (const auto& m : monomials) {
      bool pure = true;
      for (std::size_t j = 0; j < nvars && pure; ++j) pure = (j == i || m[j] == 0);
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Monomial> initial_monomials(const Ideal& ideal, const Deadline& deadline) {
  if (ideal.is_monomial()) return ideal.minimal_monomial_generators();
  const Ideal gb = buchberger(ideal, MonomialOrder::grevlex(), deadline);
  std::vector<Monomial> leads;
  for (const auto& g : gb.groebner()) leads.push_back(g.leading_monomial());
  return minimalize(std::move(leads));
}

}  // namespace detail

std::vector<Monomial> Ideal::minimal_monomial_generators() const {
  if (!is_monomial()) throw UsageError("ideal is not monomial");
  std::vector<Monomial> ms;
  for (const auto& g : generators_) ms.push_back(g.leading_monomial());
  return detail::minimalize(std::move(ms));
}

bool Ideal::is_artinian_monomial() const {
  if (!is_monomial()) return false;
  return detail::has_all_pure_powers(minimal_monomial_generators(), nvars_);
}

const std::vector<Polynomial>& Ideal::groebner() const {
  if (!groebner_) throw UsageError("ideal carries no Groebner basis");
  return *groebner_;
}

namespace {

const Polynomial* find_reducer(const std::vector<Polynomial>& basis, const Monomial& m) {
  for (const auto& g : basis)
    if (g.leading_monomial().divides(m)) return &g;
  return nullptr;
}

// Full reduction of f by a monic family in f's order.
Polynomial reduce_fully(Polynomial f, const std::vector<Polynomial>& basis) {
  const auto& field = f.field();
  std::vector<Term> remainder;
  while (!f.is_zero()) {
    const Term lead = f.leading_term();
    if (const Polynomial* g = find_reducer(basis, lead.monomial)) {
      f = combine(f, g->times_term(lead.monomial / g->leading_monomial(), 1), field.neg(lead.coeff));
    } else {
      remainder.push_back(lead);
      f = combine(f, Polynomial::from_monomial(lead.monomial, f.characteristic()).with_order(f.order()),
                  field.neg(lead.coeff));
    }
  }
  return Polynomial::from_terms(f.nvars(), f.characteristic(), std::move(remainder), f.order());
}

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b) {
  const Monomial l = lcm(a.leading_monomial(), b.leading_monomial());
  return combine(a.times_term(l / a.leading_monomial(), 1), b.times_term(l / b.leading_monomial(), 1),
                 a.field().neg(1));
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

}  // namespace

Ideal buchberger(const Ideal& ideal, const MonomialOrder& order, const Deadline& deadline) {
  if (ideal.has_groebner() && ideal.groebner_order() == order) return ideal;
  std::vector<Polynomial> basis;
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add = [&](Polynomial h) {
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      pairs.push_back({i, k, lcm(basis[i].leading_monomial(), h.leading_monomial())});
      pending.insert({i, k});
    }
    basis.push_back(std::move(h));
  };

  for (const auto& g : ideal.generators()) {
    Polynomial h = reduce_fully(g.with_order(order), basis);
    if (!h.is_zero()) add(h.monic());
  }

  while (!pairs.empty()) {
    deadline.check("buchberger");
    auto best = std::min_element(pairs.begin(), pairs.end(), [&order](const Pair& a, const Pair& b) {
      return order.compare(a.lcm, b.lcm) < 0;
    });
    const Pair pr = *best;
    *best = pairs.back();
    pairs.pop_back();
    pending.erase({pr.i, pr.j});

    const auto& a = basis[pr.i];
    const auto& b = basis[pr.j];
    if (a.leading_monomial().coprime(b.leading_monomial())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].leading_monomial().divides(pr.lcm)) continue;
      const auto ik = std::minmax(pr.i, k);
      const auto jk = std::minmax(pr.j, k);
      chain = !pending.count({ik.first, ik.second}) && !pending.count({jk.first, jk.second});
    }
    if (chain) continue;

    Polynomial h = reduce_fully(s_polynomial(a, b), basis);
    if (!h.is_zero()) add(h.monic());
  }

  // minimal basis, then interreduce
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = basis[i].leading_monomial();
      const auto& mj = basis[j].leading_monomial();
      if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Term lead = minimal[i].leading_term();
    Polynomial tail = combine(minimal[i], Polynomial::from_monomial(lead.monomial, ideal.characteristic()),
                              minimal[i].field().neg(lead.coeff));
    reduced.push_back(combine(reduce_fully(tail, others),
                              Polynomial::from_monomial(lead.monomial, ideal.characteristic()).with_order(order), 1));
  }
  std::sort(reduced.begin(), reduced.end(), [&order](const Polynomial& a, const Polynomial& b) {
    return order.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });

  Ideal out(ideal.nvars(), ideal.characteristic(), ideal.generators());
  out.groebner_ = std::move(reduced);
  out.order_ = order;
  return out;
}

Polynomial normal_form(const Polynomial& f, const Ideal& ideal) {
  const auto& basis = ideal.groebner();
  return reduce_fully(f.with_order(ideal.groebner_order()), basis).with_order(f.order());
}

bool contains(const Ideal& ideal, const Polynomial& f) { return normal_form(f, ideal).is_zero(); }

Ideal colon_ideal(const Ideal& ideal, const Polynomial& f, const Deadline& deadline) {
  if (f.is_zero()) throw InvalidInput("colon by the zero polynomial");
  if (ideal.is_artinian_monomial()) return colon_ideal_by_linear_algebra(ideal, f, deadline);
  return colon_ideal_by_elimination(ideal, f, deadline);
}

Ideal colon_ideal_by_elimination(const Ideal& ideal, const Polynomial& f, const Deadline& deadline) {
  if (f.is_zero()) throw InvalidInput("colon by the zero polynomial");
  const std::size_t n = ideal.nvars();
  const std::uint32_t p = ideal.characteristic();
  if (ideal.is_zero()) return buchberger(Ideal(n, p), MonomialOrder::grevlex(), deadline);

  const MonomialOrder elim = MonomialOrder::elimination(1);
  const Polynomial t = Polynomial::variable(n + 1, p, 0).with_order(elim);
  const Polynomial one = Polynomial::constant(n + 1, p, 1).with_order(elim);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(t * g.with_inserted_variables(0, 1, elim));
  gens.push_back((one - t) * f.with_inserted_variables(0, 1, elim));
  const Ideal lifted = buchberger(Ideal(n + 1, p, std::move(gens)), elim, deadline);

  std::vector<Polynomial> quotients;
  for (const auto& h : lifted.groebner()) {
    if (h.leading_monomial()[0] != 0) continue;
    std::vector<Term> terms;
    for (const auto& term : h.terms()) {
      std::vector<Monomial::Exponent> e(term.monomial.exponents().begin() + 1, term.monomial.exponents().end());
      terms.push_back({Monomial(std::move(e)), term.coeff});
    }
    const Polynomial dropped = Polynomial::from_terms(n, p, std::move(terms));
    quotients.push_back(divide_exact(dropped, f.with_order(MonomialOrder::grevlex())));
  }
  return buchberger(Ideal(n, p, std::move(quotients)), MonomialOrder::grevlex(), deadline);
}

Ideal frobenius_power(const Ideal& ideal, std::uint64_t q) {
  const std::uint32_t p = ideal.characteristic();
  std::uint64_t r = q;
  while (r > 1 && r % p == 0) r /= p;
  if (q == 0 || r != 1) {
    throw InvalidInput("Frobenius power " + std::to_string(q) + " is not a power of " + std::to_string(p));
  }
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.frobenius(q));
  return Ideal(ideal.nvars(), p, std::move(gens));
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (a.nvars() != b.nvars() || a.characteristic() != b.characteristic()) {
    throw UsageError("ideals live in different rings");
  }
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.nvars(), a.characteristic(), std::move(gens));
}

}  // namespace fsig::poly
