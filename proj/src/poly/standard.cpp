#include "fsig/poly/ideal.hpp"

#include "detail.hpp"
#include "fsig/lattice.hpp"
#include "fsig/poly/modp_matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace fsig::poly {

namespace {

using Exponent = Monomial::Exponent;

// Depth-first walk over the standard monomials of an Artinian monomial
// ideal given by its minimal generators.
void enumerate_standard(const std::vector<Monomial>& gens, std::size_t n,
                        const std::function<void(const std::vector<Exponent>&)>& visit) {
  if (std::any_of(gens.begin(), gens.end(), [](const Monomial& m) { return m.is_one(); })) return;
  std::vector<std::vector<const Monomial*>> by_top(n);
  for (const auto& g : gens) {
    std::size_t top = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (g[j] != 0) top = j;
    by_top[top].push_back(&g);
  }
  std::vector<Exponent> a(n, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == n) {
      visit(a);
      return;
    }
    for (Exponent v = 0;; ++v) {
      a[i] = v;
      const bool killed = std::any_of(by_top[i].begin(), by_top[i].end(), [&a, i](const Monomial* g) {
        for (std::size_t j = 0; j <= i; ++j)
          if ((*g)[j] > a[j]) return false;
        return true;
      });
      if (killed) break;
      walk(i + 1);
    }
    a[i] = 0;
  };
  walk(0);
}

std::vector<Exponent> pure_power_bounds(const std::vector<Monomial>& gens, std::size_t n) {
  std::vector<Exponent> bounds(n, 0);
  for (const auto& g : gens) {
    std::size_t support = 0, var = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j] != 0) {
        ++support;
        var = j;
      }
    }
    if (support == 1 && (bounds[var] == 0 || g[var] < bounds[var])) bounds[var] = g[var];
  }
  return bounds;
}

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

class StandardSet {
 public:
  StandardSet(const std::vector<Monomial>& gens, std::size_t n) : n_(n), bounds_(pure_power_bounds(gens, n)) {
    weights_.assign(n, 0);
    std::uint64_t box = 1;
    bool overflow = false;
    for (std::size_t i = n; i-- > 0;) {
      weights_[i] = box;
      if (box > (std::uint64_t{1} << 62) / std::max<Exponent>(bounds_[i], 1)) overflow = true;
      else box *= bounds_[i];
    }
    if (overflow) throw InvalidInput("quotient is too large to enumerate");
    dense_ = box <= kDenseLimit;
    if (dense_) index_.assign(box, -1);
    enumerate_standard(gens, n, [this](const std::vector<Exponent>& a) {
      if (codes_.size() >= (std::uint64_t{1} << 31)) throw InvalidInput("quotient is too large to enumerate");
      const std::uint64_t code = code_of(a.data());
      const auto idx = static_cast<std::int32_t>(codes_.size());
      if (dense_) index_[code] = idx;
      else sparse_.emplace(code, idx);
      codes_.push_back(code);
      flat_.insert(flat_.end(), a.begin(), a.end());
    });
  }

  std::size_t size() const { return codes_.size(); }
  std::size_t nvars() const { return n_; }
  const Exponent* exps(std::size_t idx) const { return flat_.data() + idx * n_; }
  Monomial monomial(std::size_t idx) const { return Monomial(std::vector<Exponent>(exps(idx), exps(idx) + n_)); }

  std::uint64_t code_of(const Exponent* e) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n_; ++i) c += weights_[i] * e[i];
    return c;
  }

  bool in_box(const Exponent* e) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i] >= bounds_[i]) return false;
    return true;
  }

  std::int32_t lookup(std::uint64_t code) const {
    if (dense_) return index_[code];
    auto it = sparse_.find(code);
    return it == sparse_.end() ? -1 : it->second;
  }

  /// Index of x^a * x^t for a = element idx, or -1 when it lies in the ideal.
  std::int32_t shifted(std::size_t idx, const Exponent* t, std::uint64_t t_code) const {
    const Exponent* a = exps(idx);
    for (std::size_t i = 0; i < n_; ++i)
      if (a[i] + t[i] >= bounds_[i]) return -1;
    return lookup(codes_[idx] + t_code);
  }

  /// Index of a monomial, or -1 if it is not standard.
  std::int32_t index_of(const Exponent* e) const { return in_box(e) ? lookup(code_of(e)) : -1; }

 private:
  std::size_t n_;
  std::vector<Exponent> bounds_;
  std::vector<std::uint64_t> weights_;
  bool dense_ = false;
  std::vector<std::int32_t> index_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
  std::vector<std::uint64_t> codes_;
  std::vector<Exponent> flat_;
};

struct ShiftTerm {
  std::vector<Exponent> exps;
  std::uint64_t code;
  std::uint32_t coeff;
};

struct IntVecHash {
  std::size_t operator()(const lattice::IntVec& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

// Multiplication by g on P/I, split into blocks that share no rows: a
// column x^a only reaches rows in the coset a + t_0 + L, where L is spanned
// by differences of exponents of g.
class MultiplicationOperator {
 public:
  MultiplicationOperator(const StandardSet& std_set, const Polynomial& g) : set_(std_set), p_(g.characteristic()) {
    for (const auto& t : g.terms()) {
      std::vector<Exponent> e(t.monomial.exponents().begin(), t.monomial.exponents().end());
      if (!set_.in_box(e.data()) || set_.index_of(e.data()) < 0) continue;
      const std::uint64_t code = set_.code_of(e.data());
      terms_.push_back({std::move(e), code, t.coeff});
    }
    if (terms_.empty()) return;
    const std::size_t n = set_.nvars();
    lattice::IntMat diffs;
    for (std::size_t k = 1; k < terms_.size(); ++k) {
      lattice::IntVec d(n);
      for (std::size_t i = 0; i < n; ++i)
        d[i] = static_cast<std::int64_t>(terms_[k].exps[i]) - static_cast<std::int64_t>(terms_[0].exps[i]);
      diffs.push_back(std::move(d));
    }
    const lattice::IntMat hermite = lattice::hermite_basis(diffs, n);
    std::unordered_map<lattice::IntVec, std::size_t, IntVecHash> block_of;
    for (std::size_t idx = 0; idx < set_.size(); ++idx) {
      const Exponent* a = set_.exps(idx);
      lattice::IntVec key(a, a + n);
      if (!hermite.empty()) key = lattice::reduce_modulo(hermite, std::move(key));
      auto [it, inserted] = block_of.try_emplace(std::move(key), blocks_.size());
      if (inserted) blocks_.emplace_back();
      blocks_[it->second].push_back(static_cast<std::uint32_t>(idx));
    }
    stamp_.assign(set_.size(), -1);
    row_.assign(set_.size(), 0);
  }

  bool trivial() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::vector<std::uint32_t>& block(std::size_t b) { return blocks_[b]; }

  /// Dense matrix of block b with columns in the block's current order.
  ModpMatrix matrix(std::size_t b) {
    const auto& cols = blocks_[b];
    std::vector<std::int32_t> targets;
    targets.reserve(cols.size() * terms_.size());
    std::size_t nrows = 0;
    const std::int64_t generation = ++generation_;
    for (std::uint32_t c : cols) {
      for (const auto& t : terms_) {
        const std::int32_t target = set_.shifted(c, t.exps.data(), t.code);
        targets.push_back(target);
        if (target >= 0 && stamp_[target] != generation) {
          stamp_[target] = generation;
          row_[target] = static_cast<std::uint32_t>(nrows++);
        }
      }
    }
    ModpMatrix m(nrows, cols.size(), p_);
    std::size_t k = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (const auto& t : terms_) {
        const std::int32_t target = targets[k++];
        if (target >= 0) m.at(row_[target], j) = t.coeff;
      }
    }
    return m;
  }

  std::uint64_t monomial_rank() const {
    std::uint64_t count = 0;
    const auto& t = terms_.front();
    for (std::size_t idx = 0; idx < set_.size(); ++idx)
      if (set_.shifted(idx, t.exps.data(), t.code) >= 0) ++count;
    return count;
  }

 private:
  const StandardSet& set_;
  std::uint32_t p_;
  std::vector<ShiftTerm> terms_;
  std::vector<std::vector<std::uint32_t>> blocks_;
  std::vector<std::int64_t> stamp_;
  std::int64_t generation_ = 0;
  std::vector<std::uint32_t> row_;
};

std::vector<Monomial> artinian_generators(const Ideal& ideal) {
  if (!ideal.is_monomial()) throw UsageError("expected a monomial ideal");
  auto gens = ideal.minimal_monomial_generators();
  if (!detail::has_all_pure_powers(gens, ideal.nvars())) throw UsageError("expected an Artinian monomial ideal");
  return gens;
}

}  // namespace

std::optional<std::uint64_t> quotient_length(const Ideal& ideal, const Deadline& deadline) {
  const auto gens = detail::initial_monomials(ideal, deadline);
  if (!detail::has_all_pure_powers(gens, ideal.nvars())) return std::nullopt;
  std::uint64_t count = 0;
  enumerate_standard(gens, ideal.nvars(), [&count](const std::vector<Exponent>&) { ++count; });
  return count;
}

std::vector<Monomial> standard_monomials(const Ideal& ideal) {
  const auto gens = detail::initial_monomials(ideal, {});
  if (!detail::has_all_pure_powers(gens, ideal.nvars())) throw UsageError("quotient is infinite");
  std::vector<Monomial> out;
  enumerate_standard(gens, ideal.nvars(), [&out](const std::vector<Exponent>& a) { out.emplace_back(a); });
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return MonomialOrder::grevlex().compare(a, b) < 0; });
  return out;
}

std::uint64_t multiplication_rank(const Ideal& ideal, const Polynomial& g, const Deadline& deadline) {
  const StandardSet set(artinian_generators(ideal), ideal.nvars());
  MultiplicationOperator op(set, g);
  if (op.trivial()) return 0;
  if (op.is_monomial()) return op.monomial_rank();
  std::uint64_t rank = 0;
  for (std::size_t b = 0; b < op.num_blocks(); ++b) {
    if (b % 64 == 0) deadline.check("multiplication rank");
    rank += op.matrix(b).rank();
  }
  return rank;
}

Ideal colon_ideal_by_linear_algebra(const Ideal& ideal, const Polynomial& f, const Deadline& deadline) {
  if (f.is_zero()) throw InvalidInput("colon by the zero polynomial");
  const std::size_t n = ideal.nvars();
  const std::uint32_t p = ideal.characteristic();
  const auto gens = artinian_generators(ideal);
  const StandardSet set(gens, n);
  MultiplicationOperator op(set, f);

  if (op.trivial()) {
    // f is zero on P/I
    return Ideal::from_groebner(n, p, {Polynomial::constant(n, p, 1)}, MonomialOrder::grevlex());
  }

  // leading[idx]: the standard monomial of I is a leading monomial of (I : f)
  std::vector<char> leading(set.size(), 1);
  const auto grevlex_less = [&set, n](std::uint32_t a, std::uint32_t b) {
    const Exponent* x = set.exps(a);
    const Exponent* y = set.exps(b);
    std::uint64_t dx = 0, dy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dx += x[i];
      dy += y[i];
    }
    if (dx != dy) return dx < dy;
    for (std::size_t i = n; i-- > 0;)
      if (x[i] != y[i]) return x[i] > y[i];
    return false;
  };
  for (std::size_t b = 0; b < op.num_blocks(); ++b) {
    if (b % 64 == 0) deadline.check("colon ideal");
    auto& cols = op.block(b);
    std::sort(cols.begin(), cols.end(), grevlex_less);
    ModpMatrix m = op.matrix(b);
    const auto pivots = m.rref();
    for (std::size_t pc : pivots) leading[cols[pc]] = 0;
  }

  auto is_lead_or_outside = [&](std::vector<Exponent>& e) {
    const std::int32_t idx = set.index_of(e.data());
    return idx < 0 || leading[idx];
  };
  // x^m is a minimal leading monomial iff each x^m / x_i is standard for (I : f)
  auto is_minimal = [&](const Monomial& m) {
    std::vector<Exponent> e(m.exponents().begin(), m.exponents().end());
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      --e[i];
      const bool bad = is_lead_or_outside(e);
      ++e[i];
      if (bad) return false;
    }
    return true;
  };

  std::vector<char> wanted(set.size(), 0);
  bool any = false;
  for (std::size_t idx = 0; idx < set.size(); ++idx) {
    if (leading[idx] && is_minimal(set.monomial(idx))) {
      wanted[idx] = 1;
      any = true;
    }
  }

  std::vector<Polynomial> basis;
  for (std::size_t b = 0; any && b < op.num_blocks(); ++b) {
    const auto& cols = op.block(b);
    if (std::none_of(cols.begin(), cols.end(), [&wanted](std::uint32_t c) { return wanted[c] != 0; })) continue;
    ModpMatrix m = op.matrix(b);
    const auto pivots = m.rref();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!wanted[cols[j]]) continue;
      std::vector<Term> terms{{set.monomial(cols[j]), 1}};
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        const auto v = static_cast<std::uint32_t>(m.at(r, j));
        if (v != 0 && pivots[r] != j) terms.push_back({set.monomial(cols[pivots[r]]), p - v});
      }
      basis.push_back(Polynomial::from_terms(n, p, std::move(terms)));
    }
  }
  for (const auto& g : gens)
    if (is_minimal(g)) basis.push_back(Polynomial::from_monomial(g, p));
  std::sort(basis.begin(), basis.end(), [](const Polynomial& a, const Polynomial& b) {
    return MonomialOrder::grevlex().compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  return Ideal::from_groebner(n, p, std::move(basis), MonomialOrder::grevlex());
}

}  // namespace fsig::poly
