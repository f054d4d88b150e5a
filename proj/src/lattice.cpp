#include "fsig/lattice.hpp"

#include "fsig/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace fsig::lattice {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ExponentOverflow("integer overflow in lattice arithmetic");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ExponentOverflow("integer overflow in lattice arithmetic");
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

std::int64_t gcd_of(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

IntVec primitive(const IntVec& v) {
  const std::int64_t g = gcd_of(v);
  if (g == 0) return v;
  IntVec out(v);
  for (auto& x : out) x /= g;
  return out;
}

namespace {

void axpy(IntVec& target, std::int64_t factor, const IntVec& source) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < target.size(); ++i) {
    target[i] = checked_add(target[i], checked_mul(-factor, source[i]));
  }
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

std::size_t pivot_column(const IntVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}

}  // namespace

IntMat hermite_basis(const IntMat& generators, std::size_t ambient_dim) {
  IntMat pending;
  for (const auto& g : generators) {
    if (g.size() != ambient_dim) throw InvalidInput("lattice generator has wrong dimension");
    if (!is_zero(g)) pending.push_back(g);
  }
  IntMat basis;
  for (std::size_t col = 0; col < ambient_dim && !pending.empty(); ++col) {
    while (true) {
      std::size_t best = pending.size();
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (pending[i][col] == 0) continue;
        if (best == pending.size() || std::llabs(pending[i][col]) < std::llabs(pending[best][col])) best = i;
      }
      if (best == pending.size()) break;
      bool others_clear = true;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (i == best || pending[i][col] == 0) continue;
        axpy(pending[i], floor_div(pending[i][col], pending[best][col]), pending[best]);
        if (pending[i][col] != 0) others_clear = false;
      }
      if (others_clear) {
        IntVec row = pending[best];
        if (row[col] < 0)
          for (auto& x : row) x = -x;
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
        basis.push_back(std::move(row));
        break;
      }
    }
    pending.erase(std::remove_if(pending.begin(), pending.end(), is_zero), pending.end());
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const std::size_t c = pivot_column(basis[j]);
      axpy(basis[i], floor_div(basis[i][c], basis[j][c]), basis[j]);
    }
  }
  return basis;
}

IntVec reduce_modulo(const IntMat& hermite, IntVec v) {
  for (const auto& row : hermite) {
    const std::size_t c = pivot_column(row);
    axpy(v, floor_div(v[c], row[c]), row);
  }
  return v;
}

bool in_lattice(const IntMat& hermite, const IntVec& v) { return is_zero(reduce_modulo(hermite, v)); }

namespace {

RatMat to_rational(const IntMat& m) {
  RatMat out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto x : m[i]) out[i].emplace_back(x);
  return out;
}

std::size_t rational_rank(RatMat m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const IntMat& rows, std::size_t ambient_dim) {
  return hermite_basis(rows, ambient_dim).size();
}

BigInt determinant(const IntMat& square) {
  const std::size_t n = square.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (square[i].size() != n) throw InvalidInput("determinant of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = square[i][j];
  }
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

RatMat inverse(const IntMat& square) {
  const std::size_t n = square.size();
  RatMat a = to_rational(square);
  RatMat inv(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw InvalidInput("singular matrix");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Rational scale = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= scale;
      inv[c][j] /= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

RatVec solve_left(const IntMat& a, const IntVec& b) {
  const RatMat inv = inverse(a);
  RatVec x(inv.size(), Rational(0));
  for (std::size_t j = 0; j < inv.size(); ++j)
    for (std::size_t i = 0; i < b.size(); ++i) x[j] += Rational(b[i]) * inv[i][j];
  return x;
}

std::optional<IntVec> solve_left_integral(const IntMat& a, const IntVec& b) {
  const RatVec x = solve_left(a, b);
  IntVec out;
  out.reserve(x.size());
  for (const auto& v : x) {
    if (!is_integer(v)) return std::nullopt;
    out.push_back(boost::multiprecision::numerator(v).convert_to<std::int64_t>());
  }
  return out;
}

IntMat transpose(const IntMat& m) {
  if (m.empty()) return {};
  IntMat t(m[0].size(), IntVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntVec row_times(const IntVec& v, const IntMat& m) {
  IntVec out(m.empty() ? 0 : m[0].size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = checked_add(out[j], checked_mul(v[i], m[i][j]));
  return out;
}

IntVec orthogonal_complement_line(const IntMat& rows, std::size_t ambient_dim) {
  if (ambient_dim == 1) return IntVec{1};
  IntVec out(ambient_dim, 0);
  for (std::size_t skip = 0; skip < ambient_dim; ++skip) {
    IntMat minor;
    for (const auto& r : rows) {
      IntVec m;
      for (std::size_t j = 0; j < ambient_dim; ++j)
        if (j != skip) m.push_back(r[j]);
      minor.push_back(std::move(m));
    }
    const BigInt d = determinant(minor);
    out[skip] = (skip % 2 == 0 ? d : BigInt(-d)).convert_to<std::int64_t>();
  }
  return primitive(out);
}

int affine_dimension(const std::vector<RatVec>& points) {
  if (points.empty()) return -1;
  RatMat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVec d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(rational_rank(std::move(diffs)));
}

}  // namespace fsig::lattice
