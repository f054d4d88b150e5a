#include "fsig/toric/polytope.hpp"

#include "fsig/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fsig::toric {

namespace {

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Unique solution of the square system rows . x = rhs, if nonsingular.
std::optional<RatVec> solve_square(std::vector<RatVec> rows, RatVec rhs) {
  const std::size_t n = rows.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(rows[piv], rows[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[c][c];
      for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[c][j];
      rhs[i] -= f * rhs[c];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / rows[i][i];
  return x;
}

bool feasible(const std::vector<HalfSpace>& hs, const RatVec& x) {
  return std::all_of(hs.begin(), hs.end(), [&x](const HalfSpace& h) { return dot(h.normal, x) >= h.offset; });
}

void choose(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      visit(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

Rational simplex_volume(const std::vector<RatVec>& pts) {
  const std::size_t d = pts.size() - 1;
  std::vector<RatVec> m(d, RatVec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = pts[i + 1][j] - pts[0][j];
  // exact determinant by elimination
  Rational det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < d; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < d; ++j) m[i][j] -= f * m[c][j];
    }
  }
  if (det < 0) det = -det;
  Rational fact = 1;
  for (std::size_t k = 2; k <= d; ++k) fact *= Rational(static_cast<long long>(k));
  return det / fact;
}

// Triangulates the face spanned by `vertex_ids` (affine dimension k) by
// coning each of its facets from the face's barycentre.
void triangulate(const std::vector<RatVec>& vertices, const std::vector<std::set<std::size_t>>& tight,
                 const std::vector<std::size_t>& vertex_ids, int k, std::vector<RatVec>& apex_stack,
                 Rational& volume, std::size_t dim) {
  if (k == 0) {
    std::vector<RatVec> pts = apex_stack;
    pts.push_back(vertices[vertex_ids.front()]);
    if (pts.size() == dim + 1) volume += simplex_volume(pts);
    return;
  }
  RatVec centre(dim, Rational(0));
  for (auto v : vertex_ids)
    for (std::size_t j = 0; j < dim; ++j) centre[j] += vertices[v][j];
  for (auto& x : centre) x /= Rational(static_cast<long long>(vertex_ids.size()));

  // constraints tight on every vertex of this face
  std::set<std::size_t> common = tight[vertex_ids.front()];
  for (auto v : vertex_ids) {
    std::set<std::size_t> next;
    std::set_intersection(common.begin(), common.end(), tight[v].begin(), tight[v].end(),
                          std::inserter(next, next.begin()));
    common = std::move(next);
  }
  std::set<std::vector<std::size_t>> seen;
  std::set<std::size_t> candidates;
  for (auto v : vertex_ids) candidates.insert(tight[v].begin(), tight[v].end());
  apex_stack.push_back(centre);
  for (std::size_t c : candidates) {
    if (common.count(c)) continue;
    std::vector<std::size_t> sub;
    for (auto v : vertex_ids)
      if (tight[v].count(c)) sub.push_back(v);
    if (sub.empty() || seen.count(sub)) continue;
    std::vector<RatVec> pts;
    for (auto v : sub) pts.push_back(vertices[v]);
    if (lattice::affine_dimension(pts) != k - 1) continue;
    seen.insert(sub);
    triangulate(vertices, tight, sub, k - 1, apex_stack, volume, dim);
  }
  apex_stack.pop_back();
}

}  // namespace

std::vector<RatVec> polytope_vertices(const std::vector<HalfSpace>& halfspaces, std::size_t dim) {
  std::vector<RatVec> out;
  std::set<RatVec> seen;
  choose(halfspaces.size(), dim, [&](const std::vector<std::size_t>& idx) {
    std::vector<RatVec> rows;
    RatVec rhs;
    for (auto i : idx) {
      rows.push_back(halfspaces[i].normal);
      rhs.push_back(halfspaces[i].offset);
    }
    auto x = solve_square(std::move(rows), std::move(rhs));
    if (x && feasible(halfspaces, *x) && seen.insert(*x).second) out.push_back(*x);
  });
  return out;
}

void for_each_lattice_point(const std::vector<HalfSpace>& halfspaces, std::size_t dim,
                            const std::function<void(const IntVec&)>& visit) {
  const auto verts = polytope_vertices(halfspaces, dim);
  if (verts.empty()) return;
  IntVec lo(dim), hi(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    Rational mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = ceil_of(mn).convert_to<std::int64_t>();
    hi[j] = floor_of(mx).convert_to<std::int64_t>();
    if (lo[j] > hi[j]) return;
  }
  // integer copies of the constraints: a.x >= b with a, b scaled to integers
  std::vector<std::pair<IntVec, std::int64_t>> rows;
  for (const auto& h : halfspaces) {
    BigInt l = denominator(h.offset);
    for (const auto& a : h.normal) l = boost::multiprecision::lcm(l, BigInt(denominator(a)));
    IntVec a(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      a[j] = (numerator(h.normal[j]) * (l / denominator(h.normal[j]))).convert_to<std::int64_t>();
    }
    rows.emplace_back(std::move(a), BigInt(numerator(h.offset) * (l / denominator(h.offset))).convert_to<std::int64_t>());
  }
  IntVec x = lo;
  for (;;) {
    bool ok = true;
    for (const auto& [a, b] : rows) {
      if (lattice::dot(a, x) < b) {
        ok = false;
        break;
      }
    }
    if (ok) visit(x);
    std::size_t j = 0;
    while (j < dim && x[j] == hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == dim) break;
    ++x[j];
  }
}

Rational polytope_volume(const std::vector<HalfSpace>& halfspaces, std::size_t dim) {
  const auto verts = polytope_vertices(halfspaces, dim);
  if (verts.empty() || lattice::affine_dimension(verts) < static_cast<int>(dim)) return 0;
  if (dim == 0) return 1;
  std::vector<std::set<std::size_t>> tight(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v)
    for (std::size_t h = 0; h < halfspaces.size(); ++h)
      if (dot(halfspaces[h].normal, verts[v]) == halfspaces[h].offset) tight[v].insert(h);
  std::vector<std::size_t> all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Rational volume = 0;
  std::vector<RatVec> apex;
  triangulate(verts, tight, all, static_cast<int>(dim), apex, volume, dim);
  return volume;
}

}  // namespace fsig::toric
