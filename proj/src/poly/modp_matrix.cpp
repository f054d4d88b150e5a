#include "fsig/poly/modp_matrix.hpp"

#include "fsig/poly/prime_field.hpp"

#include <algorithm>
#include <limits>

namespace fsig::poly {

ModpMatrix::ModpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

namespace {

std::vector<std::size_t> eliminate(std::vector<std::uint64_t>& data, std::size_t rows, std::size_t cols,
                                   std::uint32_t p, bool reduced) {
  const PrimeField field(p);
  const std::uint64_t step = std::uint64_t{p - 1} * (p - 1);
  // additions a row absorbs before it must be reduced
  const std::uint64_t budget =
      step == 0 ? std::numeric_limits<std::uint64_t>::max() : (std::numeric_limits<std::uint64_t>::max() - p) / step;
  std::vector<std::uint64_t> pending(rows, 0);
  std::vector<std::size_t> pivots;
  auto row_ptr = [&](std::size_t r) { return &data[r * cols]; };
  auto reduce = [&](std::size_t r, std::size_t from) {
    std::uint64_t* row = row_ptr(r);
    for (std::size_t c = from; c < cols; ++c) row[c] %= p;
    pending[r] = 0;
  };

  std::size_t top = 0;
  for (std::size_t col = 0; col < cols && top < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t r = top; r < rows; ++r) {
      if (row_ptr(r)[col] % p != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != top) {
      std::swap_ranges(row_ptr(pivot), row_ptr(pivot) + cols, row_ptr(top));
      std::swap(pending[pivot], pending[top]);
    }
    reduce(top, col);
    std::uint64_t* prow = row_ptr(top);
    const std::uint32_t scale = field.inv(static_cast<std::uint32_t>(prow[col]));
    for (std::size_t c = col; c < cols; ++c) prow[c] = prow[c] * scale % p;

    const std::size_t first = reduced ? 0 : top + 1;
    for (std::size_t r = first; r < rows; ++r) {
      if (r == top) continue;
      std::uint64_t* row = row_ptr(r);
      const std::uint64_t lead = row[col] % p;
      if (lead == 0) {
        row[col] = 0;
        continue;
      }
      if (pending[r] + 1 > budget) reduce(r, col);
      const std::uint64_t factor = p - lead;
      row[col] = 0;
      for (std::size_t c = col + 1; c < cols; ++c) row[c] += factor * prow[c];
      ++pending[r];
    }
    pivots.push_back(col);
    ++top;
  }
  for (std::size_t r = 0; r < rows; ++r) reduce(r, 0);
  return pivots;
}

}  // namespace

std::size_t ModpMatrix::rank() { return eliminate(data_, rows_, cols_, p_, false).size(); }

std::vector<std::size_t> ModpMatrix::rref() { return eliminate(data_, rows_, cols_, p_, true); }

}  // namespace fsig::poly
