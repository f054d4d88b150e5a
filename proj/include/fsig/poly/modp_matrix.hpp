#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fsig::poly {

/// Dense row-major matrix over F_p used for rank and reduced echelon
/// computations. Row operations accumulate in 64 bits and are reduced
/// lazily.
class ModpMatrix {
 public:
  ModpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t characteristic() const { return p_; }

  std::uint64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Rank; destroys the contents.
  std::size_t rank();

  /// In-place reduced row echelon form, pivots searched column by column
  /// from the left. Returns the pivot column of each nonzero row.
  std::vector<std::size_t> rref();

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t p_;
  std::vector<std::uint64_t> data_;
};

}  // namespace fsig::poly
