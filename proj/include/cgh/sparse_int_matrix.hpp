#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cgh/numeric.hpp"

namespace cgh {

/// One explicit entry of a sparse matrix.
struct Triplet {
  Index row = 0;
  Index col = 0;
  Int value;

  Triplet() = default;
  Triplet(Index r, Index c, Int v) : row(r), col(c), value(std::move(v)) {}
};

/// Immutable sparse integer matrix in compressed column form.
///
/// Entries are stored per column, sorted by row, with no explicit zeros and
/// no duplicate positions, so equal matrices have equal representations.
/// Values that fit in a signed 64-bit word live in a flat array; wider
/// values are kept in a side table, so boundary-matrix workloads stay
/// compact while arbitrary-precision entries remain exact.
class SparseIntMatrix {
 public:
  SparseIntMatrix() : SparseIntMatrix(0, 0) {}
  SparseIntMatrix(Index rows, Index cols);

  /// Builds a matrix from an unordered entry list.  Zero values are
  /// dropped; duplicate positions or out-of-range indices are rejected.
  static SparseIntMatrix from_triplets(Index rows, Index cols,
                                       std::vector<Triplet> entries);

  /// Convenience constructor from dense rows, mainly for tests.
  static SparseIntMatrix from_dense(
      const std::vector<std::vector<long long>>& rows);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t nnz() const { return row_.size(); }

  /// Entry cursors for one column: iterate e in [col_begin(c), col_end(c)).
  std::size_t col_begin(Index c) const { return col_ptr_[c]; }
  std::size_t col_end(Index c) const { return col_ptr_[c + 1]; }
  std::size_t col_size(Index c) const { return col_ptr_[c + 1] - col_ptr_[c]; }

  std::uint32_t entry_row(std::size_t e) const { return row_[e]; }

  /// True when the entry fits in int64 and can be read via entry_value_i64.
  bool entry_is_small(std::size_t e) const { return val_[e] != big_marker; }
  std::int64_t entry_value_i64(std::size_t e) const { return val_[e]; }

  /// Exact value of an entry regardless of width.
  Int entry_value(std::size_t e) const;

  /// True when no entry needs more than 64 bits.
  bool all_small() const { return big_.empty(); }

  /// Exact value at (r, c); zero when no entry is stored there.
  Int coeff(Index r, Index c) const;

  SparseIntMatrix transposed() const;

  bool operator==(const SparseIntMatrix& other) const = default;

 private:
  friend class SparseIntMatrixBuilder;

  static constexpr std::int64_t big_marker = INT64_MIN;

  Index rows_;
  Index cols_;
  std::vector<std::size_t> col_ptr_;       // size cols_ + 1
  std::vector<std::uint32_t> row_;         // size nnz
  std::vector<std::int64_t> val_;          // big_marker redirects to big_
  std::map<std::size_t, Int> big_;         // entry index -> wide value
};

/// Streaming builder used by the complex builders, which emit boundary
/// columns in order with rows already sorted.
class SparseIntMatrixBuilder {
 public:
  explicit SparseIntMatrixBuilder(Index rows) : rows_(rows) {}

  /// Appends one column; entries must be sorted by row, in range, distinct.
  void append_column(const std::vector<std::pair<std::uint32_t, std::int64_t>>& entries);

  SparseIntMatrix take();

 private:
  Index rows_;
  SparseIntMatrix out_{0, 0};
};

}  // namespace cgh
