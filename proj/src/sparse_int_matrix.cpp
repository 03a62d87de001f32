#include "cgh/sparse_int_matrix.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace cgh {

namespace {

bool fits_i64(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min() + 1;
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  return v >= lo && v <= hi;
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), col_ptr_(static_cast<std::size_t>(cols) + 1, 0) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("SparseIntMatrix: negative dimension");
  if (rows > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("SparseIntMatrix: row count exceeds 2^32");
}

SparseIntMatrix SparseIntMatrix::from_triplets(Index rows, Index cols,
                                               std::vector<Triplet> entries) {
  SparseIntMatrix m(rows, cols);
  std::erase_if(entries, [](const Triplet& t) { return t.value == 0; });
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("SparseIntMatrix: entry (" +
                                  std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") out of range");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.col != b.col ? a.col < b.col : a.row < b.row;
            });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].row == entries[i - 1].row &&
        entries[i].col == entries[i - 1].col)
      throw std::invalid_argument("SparseIntMatrix: duplicate entry at (" +
                                  std::to_string(entries[i].row) + ", " +
                                  std::to_string(entries[i].col) + ")");
  }
  m.row_.reserve(entries.size());
  m.val_.reserve(entries.size());
  std::size_t next = 0;
  for (Index c = 0; c < cols; ++c) {
    m.col_ptr_[c] = m.row_.size();
    while (next < entries.size() && entries[next].col == c) {
      const Triplet& t = entries[next++];
      m.row_.push_back(static_cast<std::uint32_t>(t.row));
      if (fits_i64(t.value)) {
        m.val_.push_back(static_cast<std::int64_t>(t.value));
      } else {
        m.val_.push_back(big_marker);
        m.big_.emplace(m.row_.size() - 1, t.value);
      }
    }
  }
  m.col_ptr_[cols] = m.row_.size();
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(
    const std::vector<std::vector<long long>>& rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows[0].size());
  std::vector<Triplet> entries;
  for (Index i = 0; i < r; ++i) {
    if (static_cast<Index>(rows[i].size()) != c)
      throw std::invalid_argument("SparseIntMatrix: ragged dense input");
    for (Index j = 0; j < c; ++j)
      if (rows[i][j] != 0) entries.emplace_back(i, j, Int(rows[i][j]));
  }
  return from_triplets(r, c, std::move(entries));
}

Int SparseIntMatrix::entry_value(std::size_t e) const {
  if (val_[e] != big_marker) return Int(val_[e]);
  return big_.at(e);
}

Int SparseIntMatrix::coeff(Index r, Index c) const {
  const auto first = row_.begin() + col_begin(c);
  const auto last = row_.begin() + col_end(c);
  const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(r));
  if (it == last || *it != static_cast<std::uint32_t>(r)) return Int(0);
  return entry_value(static_cast<std::size_t>(it - row_.begin()));
}

SparseIntMatrix SparseIntMatrix::transposed() const {
  std::vector<Triplet> entries;
  entries.reserve(nnz());
  for (Index c = 0; c < cols_; ++c)
    for (std::size_t e = col_begin(c); e != col_end(c); ++e)
      entries.emplace_back(c, Index(entry_row(e)), entry_value(e));
  return from_triplets(cols_, rows_, std::move(entries));
}

void SparseIntMatrixBuilder::append_column(
    const std::vector<std::pair<std::uint32_t, std::int64_t>>& entries) {
  if (out_.cols_ == 0 && out_.row_.empty()) {
    out_ = SparseIntMatrix(rows_, 0);
  }
  std::uint32_t prev = 0;
  bool first = true;
  for (const auto& [r, v] : entries) {
    if (r >= static_cast<std::uint64_t>(rows_))
      throw std::invalid_argument("SparseIntMatrixBuilder: row out of range");
    if (!first && r <= prev)
      throw std::invalid_argument("SparseIntMatrixBuilder: rows not sorted");
    if (v == 0 || v == SparseIntMatrix::big_marker)
      throw std::invalid_argument("SparseIntMatrixBuilder: bad value");
    prev = r;
    first = false;
    out_.row_.push_back(r);
    out_.val_.push_back(v);
  }
  ++out_.cols_;
  out_.col_ptr_.push_back(out_.row_.size());
}

SparseIntMatrix SparseIntMatrixBuilder::take() {
  if (out_.cols_ == 0 && out_.row_.empty()) out_ = SparseIntMatrix(rows_, 0);
  return std::move(out_);
}

}  // namespace cgh
