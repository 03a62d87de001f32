#include "cgh/exact_linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "cgh/errors.hpp"

namespace cgh {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set decides primality for every n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Modular column reduction.
//
// Columns are processed left to right.  The working column lives in a
// max-heap of entries packed as (row << 32 | value); popping drains all
// entries of the top row and combines them mod p.  When the surviving low
// row already owns a pivot, the stored pivot column (normalized to pivot
// coefficient 1) is scaled in; otherwise the column is recorded as a new
// pivot.  Columns passed in `cleared` are skipped entirely: a column whose
// index is a pivot row one dimension up reduces to zero, so skipping it
// changes neither the rank nor the pivot rows.
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t row_of = ~0ull << 32;

struct WorkingColumn {
  std::vector<std::uint64_t> heap;
  std::int64_t p;

  void push(std::uint32_t row, std::uint64_t value) {
    heap.push_back((static_cast<std::uint64_t>(row) << 32) | value);
    std::push_heap(heap.begin(), heap.end());
  }

  // Pops the lowest surviving entry; returns false when the column is zero.
  bool pop_low(std::uint32_t& row, std::uint64_t& value) {
    while (!heap.empty()) {
      const std::uint64_t top_row = heap.front() & row_of;
      std::uint64_t acc = 0;
      while (!heap.empty() && (heap.front() & row_of) == top_row) {
        acc += heap.front() & ~row_of;
        if (acc >= static_cast<std::uint64_t>(p)) acc -= p;
        std::pop_heap(heap.begin(), heap.end());
        heap.pop_back();
      }
      if (acc != 0) {
        row = static_cast<std::uint32_t>(top_row >> 32);
        value = acc;
        return true;
      }
    }
    return false;
  }

  // Drains the heap into a column sorted ascending by row.
  std::vector<std::uint64_t> drain() {
    std::vector<std::uint64_t> out;
    std::uint32_t r;
    std::uint64_t v;
    while (pop_low(r, v))
      out.push_back((static_cast<std::uint64_t>(r) << 32) | v);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace

ModPReduction column_reduce_mod_p(const SparseIntMatrix& m, std::int64_t p,
                                  const std::vector<Index>& cleared) {
  if (p < 2 || p > (std::int64_t(1) << 31))
    throw std::invalid_argument("column_reduce_mod_p: p out of range");
  ModPReduction result;
  if (m.rows() == 0 || m.cols() == 0) return result;

  std::vector<std::int32_t> pivot_of_row(static_cast<std::size_t>(m.rows()), -1);
  std::vector<std::vector<std::uint64_t>> stored;
  WorkingColumn work;
  work.p = p;

  auto cleared_it = cleared.begin();
  for (Index c = 0; c < m.cols(); ++c) {
    while (cleared_it != cleared.end() && *cleared_it < c) ++cleared_it;
    if (cleared_it != cleared.end() && *cleared_it == c) continue;

    work.heap.clear();
    for (std::size_t e = m.col_begin(c); e != m.col_end(c); ++e) {
      std::int64_t v;
      if (m.entry_is_small(e)) {
        v = m.entry_value_i64(e) % p;
      } else {
        v = static_cast<std::int64_t>(m.entry_value(e) % p);
      }
      if (v < 0) v += p;
      if (v != 0) work.push(m.entry_row(e), static_cast<std::uint64_t>(v));
    }

    std::uint32_t low;
    std::uint64_t value;
    while (work.pop_low(low, value)) {
      const std::int32_t owner = pivot_of_row[low];
      if (owner < 0) {
        // New pivot: normalize so the low coefficient is 1 and store.
        const std::uint64_t inv =
            powmod_u64(value, static_cast<std::uint64_t>(p - 2),
                       static_cast<std::uint64_t>(p));
        std::vector<std::uint64_t> col = work.drain();
        for (std::uint64_t& packed : col) {
          const std::uint64_t v = mulmod_u64(packed & ~row_of, inv,
                                             static_cast<std::uint64_t>(p));
          packed = (packed & row_of) | v;
        }
        col.push_back((static_cast<std::uint64_t>(low) << 32) | 1);
        pivot_of_row[low] = static_cast<std::int32_t>(stored.size());
        stored.push_back(std::move(col));
        ++result.rank;
        result.pivot_rows.push_back(low);
        break;
      }
      // Cancel against the stored column: add (p - value) times it.
      const std::uint64_t lambda = static_cast<std::uint64_t>(p) - value;
      const std::vector<std::uint64_t>& pc = stored[owner];
      for (std::size_t i = 0; i + 1 < pc.size(); ++i) {
        const std::uint64_t v = mulmod_u64(pc[i] & ~row_of, lambda,
                                           static_cast<std::uint64_t>(p));
        if (v != 0)
          work.heap.push_back((pc[i] & row_of) | v);
      }
      std::make_heap(work.heap.begin(), work.heap.end());
    }
  }
  std::sort(result.pivot_rows.begin(), result.pivot_rows.end());
  return result;
}

Index rank_mod_p(const SparseIntMatrix& m, std::int64_t p) {
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("rank_mod_p: modulus " + std::to_string(p) +
                                " is not prime");
  if (p > (std::int64_t(1) << 31))
    throw std::invalid_argument("rank_mod_p: modulus exceeds 2^31");
  return column_reduce_mod_p(m, p).rank;
}

// ---------------------------------------------------------------------------
// Exact rank by fraction-free row elimination.
//
// Rows are kept as sorted sparse vectors of exact integers.  Each round
// picks the smallest-magnitude nonzero entry as pivot (ties by column, then
// row, i.e. column-major position), eliminates its column from the other
// rows with cross-multiplied integer updates, and divides each updated row
// by the gcd of its entries to keep growth in check.  Per-row minimum
// summaries make pivot selection linear in the number of live rows.
// ---------------------------------------------------------------------------

namespace {

struct ExactRow {
  std::vector<std::pair<std::uint32_t, Int>> entries;  // sorted by column
  Int min_abs;          // smallest |value|, valid when !entries.empty()
  std::uint32_t min_col = 0;

  void refresh_summary() {
    min_abs = 0;
    for (const auto& [c, v] : entries) {
      Int a = abs(v);
      if (min_abs == 0 || a < min_abs || (a == min_abs && c < min_col)) {
        min_abs = std::move(a);
        min_col = c;
      }
    }
  }

  const Int* find(std::uint32_t col) const {
    auto it = std::lower_bound(
        entries.begin(), entries.end(), col,
        [](const auto& e, std::uint32_t c) { return e.first < c; });
    if (it == entries.end() || it->first != col) return nullptr;
    return &it->second;
  }
};

void content_normalize(ExactRow& row) {
  Int g = 0;
  for (const auto& [c, v] : row.entries) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, v] : row.entries) v /= g;
}

}  // namespace

Index rank_exact(const SparseIntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;

  std::vector<ExactRow> rows(static_cast<std::size_t>(m.rows()));
  std::vector<std::vector<std::uint32_t>> col_rows(
      static_cast<std::size_t>(m.cols()));
  for (Index c = 0; c < m.cols(); ++c)
    for (std::size_t e = m.col_begin(c); e != m.col_end(c); ++e)
      rows[m.entry_row(e)].entries.emplace_back(
          static_cast<std::uint32_t>(c), m.entry_value(e));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    content_normalize(rows[r]);
    rows[r].refresh_summary();
    for (const auto& [c, v] : rows[r].entries)
      col_rows[c].push_back(static_cast<std::uint32_t>(r));
  }

  std::vector<char> active(rows.size(), 1);
  Index rank = 0;

  for (;;) {
    // Pivot: globally smallest magnitude, ties by (column, row).
    std::uint32_t pr = 0;
    bool found = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r] || rows[r].entries.empty()) continue;
      if (!found || rows[r].min_abs < rows[pr].min_abs ||
          (rows[r].min_abs == rows[pr].min_abs &&
           rows[r].min_col < rows[pr].min_col)) {
        pr = static_cast<std::uint32_t>(r);
        found = true;
      }
    }
    if (!found) break;
    const std::uint32_t pc = rows[pr].min_col;
    const Int pv = *rows[pr].find(pc);

    std::vector<std::uint32_t> targets;
    targets.swap(col_rows[pc]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    for (std::uint32_t r : targets) {
      if (r == pr || !active[r]) continue;
      const Int* a = rows[r].find(pc);
      if (!a) continue;  // stale index entry
      const Int g = gcd(pv, *a);
      const Int alpha = pv / g;
      const Int beta = *a / g;

      std::vector<std::pair<std::uint32_t, Int>> merged;
      merged.reserve(rows[r].entries.size() + rows[pr].entries.size());
      auto it1 = rows[r].entries.begin(), end1 = rows[r].entries.end();
      auto it2 = rows[pr].entries.begin(), end2 = rows[pr].entries.end();
      while (it1 != end1 || it2 != end2) {
        if (it2 == end2 || (it1 != end1 && it1->first < it2->first)) {
          merged.emplace_back(it1->first, alpha * it1->second);
          ++it1;
        } else if (it1 == end1 || it2->first < it1->first) {
          Int v = -beta * it2->second;
          if (v != 0) {
            merged.emplace_back(it2->first, std::move(v));
            col_rows[it2->first].push_back(r);
          }
          ++it2;
        } else {
          Int v = alpha * it1->second - beta * it2->second;
          if (v != 0) merged.emplace_back(it1->first, std::move(v));
          ++it1;
          ++it2;
        }
      }
      rows[r].entries = std::move(merged);
      content_normalize(rows[r]);
      rows[r].refresh_summary();
    }

    active[pr] = 0;
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Smith normal form.
//
// Standard sparse diagonalization: pick the smallest-magnitude entry, shrink
// it by nearest-quotient row and column updates until it divides everything
// in its row and column, enforce global divisibility by folding in any
// non-divisible row, then retire the pivot.  Retirement order yields the
// divisibility chain directly.
// ---------------------------------------------------------------------------

namespace {

struct SnfState {
  std::vector<std::map<std::uint32_t, Int>> rows;
  std::vector<std::set<std::uint32_t>> cols;  // column -> rows with entries
  std::vector<char> row_active;
  std::vector<char> col_active;

  void set_entry(std::uint32_t r, std::uint32_t c, Int v) {
    if (v == 0) {
      rows[r].erase(c);
      cols[c].erase(r);
    } else {
      rows[r][c] = std::move(v);
      cols[c].insert(r);
    }
  }

  // rows[r] -= q * rows[src]
  void row_update(std::uint32_t r, const Int& q, std::uint32_t src) {
    for (const auto& [c, w] : rows[src]) {
      Int v = (rows[r].count(c) ? rows[r][c] : Int(0)) - q * w;
      set_entry(r, c, std::move(v));
    }
  }

  // col[c] -= q * col[src]; touches every row with an entry in src.
  void col_update(std::uint32_t c, const Int& q, std::uint32_t src) {
    std::vector<std::uint32_t> holders(cols[src].begin(), cols[src].end());
    for (std::uint32_t r : holders) {
      Int v = (rows[r].count(c) ? rows[r][c] : Int(0)) - q * rows[r][src];
      set_entry(r, c, std::move(v));
    }
  }
};

Int nearest_quotient(const Int& a, const Int& v) {
  Int q = a / v;
  Int r = a - q * v;
  if (abs(r) * 2 > abs(v)) q += ((r > 0) == (v > 0)) ? 1 : -1;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const SparseIntMatrix& m,
                            const SmithLimits& limits) {
  if (m.rows() > limits.max_rows || m.cols() > limits.max_cols)
    throw ResourceLimitError(
        "smith_normal_form: matrix " + std::to_string(m.rows()) + " x " +
        std::to_string(m.cols()) + " exceeds the configured gate of " +
        std::to_string(limits.max_rows) + " x " +
        std::to_string(limits.max_cols));

  SnfState st;
  st.rows.resize(static_cast<std::size_t>(m.rows()));
  st.cols.resize(static_cast<std::size_t>(m.cols()));
  st.row_active.assign(st.rows.size(), 1);
  st.col_active.assign(st.cols.size(), 1);
  for (Index c = 0; c < m.cols(); ++c)
    for (std::size_t e = m.col_begin(c); e != m.col_end(c); ++e)
      st.set_entry(m.entry_row(e), static_cast<std::uint32_t>(c),
                   m.entry_value(e));

  SmithForm out;
  for (;;) {
    // Smallest-magnitude pivot, ties by column-major position.
    bool found = false;
    std::uint32_t pr = 0, pc = 0;
    Int best;
    for (std::uint32_t r = 0; r < st.rows.size(); ++r) {
      if (!st.row_active[r]) continue;
      for (const auto& [c, v] : st.rows[r]) {
        Int a = abs(v);
        if (!found || a < best ||
            (a == best && (c < pc || (c == pc && r < pr)))) {
          best = std::move(a);
          pr = r;
          pc = c;
          found = true;
        }
      }
    }
    if (!found) break;

    for (bool settled = false; !settled;) {
      settled = true;
      // Shrink the pivot column.
      std::vector<std::uint32_t> holders(st.cols[pc].begin(),
                                         st.cols[pc].end());
      for (std::uint32_t r : holders) {
        if (r == pr) continue;
        const Int v = st.rows[pr].at(pc);
        const Int a = st.rows[r].at(pc);
        const Int q = nearest_quotient(a, v);
        if (q != 0) st.row_update(r, q, pr);
        if (st.rows[r].count(pc)) {
          pr = r;  // strictly smaller remainder takes over as pivot
          settled = false;
          break;
        }
      }
      if (!settled) continue;
      // Column is clean; shrink the pivot row (only row pr is affected).
      std::vector<std::uint32_t> row_cols;
      for (const auto& [c, w] : st.rows[pr])
        if (c != pc) row_cols.push_back(c);
      for (std::uint32_t c : row_cols) {
        const Int v = st.rows[pr].at(pc);
        const Int w = st.rows[pr].at(c);
        const Int q = nearest_quotient(w, v);
        if (q != 0) st.col_update(c, q, pc);
        if (st.rows[pr].count(c)) {
          pc = c;
          settled = false;
          break;
        }
      }
      if (!settled) continue;
      // Pivot divides the rest, or a non-divisible row gets folded in.
      const Int v = st.rows[pr].at(pc);
      for (std::uint32_t r = 0; r < st.rows.size() && settled; ++r) {
        if (!st.row_active[r] || r == pr) continue;
        for (const auto& [c, w] : st.rows[r]) {
          if (w % v != 0) {
            st.row_update(pr, Int(-1), r);
            settled = false;
            break;
          }
        }
      }
    }

    Int v = st.rows[pr].at(pc);
    out.diagonal.push_back(abs(v));
    st.row_active[pr] = 0;
    st.col_active[pc] = 0;
    st.rows[pr].clear();
    st.cols[pc].clear();
  }
  return out;
}

}  // namespace cgh
