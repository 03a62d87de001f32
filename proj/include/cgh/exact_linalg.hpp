#pragma once

#include <cstdint>
#include <vector>

#include "cgh/numeric.hpp"
#include "cgh/sparse_int_matrix.hpp"

namespace cgh {

/// Deterministic primality test for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// Result of a modular column reduction: the rank contributed by the
/// reduced columns and the set of pivot rows they landed on.
struct ModPReduction {
  Index rank = 0;
  std::vector<std::uint32_t> pivot_rows;  // sorted ascending
};

/// Left-to-right column reduction of m modulo p.  Columns listed in
/// `cleared` (sorted ascending) are skipped; they are known to reduce to
/// zero.  p must be prime; this is the caller's responsibility here.
ModPReduction column_reduce_mod_p(const SparseIntMatrix& m, std::int64_t p,
                                  const std::vector<Index>& cleared = {});

/// Rank of m over GF(p).  Throws std::invalid_argument unless p is prime.
Index rank_mod_p(const SparseIntMatrix& m, std::int64_t p = default_prime);

/// Rank of m over the rationals, by fraction-free sparse elimination with
/// smallest-magnitude pivoting (ties broken by column-major position).
Index rank_exact(const SparseIntMatrix& m);

/// Diagonal of the Smith normal form: nonnegative, each entry dividing the
/// next, as many entries as the rank of the matrix.
struct SmithForm {
  std::vector<Int> diagonal;
  Index rank() const { return static_cast<Index>(diagonal.size()); }
};

struct SmithLimits {
  Index max_rows = 5000;
  Index max_cols = 5000;
};

/// Smith normal form over the integers.  Matrices larger than the limits
/// are rejected with ResourceLimitError naming the gate.
SmithForm smith_normal_form(const SparseIntMatrix& m,
                            const SmithLimits& limits = {});

}  // namespace cgh
