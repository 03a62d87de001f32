#include "cgh/chain_complex.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "cgh/errors.hpp"

namespace cgh {

Index ChainComplex::total_faces() const {
  return std::accumulate(basis_sizes.begin(), basis_sizes.end(), Index(0));
}

std::string ChainComplex::face_name(int dim, Index i) const {
  if (dim < 0 || dim > top_dim ||
      static_cast<std::size_t>(dim) >= basis_labels.size() ||
      static_cast<std::size_t>(i) >= basis_labels[dim].size())
    return "#" + std::to_string(i);
  std::uint64_t mask = basis_labels[dim][static_cast<std::size_t>(i)];
  std::string out = "{";
  bool first = true;
  for (int b = 0; mask; ++b, mask >>= 1) {
    if (!(mask & 1)) continue;
    if (!first) out += ",";
    first = false;
    out += static_cast<std::size_t>(b) < generator_names.size()
               ? generator_names[b]
               : "g" + std::to_string(b);
  }
  return out + "}";
}

namespace {

SparseIntMatrix augmentation_row(Index n0) {
  std::vector<Triplet> ones;
  ones.reserve(static_cast<std::size_t>(n0));
  for (Index j = 0; j < n0; ++j) ones.emplace_back(0, j, Int(1));
  return SparseIntMatrix::from_triplets(1, n0, std::move(ones));
}

// Verifies that boundary @ boundary == 0 for one pair of consecutive maps.
// Columns are accumulated in a dense int64 scratch; if any product might
// not fit (wide entries present), the exact path is used instead.
bool composition_is_zero(const SparseIntMatrix& low, const SparseIntMatrix& high,
                         Index& bad_col) {
  const bool fast = low.all_small() && high.all_small();
  std::vector<std::int64_t> acc(static_cast<std::size_t>(low.rows()), 0);
  std::vector<std::uint32_t> touched;
  std::map<std::uint32_t, Int> wide_acc;

  for (Index j = 0; j < high.cols(); ++j) {
    bool overflow = false;
    touched.clear();
    for (std::size_t e = high.col_begin(j); e != high.col_end(j) && !overflow;
         ++e) {
      if (!fast) break;
      const std::int64_t v = high.entry_value_i64(e);
      const Index c = high.entry_row(e);
      for (std::size_t f = low.col_begin(c); f != low.col_end(c); ++f) {
        std::int64_t prod, sum;
        if (__builtin_mul_overflow(v, low.entry_value_i64(f), &prod) ||
            __builtin_add_overflow(acc[low.entry_row(f)], prod, &sum)) {
          overflow = true;
          break;
        }
        if (acc[low.entry_row(f)] == 0) touched.push_back(low.entry_row(f));
        acc[low.entry_row(f)] = sum;
      }
    }
    if (fast && !overflow) {
      bool zero = true;
      for (std::uint32_t r : touched)
        if (acc[r] != 0) zero = false;
      for (std::uint32_t r : touched) acc[r] = 0;
      if (!zero) {
        bad_col = j;
        return false;
      }
      continue;
    }
    // Exact fallback for this column.
    for (std::uint32_t r : touched) acc[r] = 0;
    wide_acc.clear();
    for (std::size_t e = high.col_begin(j); e != high.col_end(j); ++e) {
      const Int v = high.entry_value(e);
      const Index c = high.entry_row(e);
      for (std::size_t f = low.col_begin(c); f != low.col_end(c); ++f)
        wide_acc[low.entry_row(f)] += v * low.entry_value(f);
    }
    for (const auto& [r, v] : wide_acc) {
      if (v != 0) {
        bad_col = j;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

BoundaryCheck verify_boundary_squared(const ChainComplex& cx) {
  BoundaryCheck out;
  auto fail = [&](int dim, const std::string& msg, Index face = -1) {
    out.ok = false;
    out.dim = dim;
    out.face = face >= 0 ? cx.face_name(dim, face) : "";
    out.message = msg;
    return out;
  };

  if (cx.top_dim < 0) return out;
  const auto n_dims = static_cast<std::size_t>(cx.top_dim) + 1;
  if (cx.basis_sizes.size() != n_dims || cx.boundaries.size() != n_dims)
    return fail(-1, "complex arrays do not cover dimensions 0.." +
                        std::to_string(cx.top_dim));
  for (int d = 1; d <= cx.top_dim; ++d) {
    const SparseIntMatrix& b = cx.boundaries[d];
    if (b.rows() != cx.basis_sizes[d - 1] || b.cols() != cx.basis_sizes[d])
      return fail(d, "boundary " + std::to_string(d) + " is " +
                         std::to_string(b.rows()) + " x " +
                         std::to_string(b.cols()) + ", expected " +
                         std::to_string(cx.basis_sizes[d - 1]) + " x " +
                         std::to_string(cx.basis_sizes[d]));
  }

  if (cx.augmented && cx.top_dim >= 1) {
    // Every 1-face boundary must be augmentation-free: entries sum to zero.
    const SparseIntMatrix& b1 = cx.boundaries[1];
    for (Index j = 0; j < b1.cols(); ++j) {
      Int s = 0;
      for (std::size_t e = b1.col_begin(j); e != b1.col_end(j); ++e)
        s += b1.entry_value(e);
      if (s != 0)
        return fail(1,
                    "augmented complex: boundary of " + cx.face_name(1, j) +
                        " has nonzero coefficient sum");
    }
  }

  for (int d = 1; d + 1 <= cx.top_dim; ++d) {
    Index bad = -1;
    if (!composition_is_zero(cx.boundaries[d], cx.boundaries[d + 1], bad))
      return fail(d + 1, "boundary of boundary is nonzero on the dimension " +
                             std::to_string(d + 1) + " basis element " +
                             cx.face_name(d + 1, bad),
                  bad);
  }
  return out;
}

HomologySummary homology(const ChainComplex& cx, const HomologyOptions& opt) {
  if (opt.mode == HomologyMode::mod_p &&
      (opt.prime < 2 || !is_prime_u64(static_cast<std::uint64_t>(opt.prime))))
    throw std::invalid_argument("homology: modulus " +
                                std::to_string(opt.prime) + " is not prime");
  const BoundaryCheck check = verify_boundary_squared(cx);
  if (!check.ok)
    throw MalformedComplexError("homology(" + cx.name + "): " + check.message);

  HomologySummary out;
  out.mode = opt.mode;
  out.prime = opt.mode == HomologyMode::mod_p ? opt.prime : 0;
  if (cx.top_dim < 0) return out;
  out.dims.resize(static_cast<std::size_t>(cx.top_dim) + 1);

  // ranks[d] = rank of the boundary map leaving dimension d; index 0 holds
  // the augmentation rank (zero for quotient complexes).
  std::vector<Index> ranks(static_cast<std::size_t>(cx.top_dim) + 2, 0);

  if (opt.mode == HomologyMode::mod_p) {
    std::vector<Index> cleared;
    for (int d = cx.top_dim; d >= 1; --d) {
      ModPReduction red =
          column_reduce_mod_p(cx.boundaries[d], opt.prime, cleared);
      ranks[d] = red.rank;
      cleared.assign(red.pivot_rows.begin(), red.pivot_rows.end());
    }
    if (cx.augmented && cx.basis_sizes[0] > 0)
      ranks[0] =
          column_reduce_mod_p(augmentation_row(cx.basis_sizes[0]), opt.prime,
                              cleared)
              .rank;
  } else {
    std::vector<SmithForm> forms(static_cast<std::size_t>(cx.top_dim) + 1);
    for (int d = 1; d <= cx.top_dim; ++d) {
      forms[d] = smith_normal_form(cx.boundaries[d], opt.smith);
      ranks[d] = forms[d].rank();
    }
    if (cx.augmented && cx.basis_sizes[0] > 0)
      ranks[0] = smith_normal_form(augmentation_row(cx.basis_sizes[0]),
                                   opt.smith)
                     .rank();
    for (int d = 0; d < cx.top_dim; ++d) {
      for (const Int& t : forms[d + 1].diagonal)
        if (t > 1) out.dims[d].torsion.push_back(t);
    }
  }

  for (int d = 0; d <= cx.top_dim; ++d)
    out.dims[d].betti = cx.basis_sizes[d] - ranks[d] - ranks[d + 1];
  return out;
}

std::int64_t euler_characteristic(const ChainComplex& cx) {
  std::int64_t chi = 0;
  for (int d = 0; d <= cx.top_dim; ++d)
    chi += (d % 2 == 0 ? 1 : -1) * cx.basis_sizes[d];
  return chi;
}

bool euler_matches_homology(const ChainComplex& cx,
                            const HomologySummary& summary) {
  std::int64_t from_betti = 0;
  for (std::size_t d = 0; d < summary.dims.size(); ++d)
    from_betti += (d % 2 == 0 ? 1 : -1) * summary.dims[d].betti;
  if (cx.augmented && cx.top_dim >= 0 && cx.total_faces() > 0) ++from_betti;
  return euler_characteristic(cx) == from_betti;
}

std::string to_json(const HomologySummary& summary) {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (std::size_t d = 0; d < summary.dims.size(); ++d) {
    nlohmann::ordered_json entry;
    entry["betti"] = summary.dims[d].betti;
    auto torsion = nlohmann::ordered_json::array();
    for (const Int& t : summary.dims[d].torsion) {
      if (t <= Int(std::int64_t(1) << 53))
        torsion.push_back(static_cast<std::int64_t>(t));
      else
        torsion.push_back(t.str());
    }
    entry["torsion"] = std::move(torsion);
    root[std::to_string(d)] = std::move(entry);
  }
  return root.dump();
}

}  // namespace cgh
