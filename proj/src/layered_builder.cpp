#include "layered_builder.hpp"

#include <algorithm>
#include <stdexcept>

#include "cgh/errors.hpp"

namespace cgh::detail {

namespace {

// C(n, k), saturating well above any usable budget.
Index binomial_capped(int n, int k) {
  constexpr Index cap = Index(1) << 40;
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Index r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap;
  }
  return r;
}

std::uint64_t next_same_popcount(std::uint64_t m) {
  const std::uint64_t c = m & (~m + 1);
  const std::uint64_t r = m + c;
  return (((r ^ m) >> 2) / c) | r;
}

}  // namespace

ChainComplex build_layered(LayeredSpec spec) {
  const int u = spec.universe_size;
  if (u < 0 || u > 63)
    throw ResourceLimitError(spec.name + ": universe of " + std::to_string(u) +
                             " generators exceeds the 63-bit face limit");

  for (int e = spec.first_layer; e <= u; ++e) {
    const Index candidates = binomial_capped(u, e);
    if (candidates > spec.layer_budget)
      throw ResourceLimitError(
          spec.name + ": face budget exceeded, layer of dimension " +
          std::to_string(e - 1) + " has " + std::to_string(candidates) +
          " candidate faces over the budget of " +
          std::to_string(spec.layer_budget));
  }

  ChainComplex cx;
  cx.name = std::move(spec.name);
  cx.augmented = spec.honest;
  cx.generator_names = std::move(spec.generator_names);

  std::vector<std::vector<std::uint64_t>> layers;  // layers[e-1]: kept masks
  layers.reserve(static_cast<std::size_t>(u));
  for (int e = 1; e <= u; ++e) {
    std::vector<std::uint64_t> layer;
    if (e >= spec.first_layer) {
      const std::uint64_t end = 1ull << u;
      for (std::uint64_t m = (1ull << e) - 1; m < end;
           m = next_same_popcount(m)) {
        if (spec.keep(m)) layer.push_back(m);
        if (e == u) break;  // single candidate in the top layer
      }
    }
    layers.push_back(std::move(layer));
  }

  int top = static_cast<int>(layers.size());
  while (top > 0 && layers[top - 1].empty()) --top;
  cx.top_dim = top - 1;
  if (cx.top_dim < 0) return cx;

  cx.basis_sizes.resize(static_cast<std::size_t>(top));
  cx.basis_labels.resize(static_cast<std::size_t>(top));
  cx.boundaries.resize(static_cast<std::size_t>(top));
  for (int d = 0; d < top; ++d) {
    cx.basis_sizes[d] = static_cast<Index>(layers[d].size());
    cx.basis_labels[d] = layers[d];
  }

  cx.boundaries[0] = SparseIntMatrix(0, cx.basis_sizes[0]);
  std::vector<int> bits;
  std::vector<std::pair<std::uint32_t, std::int64_t>> column;
  for (int d = 1; d < top; ++d) {
    const std::vector<std::uint64_t>& below = layers[d - 1];
    SparseIntMatrixBuilder builder(cx.basis_sizes[d - 1]);
    for (std::size_t fi = 0; fi < layers[d].size(); ++fi) {
      const std::uint64_t mask = layers[d][fi];
      bits.clear();
      for (int b = 0; b < u; ++b)
        if (mask >> b & 1) bits.push_back(b);
      column.clear();
      // Removing a higher generator yields a smaller mask, so walking the
      // positions from the top down emits rows in ascending order.
      for (int j = static_cast<int>(bits.size()) - 1; j >= 0; --j) {
        const std::uint64_t facet = mask ^ (1ull << bits[j]);
        const auto it = std::lower_bound(below.begin(), below.end(), facet);
        if (it == below.end() || *it != facet) {
          if (spec.honest)
            throw MalformedComplexError(
                cx.name + ": face set is not closed under subsets at the "
                "dimension " + std::to_string(d) + " face " +
                cx.face_name(d, static_cast<Index>(fi)));
          continue;  // facet was quotiented away
        }
        const std::int64_t sign = j % 2 == 0 ? 1 : -1;
        column.emplace_back(static_cast<std::uint32_t>(it - below.begin()),
                            sign);
      }
      builder.append_column(column);
    }
    cx.boundaries[d] = builder.take();
  }
  return cx;
}

}  // namespace cgh::detail
