#include "cgh/partition_complex.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cgh/errors.hpp"
#include "layered_builder.hpp"

namespace cgh {

namespace {

void check_k(const char* who, int k, const PartitionLimits& limits) {
  if (k < limits.min_k)
    throw std::invalid_argument(std::string(who) + ": k = " +
                                std::to_string(k) + " is below the minimum " +
                                std::to_string(limits.min_k));
  if (k > limits.max_k)
    throw ResourceLimitError(std::string(who) + ": k = " + std::to_string(k) +
                             " exceeds the configured maximum of " +
                             std::to_string(limits.max_k));
}

std::string side_name(int k, std::uint32_t side) {
  std::string s;
  for (int v = 1; v <= k; ++v)
    if (side >> (v - 1) & 1) s += std::to_string(v);
  s += "|";
  for (int v = 1; v <= k; ++v)
    if (!(side >> (v - 1) & 1)) s += std::to_string(v);
  return s;
}

}  // namespace

Bipartition Bipartition::from_block(int k, const std::vector<int>& block) {
  if (k < 2) throw std::invalid_argument("Bipartition: k must be at least 2");
  std::uint32_t mask = 0;
  for (int v : block) {
    if (v < 1 || v > k)
      throw std::invalid_argument("Bipartition: vertex " + std::to_string(v) +
                                  " out of range");
    mask |= 1u << (v - 1);
  }
  const std::uint32_t full = (k == 32 ? ~0u : (1u << k) - 1);
  if (mask == 0 || mask == full)
    throw std::invalid_argument("Bipartition: blocks must be proper");
  if (mask & 1u) mask = full & ~mask;  // canonical side avoids vertex 1
  Bipartition b;
  b.k = k;
  b.side = mask;
  return b;
}

std::string Bipartition::name() const { return side_name(k, side); }

SetPartition SetPartition::from_blocks(
    int k, const std::vector<std::vector<int>>& blocks) {
  SetPartition p;
  p.k = k;
  std::uint32_t seen = 0;
  for (const auto& block : blocks) {
    if (block.empty())
      throw std::invalid_argument("SetPartition: empty block");
    std::uint32_t mask = 0;
    for (int v : block) {
      if (v < 1 || v > k)
        throw std::invalid_argument("SetPartition: vertex " +
                                    std::to_string(v) + " out of range");
      mask |= 1u << (v - 1);
    }
    if (mask & seen)
      throw std::invalid_argument("SetPartition: blocks overlap");
    seen |= mask;
    p.blocks.push_back(mask);
  }
  const std::uint32_t full = (k == 32 ? ~0u : (1u << k) - 1);
  if (seen != full)
    throw std::invalid_argument("SetPartition: blocks do not cover {1..k}");
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](std::uint32_t a, std::uint32_t b) {
              return __builtin_ctz(a) < __builtin_ctz(b);
            });
  return p;
}

BipartitionUniverse BipartitionUniverse::all(int k) {
  BipartitionUniverse u;
  u.k = k;
  // Canonical sides are the nonempty subsets of {2..k}; order them by the
  // lexicographic order of their sorted element tuples.
  std::vector<std::vector<int>> tuples;
  for (std::uint32_t side = 2; side < (1u << k); side += 2) {
    std::vector<int> t;
    for (int v = 2; v <= k; ++v)
      if (side >> (v - 1) & 1) t.push_back(v);
    tuples.push_back(std::move(t));
  }
  std::sort(tuples.begin(), tuples.end());
  for (const auto& t : tuples) {
    std::uint32_t side = 0;
    for (int v : t) side |= 1u << (v - 1);
    u.sides.push_back(side);
    u.names.push_back(side_name(k, side));
  }
  return u;
}

SetPartition common_refinement(const BipartitionUniverse& universe,
                               std::uint64_t face) {
  std::map<std::uint64_t, std::uint32_t> classes;  // signature -> vertex mask
  for (int v = 1; v <= universe.k; ++v) {
    std::uint64_t sig = 0;
    std::uint64_t rest = face;
    for (int g = 0; rest; ++g, rest >>= 1) {
      if (!(rest & 1)) continue;
      if (universe.sides[g] >> (v - 1) & 1) sig |= 1ull << g;
    }
    classes[sig] |= 1u << (v - 1);
  }
  SetPartition p;
  p.k = universe.k;
  for (const auto& [sig, mask] : classes) p.blocks.push_back(mask);
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](std::uint32_t a, std::uint32_t b) {
              return __builtin_ctz(a) < __builtin_ctz(b);
            });
  return p;
}

bool is_complete(const BipartitionUniverse& universe, std::uint64_t face) {
  // Separation signatures must be pairwise distinct.
  std::uint64_t sigs[32];
  for (int v = 0; v < universe.k; ++v) sigs[v] = 0;
  std::uint64_t rest = face;
  for (int g = 0; rest; ++g, rest >>= 1) {
    if (!(rest & 1)) continue;
    std::uint32_t side = universe.sides[g];
    for (int v = 0; side; ++v, side >>= 1)
      if (side & 1) sigs[v] |= 1ull << g;
  }
  for (int a = 0; a < universe.k; ++a)
    for (int b = a + 1; b < universe.k; ++b)
      if (sigs[a] == sigs[b]) return false;
  return true;
}

bool is_complete(int k, const std::vector<Bipartition>& face) {
  if (face.empty())
    throw std::invalid_argument("is_complete: empty collection");
  BipartitionUniverse u = BipartitionUniverse::all(k);
  std::uint64_t mask = 0;
  for (const Bipartition& b : face) {
    if (b.k != k)
      throw std::invalid_argument("is_complete: mixed vertex counts");
    const auto it = std::find(u.sides.begin(), u.sides.end(), b.side);
    if (it == u.sides.end())
      throw std::invalid_argument("is_complete: bipartition out of universe");
    mask |= 1ull << (it - u.sides.begin());
  }
  return is_complete(u, mask);
}

namespace {

ChainComplex build_partition_complex(int k, bool complete_side,
                                     const PartitionLimits& limits) {
  BipartitionUniverse universe = BipartitionUniverse::all(k);
  detail::LayeredSpec spec;
  spec.name = (complete_side ? "C(" : "Omega(") + std::to_string(k) + ")";
  spec.universe_size = universe.size();
  spec.honest = !complete_side;
  spec.layer_budget = limits.layer_budget;
  spec.generator_names = universe.names;
  // ceil(log2(k)) bipartitions are needed before signatures can separate.
  if (complete_side) {
    int min_layer = 0;
    while ((1 << min_layer) < k) ++min_layer;
    spec.first_layer = std::max(1, min_layer);
  }
  spec.keep = [u = std::move(universe), complete_side](std::uint64_t face) {
    return is_complete(u, face) == complete_side;
  };
  return detail::build_layered(std::move(spec));
}

}  // namespace

ChainComplex build_C(int k, const PartitionLimits& limits) {
  check_k("build_C", k, limits);
  return build_partition_complex(k, true, limits);
}

ChainComplex build_Omega(int k, const PartitionLimits& limits) {
  check_k("build_Omega", k, limits);
  return build_partition_complex(k, false, limits);
}

Int stirling2(int k, int n) {
  if (k < 0 || n < 0 || n > k)
    throw std::invalid_argument("stirling2: need 0 <= n <= k");
  // S(k, n) = n S(k-1, n) + S(k-1, n-1), one rolling row.
  std::vector<Int> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;  // S(0, 0)
  for (int i = 1; i <= k; ++i) {
    for (int j = std::min(i, n); j >= 1; --j)
      row[j] = Int(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[n];
}

Int euler_identity_sum(int k) {
  if (k < 1) throw std::invalid_argument("euler_identity_sum: k must be >= 1");
  Int sum = 0;
  Int factorial = 1;  // (n-1)! running value
  for (int n = 1; n <= k; ++n) {
    if (n > 1) factorial *= n - 1;
    const Int term = factorial * stirling2(k, n);
    sum += (n % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace cgh
