#include "cgh/graph_complex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cgh/errors.hpp"
#include "layered_builder.hpp"

namespace cgh {

namespace {

std::string vertex_tuple_name(std::uint32_t vertex_mask) {
  std::string s;
  for (int v = 0; vertex_mask; ++v, vertex_mask >>= 1)
    if (vertex_mask & 1) s += std::to_string(v + 1);
  return s;
}

// Union-find over at most 32 vertices, small enough to live on the stack.
struct UnionFind {
  int parent[32];

  explicit UnionFind(int n) { std::iota(parent, parent + n, 0); }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

int minimal_connected_layer(int k, int t) {
  // Each extra member links at most t-1 new vertices to the first t.
  if (k <= 1) return 1;
  return 1 + (k - 1 - (t - 1) + (t - 2)) / (t - 1);
}

}  // namespace

int EdgeUniverse::index_of(std::uint32_t vertex_mask) const {
  for (int i = 0; i < size(); ++i)
    if (member_masks[i] == vertex_mask) return i;
  return -1;
}

EdgeUniverse EdgeUniverse::complete(int k) {
  EdgeUniverse u;
  u.k = k;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      u.member_masks.push_back((1u << (i - 1)) | (1u << (j - 1)));
      u.names.push_back(std::to_string(i) + std::to_string(j));
    }
  return u;
}

EdgeUniverse EdgeUniverse::colored(const std::vector<int>& part_sizes) {
  EdgeUniverse u;
  u.k = std::accumulate(part_sizes.begin(), part_sizes.end(), 0);
  std::vector<int> part_of(static_cast<std::size_t>(u.k) + 1, 0);
  int v = 1;
  for (std::size_t p = 0; p < part_sizes.size(); ++p)
    for (int i = 0; i < part_sizes[p]; ++i) part_of[v++] = static_cast<int>(p);
  for (int i = 1; i <= u.k; ++i)
    for (int j = i + 1; j <= u.k; ++j) {
      if (part_of[i] == part_of[j]) continue;
      u.member_masks.push_back((1u << (i - 1)) | (1u << (j - 1)));
      u.names.push_back(std::to_string(i) + std::to_string(j));
    }
  return u;
}

EdgeUniverse EdgeUniverse::uniform(int k, int t) {
  EdgeUniverse u;
  u.k = k;
  std::vector<int> pick(static_cast<std::size_t>(t));
  std::iota(pick.begin(), pick.end(), 1);
  for (;;) {
    std::uint32_t mask = 0;
    for (int v : pick) mask |= 1u << (v - 1);
    u.member_masks.push_back(mask);
    u.names.push_back(vertex_tuple_name(mask));
    int i = t - 1;
    while (i >= 0 && pick[i] == k - (t - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
  }
  return u;
}

bool is_connected(const EdgeUniverse& universe, std::uint64_t members) {
  if (universe.k <= 0) return false;
  UnionFind uf(universe.k);
  for (int g = 0; members; ++g, members >>= 1) {
    if (!(members & 1)) continue;
    std::uint32_t vm = universe.member_masks[g];
    const int first = __builtin_ctz(vm);
    for (vm &= vm - 1; vm; vm &= vm - 1)
      uf.unite(first, __builtin_ctz(vm));
  }
  const int root = uf.find(0);
  for (int v = 1; v < universe.k; ++v)
    if (uf.find(v) != root) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, int>> connected_facets(
    const EdgeUniverse& universe, std::uint64_t face) {
  std::vector<std::pair<std::uint64_t, int>> out;
  int j = 0;
  for (std::uint64_t rest = face; rest; rest &= rest - 1, ++j) {
    const std::uint64_t bit = rest & (~rest + 1);
    const std::uint64_t facet = face ^ bit;
    if (is_connected(universe, facet))
      out.emplace_back(facet, j % 2 == 0 ? 1 : -1);
  }
  return out;
}

namespace {

ChainComplex build_connected_quotient(EdgeUniverse universe, std::string name,
                                      int first_layer, Index layer_budget) {
  detail::LayeredSpec spec;
  spec.name = std::move(name);
  spec.universe_size = universe.size();
  spec.honest = false;
  spec.first_layer = first_layer;
  spec.layer_budget = layer_budget;
  spec.generator_names = universe.names;
  spec.keep = [u = std::move(universe)](std::uint64_t face) {
    return is_connected(u, face);
  };
  return detail::build_layered(std::move(spec));
}

}  // namespace

ChainComplex build_K(int k, const GraphLimits& limits) {
  if (k < 2) throw std::invalid_argument("build_K: k must be at least 2");
  if (k > limits.max_k)
    throw ResourceLimitError("build_K: k = " + std::to_string(k) +
                             " exceeds the configured maximum of " +
                             std::to_string(limits.max_k));
  return build_connected_quotient(EdgeUniverse::complete(k),
                                  "K(" + std::to_string(k) + ")", k - 1,
                                  limits.layer_budget);
}

ChainComplex build_M(int k, const GraphLimits& limits) {
  if (k < 2) throw std::invalid_argument("build_M: k must be at least 2");
  if (k > limits.max_k_honest)
    throw ResourceLimitError("build_M: k = " + std::to_string(k) +
                             " exceeds the configured maximum of " +
                             std::to_string(limits.max_k_honest));
  EdgeUniverse universe = EdgeUniverse::complete(k);
  detail::LayeredSpec spec;
  spec.name = "M(" + std::to_string(k) + ")";
  spec.universe_size = universe.size();
  spec.honest = true;
  spec.layer_budget = limits.layer_budget;
  spec.generator_names = universe.names;
  spec.keep = [u = std::move(universe)](std::uint64_t face) {
    return !is_connected(u, face);
  };
  return detail::build_layered(std::move(spec));
}

ChainComplex build_colored_K(const std::vector<int>& part_sizes,
                             const GraphLimits& limits) {
  if (part_sizes.empty())
    throw std::invalid_argument("build_colored_K: no parts given");
  for (int s : part_sizes)
    if (s < 1)
      throw std::invalid_argument("build_colored_K: part sizes must be >= 1");
  const int k = std::accumulate(part_sizes.begin(), part_sizes.end(), 0);
  if (k < 2)
    throw std::invalid_argument("build_colored_K: need at least 2 vertices");
  if (k > limits.max_k)
    throw ResourceLimitError("build_colored_K: " + std::to_string(k) +
                             " vertices exceed the configured maximum of " +
                             std::to_string(limits.max_k));
  std::string name = "K(";
  for (std::size_t i = 0; i < part_sizes.size(); ++i)
    name += (i ? "," : "") + std::to_string(part_sizes[i]);
  name += ")";
  return build_connected_quotient(EdgeUniverse::colored(part_sizes),
                                  std::move(name), k - 1,
                                  limits.layer_budget);
}

ChainComplex build_uniform_K(int k, int t, const GraphLimits& limits) {
  if (t < 2 || t > k)
    throw std::invalid_argument("build_uniform_K: need 2 <= t <= k");
  if (k > 32)
    throw ResourceLimitError("build_uniform_K: k = " + std::to_string(k) +
                             " exceeds the 32-vertex mask limit");
  const std::string name =
      "K(" + std::to_string(k) + ";" + std::to_string(t) + ")";
  return build_connected_quotient(EdgeUniverse::uniform(k, t), name,
                                  minimal_connected_layer(k, t),
                                  limits.layer_budget);
}

}  // namespace cgh
