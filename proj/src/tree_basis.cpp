#include "cgh/tree_basis.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "cgh/errors.hpp"
#include "cgh/exact_linalg.hpp"

namespace cgh {

namespace {

std::string edge_list_name(const EdgeUniverse& u, std::uint64_t mask) {
  std::string s;
  for (int g = 0; mask; ++g, mask >>= 1)
    if (mask & 1) s += (s.empty() ? "" : ",") + u.names[g];
  return s;
}

std::vector<int> degrees(const EdgeUniverse& u, std::uint64_t edges) {
  std::vector<int> deg(static_cast<std::size_t>(u.k) + 1, 0);
  for (int g = 0; edges; ++g, edges >>= 1) {
    if (!(edges & 1)) continue;
    std::uint32_t vm = u.member_masks[g];
    for (; vm; vm &= vm - 1) ++deg[__builtin_ctz(vm) + 1];
  }
  return deg;
}

std::vector<int> neighbors_of(const EdgeUniverse& u, std::uint64_t edges,
                              int v) {
  std::vector<int> out;
  for (int g = 0; edges; ++g, edges >>= 1) {
    if (!(edges & 1)) continue;
    const std::uint32_t vm = u.member_masks[g];
    if (vm >> (v - 1) & 1)
      out.push_back(__builtin_ctz(vm ^ (1u << (v - 1))) + 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Tree Tree::from_edges(int k, const std::vector<std::pair<int, int>>& edges) {
  if (k < 2) throw std::invalid_argument("Tree: k must be at least 2");
  if (k > 32) throw std::invalid_argument("Tree: k exceeds the mask limit");
  const EdgeUniverse u = EdgeUniverse::complete(k);
  Tree t;
  t.k = k;
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > k || b < 1 || b > k || a == b)
      throw std::invalid_argument("Tree: bad edge " + std::to_string(a) + "-" +
                                  std::to_string(b));
    const int g = u.index_of((1u << (a - 1)) | (1u << (b - 1)));
    const std::uint64_t bit = 1ull << g;
    if (t.edges & bit)
      throw std::invalid_argument("Tree: duplicate edge " + std::to_string(a) +
                                  "-" + std::to_string(b));
    t.edges |= bit;
  }
  if (__builtin_popcountll(t.edges) != k - 1 || !is_connected(u, t.edges))
    throw std::invalid_argument(
        "Tree: edge set is not a spanning tree on 1.." + std::to_string(k));
  return t;
}

std::uint64_t LinearTree::edge_mask() const {
  const EdgeUniverse u = EdgeUniverse::complete(k);
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int a = path[i], b = path[i + 1];
    mask |= 1ull << u.index_of((1u << (a - 1)) | (1u << (b - 1)));
  }
  return mask;
}

bool is_linear_normed(int k, std::uint64_t edges) {
  const EdgeUniverse u = EdgeUniverse::complete(k);
  if (__builtin_popcountll(edges) != k - 1 || !is_connected(u, edges))
    return false;
  const std::vector<int> deg = degrees(u, edges);
  if (deg[1] != 1) return false;
  for (int v = 2; v <= k; ++v)
    if (deg[v] > 2) return false;
  return true;
}

std::vector<LinearTree> linear_normed_trees(int k) {
  if (k < 2) throw std::invalid_argument("linear_normed_trees: k >= 2");
  std::vector<int> tail(static_cast<std::size_t>(k) - 1);
  std::iota(tail.begin(), tail.end(), 2);
  std::vector<LinearTree> out;
  do {
    LinearTree t;
    t.k = k;
    t.path.push_back(1);
    t.path.insert(t.path.end(), tail.begin(), tail.end());
    out.push_back(std::move(t));
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

namespace {

struct Reducer {
  const EdgeUniverse universe;
  const int k;
  const TieBreak tie_break;
  const int depth_bound;
  std::unordered_map<std::uint64_t, TreeChain> memo;
  ReduceStats stats;

  // The triangle move: close the edge between two chosen neighbors, take
  // the quotient boundary of the resulting one-cycle graph, and express the
  // tree through the two other trees appearing there.
  TreeChain reduce(std::uint64_t tree, int depth) {
    stats.max_depth = std::max(stats.max_depth, depth);
    if (is_linear_normed(k, tree)) {
      TreeChain r;
      r.coefficients[tree] = 1;
      return r;
    }
    if (const auto it = memo.find(tree); it != memo.end()) return it->second;
    if (depth >= depth_bound)
      throw MalformedComplexError(
          "reduce_tree: rewrite chain exceeded the bound of " +
          std::to_string(depth_bound) + " moves at " +
          edge_list_name(universe, tree));

    const std::vector<int> deg = degrees(universe, tree);
    int a, b;
    if (deg[1] >= 2) {
      // Straighten at the root: vertex 1 still has branches.
      const std::vector<int> nb = neighbors_of(universe, tree, 1);
      pick_pair(nb, a, b);
    } else {
      // Walk the unique path away from 1 to the first branch vertex.
      int prev = 1;
      int cur = neighbors_of(universe, tree, 1).front();
      while (deg[cur] == 2) {
        const std::vector<int> nb = neighbors_of(universe, tree, cur);
        const int next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      std::vector<int> nb = neighbors_of(universe, tree, cur);
      nb.erase(std::find(nb.begin(), nb.end(), prev));
      pick_pair(nb, a, b);
    }

    const int g = universe.index_of((1u << (a - 1)) | (1u << (b - 1)));
    const std::uint64_t closed = tree | (1ull << g);
    ++stats.moves;

    int tree_sign = 0;
    std::array<std::pair<std::uint64_t, int>, 2> others{};
    int n_others = 0;
    for (const auto& [facet, sign] : connected_facets(universe, closed)) {
      if (facet == tree)
        tree_sign = sign;
      else if (n_others < 2)
        others[n_others++] = {facet, sign};
      else
        throw MalformedComplexError(
            "reduce_tree: triangle boundary has more than three terms at " +
            edge_list_name(universe, closed));
    }
    if (tree_sign == 0 || n_others != 2)
      throw MalformedComplexError(
          "reduce_tree: unexpected triangle boundary at " +
          edge_list_name(universe, closed));

    TreeChain result;
    result.certificate[closed] = tree_sign;
    for (int i = 0; i < n_others; ++i) {
      const auto& [other, sign] = others[i];
      const Int factor = -tree_sign * sign;
      const TreeChain sub = reduce(other, depth + 1);
      for (const auto& [mask, c] : sub.coefficients) {
        Int& slot = result.coefficients[mask];
        slot += factor * c;
        if (slot == 0) result.coefficients.erase(mask);
      }
      for (const auto& [mask, c] : sub.certificate) {
        Int& slot = result.certificate[mask];
        slot += factor * c;
        if (slot == 0) result.certificate.erase(mask);
      }
    }
    memo.emplace(tree, result);
    return result;
  }

  void pick_pair(const std::vector<int>& sorted, int& a, int& b) const {
    if (tie_break == TieBreak::smallest) {
      a = sorted[0];
      b = sorted[1];
    } else {
      a = sorted[sorted.size() - 2];
      b = sorted[sorted.size() - 1];
    }
  }
};

}  // namespace

TreeChain reduce_tree(const Tree& tree, TieBreak tie_break,
                      ReduceStats* stats) {
  Reducer reducer{EdgeUniverse::complete(tree.k), tree.k, tie_break,
                  tree.k * (tree.k - 1)};
  TreeChain result = reducer.reduce(tree.edges, 0);
  if (stats) *stats = reducer.stats;
  return result;
}

CertificateCheck verify_certificate(const Tree& tree, const TreeChain& chain) {
  return verify_certificate(tree, chain, build_K(tree.k));
}

CertificateCheck verify_certificate(const Tree& tree, const TreeChain& chain,
                                    const ChainComplex& cx) {
  CertificateCheck out;
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.message = msg;
    return out;
  };

  const int k = tree.k;
  const int tree_dim = k - 2;
  if (cx.top_dim < tree_dim)
    return fail("verify_certificate: complex has no dimension " +
                std::to_string(tree_dim));

  for (const auto& [mask, c] : chain.coefficients)
    if (!is_linear_normed(k, mask))
      return fail("verify_certificate: summand " +
                  edge_list_name(EdgeUniverse::complete(k), mask) +
                  " is not a linear normed tree");

  const auto index_in_layer = [&](int dim, std::uint64_t mask) -> Index {
    const auto& labels = cx.basis_labels[static_cast<std::size_t>(dim)];
    const auto it = std::lower_bound(labels.begin(), labels.end(), mask);
    if (it == labels.end() || *it != mask) return -1;
    return static_cast<Index>(it - labels.begin());
  };

  // difference = tree - sum of coefficients, as a dense dim-(k-2) vector
  std::vector<Int> difference(
      static_cast<std::size_t>(cx.basis_sizes[tree_dim]));
  const Index tree_row = index_in_layer(tree_dim, tree.edges);
  if (tree_row < 0) return fail("verify_certificate: tree is not a face");
  difference[static_cast<std::size_t>(tree_row)] = 1;
  for (const auto& [mask, c] : chain.coefficients) {
    const Index row = index_in_layer(tree_dim, mask);
    if (row < 0) return fail("verify_certificate: summand is not a face");
    difference[static_cast<std::size_t>(row)] -= c;
  }

  if (!chain.certificate.empty() && cx.top_dim < tree_dim + 1)
    return fail("verify_certificate: certificate lives above the complex");
  if (cx.top_dim >= tree_dim + 1) {
    const SparseIntMatrix& boundary = cx.boundaries[tree_dim + 1];
    for (const auto& [mask, c] : chain.certificate) {
      const Index col = index_in_layer(tree_dim + 1, mask);
      if (col < 0)
        return fail("verify_certificate: certificate face " +
                    edge_list_name(EdgeUniverse::complete(k), mask) +
                    " is not in the complex");
      for (std::size_t e = boundary.col_begin(col); e != boundary.col_end(col);
           ++e)
        difference[boundary.entry_row(e)] -= c * boundary.entry_value(e);
    }
  }

  for (std::size_t r = 0; r < difference.size(); ++r)
    if (difference[r] != 0)
      return fail("verify_certificate: boundary mismatch at " +
                  cx.face_name(tree_dim, static_cast<Index>(r)));
  return out;
}

BasisRankReport basis_rank_check(int k, std::int64_t prime) {
  if (k < 3)
    throw std::invalid_argument("basis_rank_check: k must be at least 3");
  const ChainComplex cx = build_K(k);
  const int d = k - 2;

  BasisRankReport report;
  report.k = k;

  // Spanning trees are relative cycles: the boundary map leaving their
  // dimension has nothing to hit (every smaller subgraph is disconnected).
  report.trees_are_cycles = cx.boundaries[d].nnz() == 0;

  std::vector<LinearTree> basis = linear_normed_trees(k);
  report.tree_count = static_cast<Index>(basis.size());
  Int expected = 1;
  for (int i = 2; i < k; ++i) expected *= i;
  report.expected_rank = static_cast<Index>(expected);

  const auto& labels = cx.basis_labels[static_cast<std::size_t>(d)];
  const SparseIntMatrix& boundary = cx.boundaries[d + 1];
  std::vector<Triplet> entries;
  for (Index c = 0; c < boundary.cols(); ++c)
    for (std::size_t e = boundary.col_begin(c); e != boundary.col_end(c); ++e)
      entries.emplace_back(boundary.entry_row(e), c, boundary.entry_value(e));
  Index col = boundary.cols();
  for (const LinearTree& t : basis) {
    const std::uint64_t mask = t.edge_mask();
    const auto it = std::lower_bound(labels.begin(), labels.end(), mask);
    entries.emplace_back(static_cast<Index>(it - labels.begin()), col++,
                         Int(1));
  }
  const SparseIntMatrix augmented_matrix = SparseIntMatrix::from_triplets(
      cx.basis_sizes[d], col, std::move(entries));
  report.span_rank =
      rank_mod_p(augmented_matrix, prime) - rank_mod_p(boundary, prime);
  return report;
}

}  // namespace cgh
