#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cgh/chain_complex.hpp"
#include "cgh/graph_complex.hpp"
#include "cgh/numeric.hpp"

namespace cgh {

/// A spanning tree on vertices 1..k, as an edge mask over the complete
/// edge universe.  Validated on construction.
struct Tree {
  int k = 0;
  std::uint64_t edges = 0;

  static Tree from_edges(int k, const std::vector<std::pair<int, int>>& edges);
};

/// A path 1 - v2 - ... - vk: the spanning trees whose classes form a basis
/// of the top homology of the connected-graph complex.
struct LinearTree {
  int k = 0;
  std::vector<int> path;  // starts at 1, a permutation of 1..k

  std::uint64_t edge_mask() const;
};

/// True when the tree is a path with vertex 1 as an endpoint.
bool is_linear_normed(int k, std::uint64_t edges);

/// All (k-1)! paths starting at vertex 1, ordered lexicographically.
std::vector<LinearTree> linear_normed_trees(int k);

/// Which neighbors a rewriting move attaches: the two smallest or the two
/// largest around the branch vertex.  Both choices must reduce any tree to
/// the same chain.
enum class TieBreak { smallest, largest };

/// Result of rewriting a spanning tree into the path basis: an integer
/// combination of linear normed trees, plus a certificate chain one
/// dimension up whose boundary exhibits the difference.
struct TreeChain {
  std::map<std::uint64_t, Int> coefficients;  // linear tree mask -> weight
  std::map<std::uint64_t, Int> certificate;   // (k-edge face) mask -> weight
};

struct ReduceStats {
  int max_depth = 0;      // longest rewrite chain, at most k(k-1)
  Index moves = 0;        // triangle moves performed
};

/// Rewrites the tree as a combination of linear normed trees by repeatedly
/// closing a triangle at vertex 1 (or at the first branch vertex past 1)
/// and replacing the tree by the two other trees in that triangle's
/// boundary.  Deterministic given the tie-break policy; intermediate
/// results are memoized.
TreeChain reduce_tree(const Tree& tree, TieBreak tie_break = TieBreak::smallest,
                      ReduceStats* stats = nullptr);

struct CertificateCheck {
  bool ok = true;
  std::string message;
};

/// Checks over the integers that tree - sum(coefficients) equals the
/// boundary of the certificate inside the connected-graph complex, and that
/// every summand is a linear normed tree.
CertificateCheck verify_certificate(const Tree& tree, const TreeChain& chain);
CertificateCheck verify_certificate(const Tree& tree, const TreeChain& chain,
                                    const ChainComplex& complex);

struct BasisRankReport {
  int k = 0;
  Index tree_count = 0;       // (k-1)!
  bool trees_are_cycles = false;
  Index span_rank = 0;        // rank added by the basis columns
  Index expected_rank = 0;    // top betti number, (k-1)!
  bool ok() const { return trees_are_cycles && span_rank == expected_rank; }
};

/// Confirms that the linear normed trees are cycles spanning the top
/// homology: adjoining their unit columns to the boundary map from one
/// dimension up raises the rank by exactly (k-1)!.
BasisRankReport basis_rank_check(int k, std::int64_t prime = default_prime);

}  // namespace cgh
