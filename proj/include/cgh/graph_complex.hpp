#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cgh/chain_complex.hpp"
#include "cgh/numeric.hpp"

namespace cgh {

/// Generator universe for graph-like complexes on vertices 1..k: one
/// generator per edge (or hyperedge), listed in lexicographic order of the
/// sorted vertex tuples.  Faces are bit masks over the generator indices.
struct EdgeUniverse {
  int k = 0;
  std::vector<std::uint32_t> member_masks;  // vertex mask per generator
  std::vector<std::string> names;

  int size() const { return static_cast<int>(member_masks.size()); }

  /// Index of the generator with the given vertex mask, -1 if absent.
  int index_of(std::uint32_t vertex_mask) const;

  /// All 2-element subsets of {1..k}.
  static EdgeUniverse complete(int k);
  /// Edges joining distinct parts, for parts of the given sizes numbered
  /// consecutively from 1.
  static EdgeUniverse colored(const std::vector<int>& part_sizes);
  /// All t-element subsets of {1..k}.
  static EdgeUniverse uniform(int k, int t);
};

/// A face of the simplex on an edge universe: a set of generators.
struct GraphFace {
  std::uint64_t members = 0;
  int dimension() const { return __builtin_popcountll(members) - 1; }
};

/// True when the members of the face link all k vertices into one piece:
/// any two vertices are joined by a chain whose consecutive elements share
/// a member.  Decided by union-find over the vertices.
bool is_connected(const EdgeUniverse& universe, std::uint64_t members);
inline bool is_connected(const EdgeUniverse& u, const GraphFace& f) {
  return is_connected(u, f.members);
}

/// Facets of `face` (one member dropped) that remain connected, with the
/// alternating boundary sign on ascending member positions.  This is the
/// boundary in the quotient complex built by build_K and friends.
std::vector<std::pair<std::uint64_t, int>> connected_facets(
    const EdgeUniverse& universe, std::uint64_t face);

struct GraphLimits {
  int max_k = 7;          // quotient complexes of connected graphs
  int max_k_honest = 6;   // honest complexes of disconnected graphs
  Index layer_budget = Index(1) << 22;
};

/// Quotient complex of connected graphs on k labeled vertices: faces are
/// the connected spanning subgraphs, the boundary drops edges whose removal
/// keeps the graph connected.  Homology lives in dimension k-2 with rank
/// (k-1)!.  Requires 2 <= k <= limits.max_k.
ChainComplex build_K(int k, const GraphLimits& limits = {});

/// Honest simplicial complex of disconnected graphs on k labeled vertices
/// (the subcomplex quotiented away by build_K), with reduced homology.
/// Requires 2 <= k <= limits.max_k_honest.
ChainComplex build_M(int k, const GraphLimits& limits = {});

/// Connected-graph quotient complex on the complete multipartite edge set:
/// only edges joining distinct parts are available.
ChainComplex build_colored_K(const std::vector<int>& part_sizes,
                             const GraphLimits& limits = {});

/// Connected-hypergraph quotient complex whose members are all t-element
/// subsets of {1..k}; t = 2 recovers build_K.
ChainComplex build_uniform_K(int k, int t, const GraphLimits& limits = {});

}  // namespace cgh
