#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgh/chain_complex.hpp"
#include "cgh/numeric.hpp"

namespace cgh {

/// An unordered 2-block partition of {1..k}, stored canonically as the
/// block not containing vertex 1 (vertex mask, bit v-1 for vertex v).
struct Bipartition {
  int k = 0;
  std::uint32_t side = 0;  // nonempty subset of {2..k}

  static Bipartition from_block(int k, const std::vector<int>& block);
  std::string name() const;
  /// True when v lies in the canonical (1-free) side.
  bool separates_from_1(int v) const { return side >> (v - 1) & 1; }
};

/// A set partition of {1..k} in canonical form: blocks as vertex masks,
/// ordered by smallest element.
struct SetPartition {
  int k = 0;
  std::vector<std::uint32_t> blocks;

  static SetPartition from_blocks(int k,
                                  const std::vector<std::vector<int>>& blocks);
  int num_blocks() const { return static_cast<int>(blocks.size()); }
  bool is_discrete() const { return num_blocks() == k; }
  bool operator==(const SetPartition&) const = default;
};

/// Generator universe of all 2^(k-1) - 1 bipartitions of {1..k}, listed in
/// lexicographic order of the sorted canonical-side tuples.
struct BipartitionUniverse {
  int k = 0;
  std::vector<std::uint32_t> sides;
  std::vector<std::string> names;

  int size() const { return static_cast<int>(sides.size()); }
  static BipartitionUniverse all(int k);
};

/// Common refinement of the face's bipartitions: vertices are grouped by
/// their separation signature.
SetPartition common_refinement(const BipartitionUniverse& universe,
                               std::uint64_t face);

/// A face (set of bipartitions) is complete when every pair of vertices is
/// separated by some member, i.e. the common refinement is discrete.
bool is_complete(const BipartitionUniverse& universe, std::uint64_t face);
bool is_complete(int k, const std::vector<Bipartition>& face);

struct PartitionLimits {
  int min_k = 3;
  int max_k = 5;
  Index layer_budget = Index(1) << 22;
};

/// Quotient complex of complete bipartition collections on {1..k}.  Its
/// homology agrees with the connected-graph complex on k vertices.
ChainComplex build_C(int k, const PartitionLimits& limits = {});

/// Honest complex of incomplete bipartition collections (the part
/// quotiented away by build_C), with reduced homology.
ChainComplex build_Omega(int k, const PartitionLimits& limits = {});

/// Stirling number of the second kind: partitions of k elements into n
/// nonempty blocks.  Requires 0 <= n <= k.
Int stirling2(int k, int n);

/// Alternating sum over block counts, sum of (-1)^n (n-1)! stirling2(k, n).
/// Equals -1 for k = 1 and vanishes for every k >= 2; it is the reduced
/// Euler characteristic bookkeeping behind the incomplete-collection
/// complexes.
Int euler_identity_sum(int k);

}  // namespace cgh
