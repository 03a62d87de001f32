#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cgh/chain_complex.hpp"
#include "cgh/numeric.hpp"

namespace cgh::detail {

/// Recipe for a complex whose faces are the bit masks over a generator
/// universe that satisfy `keep`.  For quotient complexes `keep` selects the
/// surviving faces (and must be closed under adding generators); for honest
/// subcomplexes it selects the faces themselves (and must be closed under
/// removing generators, which the builder checks).
struct LayeredSpec {
  std::string name;
  int universe_size = 0;
  std::function<bool(std::uint64_t)> keep;
  bool honest = false;
  int first_layer = 1;  // smallest member count worth enumerating
  Index layer_budget = Index(1) << 22;
  std::vector<std::string> generator_names;
};

/// Enumerates faces layer by layer (ascending mask order within a layer)
/// and assembles the boundary matrices with the alternating-sign convention
/// on ascending generator positions.  Throws ResourceLimitError before any
/// enumeration if some layer would exceed the face budget.
ChainComplex build_layered(LayeredSpec spec);

}  // namespace cgh::detail
