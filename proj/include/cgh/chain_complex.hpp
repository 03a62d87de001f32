#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgh/exact_linalg.hpp"
#include "cgh/numeric.hpp"
#include "cgh/sparse_int_matrix.hpp"

namespace cgh {

/// A finite chain complex of free integer modules with a fixed basis per
/// dimension.  boundaries[d] maps dimension d to dimension d-1; index 0 is
/// a placeholder (or the augmentation is applied implicitly, see below).
///
/// Basis elements carry 64-bit labels (bit masks over the generator
/// universe) and generator_names gives the legend for the mask bits, so
/// diagnostics can name the offending face.
///
/// When `augmented` is set, homology is computed relative to the ground
/// ring: an implicit all-ones map in dimension 0 makes the dimension-0
/// result the reduced one.  Quotient complexes keep it unset.
struct ChainComplex {
  std::string name;
  int top_dim = -1;  // -1 encodes the empty complex
  bool augmented = false;
  std::vector<Index> basis_sizes;            // [0 .. top_dim]
  std::vector<SparseIntMatrix> boundaries;   // [0 .. top_dim]
  std::vector<std::vector<std::uint64_t>> basis_labels;  // per dimension
  std::vector<std::string> generator_names;  // legend for label bits

  Index size(int dim) const {
    return dim >= 0 && dim <= top_dim ? basis_sizes[dim] : 0;
  }
  Index total_faces() const;
  std::string face_name(int dim, Index i) const;

  bool operator==(const ChainComplex&) const = default;
};

/// Bumped whenever the generator order or sign convention changes, so
/// cached complexes from older conventions are never reused.
inline constexpr std::uint32_t orientation_convention = 1;

enum class HomologyMode { mod_p, exact };

struct HomologyOptions {
  HomologyMode mode = HomologyMode::mod_p;
  std::int64_t prime = default_prime;
  SmithLimits smith;
};

struct DimensionSummary {
  Index betti = 0;
  std::vector<Int> torsion;  // orders > 1, in divisibility order
};

/// Betti numbers (and torsion, in exact mode) per dimension 0..top_dim.
struct HomologySummary {
  std::vector<DimensionSummary> dims;
  HomologyMode mode = HomologyMode::mod_p;
  std::int64_t prime = 0;  // meaningful in mod_p mode

  bool operator==(const HomologySummary&) const = default;
};

/// Computes homology of the complex.  mod_p mode reduces the boundary
/// matrices modulo a prime from top dimension down, clearing columns known
/// to die; exact mode combines exact ranks with Smith normal forms and also
/// reports torsion.  Throws MalformedComplexError if the complex is
/// structurally broken, std::invalid_argument for a non-prime modulus.
HomologySummary homology(const ChainComplex& complex,
                         const HomologyOptions& options = {});

/// Alternating sum of basis sizes (0 for the empty complex).  Counts the
/// cells as given; the augmentation flag does not change it.
std::int64_t euler_characteristic(const ChainComplex& complex);

/// Checks that the alternating sum equals the one derived from a homology
/// summary (torsion ignored; dimension 0 adjusted when augmented).
bool euler_matches_homology(const ChainComplex& complex,
                            const HomologySummary& summary);

struct BoundaryCheck {
  bool ok = true;
  int dim = -1;             // dimension d where d^2 != 0 was detected
  std::string face;         // name of the offending basis element
  std::string message;
};

/// Verifies shape consistency and that consecutive boundary maps compose
/// to zero, reporting the first failure.
BoundaryCheck verify_boundary_squared(const ChainComplex& complex);

/// JSON object {"<dim>": {"betti": n, "torsion": [..]}, ...} with sorted
/// keys, so equal summaries serialize to identical bytes.
std::string to_json(const HomologySummary& summary);

}  // namespace cgh
