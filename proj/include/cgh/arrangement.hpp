#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgh/chain_complex.hpp"
#include "cgh/numeric.hpp"

namespace cgh {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// In-place reduced row echelon form over the rationals; returns the rank.
Index rref_in_place(RationalMatrix& m);

/// A nonempty affine subspace of R^n, stored canonically as the reduced row
/// echelon form of its constraint system [A | b], so two descriptions of
/// the same subspace compare equal.
class AffinePlane {
 public:
  /// From constraints A x = b.  Throws std::invalid_argument when the
  /// system is inconsistent or shapes disagree.
  AffinePlane(const RationalMatrix& a, const RationalVector& b);

  int ambient_dim() const { return ambient_; }
  int dim() const { return ambient_ - codim(); }
  int codim() const { return static_cast<int>(system_.rows()); }

  /// Canonical constraint system [A | b], full row rank, RREF.
  const RationalMatrix& system() const { return system_; }

  /// True when this plane lies inside (or equals) the other.
  bool subset_of(const AffinePlane& other) const;

  /// Intersection, or nothing when the planes miss each other.
  std::optional<AffinePlane> intersect(const AffinePlane& other) const;

  bool operator==(const AffinePlane& other) const;
  /// Total order (ambient, codim, entry-lexicographic) for canonical sorting.
  bool operator<(const AffinePlane& other) const;

 private:
  struct raw_tag {};
  AffinePlane(int ambient, RationalMatrix canonical, raw_tag);

  int ambient_;
  RationalMatrix system_;
};

/// A member of the intersection semilattice: the subspace together with the
/// 1-based indices of every input plane containing it.
struct Flat {
  AffinePlane plane;
  std::vector<int> j_prime;
};

struct ArrangementLimits {
  int max_planes = 24;
  Index max_flats = 20000;
  Index layer_budget = Index(1) << 22;
};

/// All distinct intersections of subfamilies of the input planes (the
/// ambient space itself excluded), sorted by descending dimension and then
/// canonically.  Input planes must share one ambient dimension.
std::vector<Flat> intersection_poset(const std::vector<AffinePlane>& planes,
                                     const ArrangementLimits& limits = {});

/// Quotient complex on the planes through this flat: a set of planes
/// survives exactly when it cuts out the flat itself and not something
/// larger.  Its homology feeds the complement decomposition.
ChainComplex flat_complex(const Flat& flat,
                          const std::vector<AffinePlane>& planes,
                          const ArrangementLimits& limits = {});

struct FlatEntry {
  Flat flat;
  HomologySummary homology;
};

/// The decomposition table: per-flat homology and the Betti numbers of the
/// complement of the union of the planes.
struct GMTable {
  int ambient_dim = 0;
  std::vector<FlatEntry> flats;
  std::vector<Index> complement_betti;  // unreduced, trailing zeros trimmed
};

GMTable assemble_gm(const std::vector<AffinePlane>& planes,
                    const HomologyOptions& options = {},
                    const ArrangementLimits& limits = {});

struct BraidLimits {
  int max_k = 5;
};

/// Complexified braid arrangement on k coordinates, realized over the
/// reals: R^k with complex coordinate x_i becomes R^(2k) with coordinates
/// (2i-1, 2i), and each x_i = x_j contributes its two real equations.
/// Planes are listed in lexicographic (i, j) order.
std::vector<AffinePlane> braid_arrangement(int k,
                                           const BraidLimits& limits = {});

struct ChamberLimits {
  int max_dim = 4;
  int max_planes = 8;
};

/// Number of connected components of the complement of a real hyperplane
/// arrangement, counted by exact feasibility of all sign patterns.  Every
/// plane must have codimension 1.
Index chamber_count(const std::vector<AffinePlane>& planes,
                    const ChamberLimits& limits = {});

/// Parses {"ambient_dim": n, "planes": [{"A": [[..]], "b": [..]}]} with
/// entries given as integers or "p/q" strings.  Throws
/// std::invalid_argument with the offending location.
std::vector<AffinePlane> parse_arrangement(const std::string& text);

/// JSON for the table: {"flats": [{"dim", "J", "betti"}...],
/// "complement_betti": [...]}, deterministic bytes.
std::string to_json(const GMTable& table);

}  // namespace cgh
