#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "cgh/chain_complex.hpp"
#include "cgh/errors.hpp"
#include "cgh/graph_complex.hpp"
#include "oracles.hpp"

using cgh::ChainComplex;
using cgh::EdgeUniverse;
using cgh::HomologyMode;
using cgh::HomologyOptions;
using cgh::HomologySummary;
using cgh::Index;

namespace {

HomologyOptions exact_mode() {
  HomologyOptions opt;
  opt.mode = HomologyMode::exact;
  return opt;
}

std::vector<Index> betti_of(const HomologySummary& s) {
  std::vector<Index> out;
  for (const auto& d : s.dims) out.push_back(d.betti);
  return out;
}

// The unique dimension carrying homology, or -1 if none / several.
int support_dim(const HomologySummary& s) {
  int dim = -1;
  for (std::size_t d = 0; d < s.dims.size(); ++d)
    if (s.dims[d].betti != 0) {
      if (dim != -1) return -2;
      dim = static_cast<int>(d);
    }
  return dim;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("edge universe of the complete graph") {
  const EdgeUniverse u = EdgeUniverse::complete(4);
  CHECK(u.k == 4);
  CHECK(u.size() == 6);
  CHECK(u.names == std::vector<std::string>{"12", "13", "14", "23", "24",
                                            "34"});
  CHECK(u.member_masks[0] == 0b0011);
  CHECK(u.member_masks[5] == 0b1100);
  CHECK(u.index_of(0b0101) == 1);  // edge 13
}

TEST_CASE("uniform universes list t-subsets in lexicographic order") {
  const EdgeUniverse u = EdgeUniverse::uniform(4, 3);
  CHECK(u.size() == 4);
  CHECK(u.names == std::vector<std::string>{"123", "124", "134", "234"});
  CHECK(EdgeUniverse::uniform(5, 2).names == EdgeUniverse::complete(5).names);
}

TEST_CASE("colored universes keep only edges across parts") {
  const EdgeUniverse u = EdgeUniverse::colored({2, 1});
  CHECK(u.k == 3);
  CHECK(u.names == std::vector<std::string>{"13", "23"});

  const EdgeUniverse v = EdgeUniverse::colored({2, 2});
  CHECK(v.names == std::vector<std::string>{"13", "14", "23", "24"});

  CHECK(EdgeUniverse::colored({1, 1, 1}).size() == 3);
}

TEST_CASE("is_connected agrees with breadth-first search on every subset") {
  for (int k = 3; k <= 5; ++k) {
    const EdgeUniverse u = EdgeUniverse::complete(k);
    for (std::uint64_t face = 0; face < (1ull << u.size()); ++face)
      CHECK(cgh::is_connected(u, face) == oracle::connected_mask(u, face));
  }
  const EdgeUniverse u53 = EdgeUniverse::uniform(5, 3);
  for (std::uint64_t face = 0; face < (1ull << u53.size()); ++face)
    CHECK(cgh::is_connected(u53, face) == oracle::connected_mask(u53, face));
}

TEST_CASE("face counts of the connected-graph complexes") {
  CHECK(cgh::build_K(2).basis_sizes == std::vector<Index>{1});
  CHECK(cgh::build_K(3).basis_sizes == std::vector<Index>{0, 3, 1});
  CHECK(cgh::build_K(4).basis_sizes ==
        std::vector<Index>{0, 0, 16, 15, 6, 1});
  CHECK(cgh::build_K(5).basis_sizes ==
        std::vector<Index>{0, 0, 0, 125, 222, 205, 120, 45, 10, 1});

  // Totals double-checked by brute-force enumeration.
  for (int k = 3; k <= 5; ++k) {
    const EdgeUniverse u = EdgeUniverse::complete(k);
    Index count = 0;
    for (std::uint64_t face = 1; face < (1ull << u.size()); ++face)
      if (oracle::connected_mask(u, face)) ++count;
    CHECK(cgh::build_K(k).total_faces() == count);
  }
  CHECK(cgh::build_K(6).total_faces() == 26704);
}

TEST_CASE("connected-graph homology is one free group in dimension k-2") {
  for (int k = 3; k <= 5; ++k) {
    const ChainComplex cx = cgh::build_K(k);
    const HomologySummary s = cgh::homology(cx, exact_mode());
    CHECK(support_dim(s) == k - 2);
    CHECK(s.dims[k - 2].betti == factorial(k - 1));
    for (const auto& d : s.dims) CHECK(d.torsion.empty());
    CHECK(cgh::euler_matches_homology(cx, s));
    CHECK(betti_of(s) == oracle::betti_via_rational(cx));
  }
  // k = 6 with modular coefficients.
  const HomologySummary s6 = cgh::homology(cgh::build_K(6), {});
  CHECK(support_dim(s6) == 4);
  CHECK(s6.dims[4].betti == 120);
}

TEST_CASE("boundary columns drop one member with alternating signs") {
  const EdgeUniverse u = EdgeUniverse::complete(4);
  const ChainComplex cx = cgh::build_K(4);
  for (int d = 1; d <= cx.top_dim; ++d) {
    const cgh::SparseIntMatrix& b = cx.boundaries[d];
    for (Index c = 0; c < b.cols(); ++c) {
      const std::uint64_t face = cx.basis_labels[d][c];
      const auto facets = cgh::connected_facets(u, face);
      CHECK(static_cast<std::size_t>(b.col_size(c)) == facets.size());
      for (const auto& [facet, sign] : facets) {
        // Find the facet's row and compare the sign.
        Index row = -1;
        for (Index r = 0; r < cx.basis_sizes[d - 1]; ++r)
          if (cx.basis_labels[d - 1][r] == facet) row = r;
        REQUIRE(row >= 0);
        CHECK(b.coeff(row, c) == sign);
      }
    }
  }
}

TEST_CASE("disconnected-graph complexes are honest and reduced") {
  const ChainComplex m2 = cgh::build_M(2);
  CHECK(m2.top_dim == -1);
  CHECK(cgh::homology(m2, exact_mode()).dims.empty());

  const ChainComplex m3 = cgh::build_M(3);
  CHECK(m3.augmented);
  CHECK(m3.basis_sizes == std::vector<Index>{3});
  CHECK(betti_of(cgh::homology(m3, exact_mode())) == std::vector<Index>{2});

  const ChainComplex m4 = cgh::build_M(4);
  CHECK(m4.basis_sizes == std::vector<Index>{6, 15, 4});
  const HomologySummary s4 = cgh::homology(m4, exact_mode());
  CHECK(betti_of(s4) == std::vector<Index>{0, 6, 0});
  CHECK(betti_of(s4) == oracle::betti_via_rational(m4));
  CHECK(cgh::euler_matches_homology(m4, s4));
}

TEST_CASE("reduced homology of M_k is that of K_k shifted down one") {
  for (int k = 3; k <= 6; ++k) {
    const HomologyOptions opt =
        k <= 5 ? exact_mode() : HomologyOptions{};
    const std::vector<Index> km = betti_of(cgh::homology(cgh::build_K(k), opt));
    const std::vector<Index> mm =
        betti_of(cgh::homology(cgh::build_M(k), opt));
    for (std::size_t i = 0; i < km.size(); ++i) {
      const Index shifted =
          (i >= 1 && i - 1 < mm.size()) ? mm[i - 1] : 0;
      CHECK(km[i] == shifted);
    }
    for (std::size_t i = km.size() + 1; i - 1 < mm.size(); ++i)
      CHECK(mm[i - 1] == 0);
  }
}

TEST_CASE("colored complexes concentrate in dimension k-2") {
  const std::vector<std::vector<int>> cases = {
      {2, 1}, {1, 1, 1}, {2, 2}, {2, 1, 1}, {2, 2, 1}, {3, 2}};
  const std::vector<Index> expected_rank = {1, 2, 3, 4, 14, 7};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const ChainComplex cx = cgh::build_colored_K(cases[i]);
    int k = 0;
    for (int s : cases[i]) k += s;
    const HomologySummary s = cgh::homology(cx, {});
    CHECK(support_dim(s) == k - 2);
    CHECK(s.dims[k - 2].betti == expected_rank[i]);
    // Internal consistency: the rank is forced by the Euler characteristic.
    Index chi_rank = cgh::euler_characteristic(cx);
    if (chi_rank < 0) chi_rank = -chi_rank;
    CHECK(s.dims[k - 2].betti == chi_rank);
  }
}

TEST_CASE("colored complexes match dense rational ranks on small sizes") {
  for (const std::vector<int>& sizes :
       {std::vector<int>{2, 1}, {1, 1, 1}, {2, 2}, {2, 1, 1}}) {
    const ChainComplex cx = cgh::build_colored_K(sizes);
    CHECK(betti_of(cgh::homology(cx, exact_mode())) ==
          oracle::betti_via_rational(cx));
  }
}

TEST_CASE("a single color class admits no connected graph") {
  const ChainComplex cx = cgh::build_colored_K({3});
  CHECK(cx.top_dim == -1);
  CHECK(cgh::homology(cx, {}).dims.empty());
}

TEST_CASE("uniform complexes with t = 2 coincide with the graph complexes") {
  for (int k = 3; k <= 5; ++k)
    CHECK(cgh::build_uniform_K(k, 2).boundaries ==
          cgh::build_K(k).boundaries);
}

TEST_CASE("uniform complexes: pinned homology") {
  // A single t-set covering everything is the whole complex.
  const HomologySummary s33 = cgh::homology(cgh::build_uniform_K(3, 3), {});
  CHECK(betti_of(s33) == std::vector<Index>{1});

  CHECK(betti_of(cgh::homology(cgh::build_uniform_K(4, 3), exact_mode())) ==
        std::vector<Index>{0, 3, 0, 0});
  CHECK(betti_of(cgh::homology(cgh::build_uniform_K(4, 4), exact_mode())) ==
        std::vector<Index>{1});
  CHECK(betti_of(cgh::homology(cgh::build_uniform_K(5, 4), exact_mode())) ==
        std::vector<Index>{0, 4, 0, 0, 0});
  CHECK(betti_of(cgh::homology(cgh::build_uniform_K(5, 5), exact_mode())) ==
        std::vector<Index>{1});

  const HomologySummary s53 = cgh::homology(cgh::build_uniform_K(5, 3), {});
  CHECK(betti_of(s53) ==
        std::vector<Index>{0, 0, 6, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("uniform homology vanishes above dimension k-t+1") {
  for (const auto& [k, t] : std::vector<std::pair<int, int>>{
           {4, 3}, {5, 3}, {5, 4}, {6, 4}, {6, 5}, {6, 6}}) {
    const HomologySummary s = cgh::homology(cgh::build_uniform_K(k, t), {});
    for (std::size_t d = 0; d < s.dims.size(); ++d)
      if (static_cast<int>(d) > k - t + 1) CHECK(s.dims[d].betti == 0);
  }
}

TEST_CASE("uniform complexes agree with brute-force Betti numbers") {
  for (const auto& [k, t] :
       std::vector<std::pair<int, int>>{{4, 3}, {5, 4}, {5, 3}}) {
    const ChainComplex cx = cgh::build_uniform_K(k, t);
    CHECK(betti_of(cgh::homology(cx, {})) == oracle::betti_via_rational(cx));
  }
}

TEST_CASE("every built complex passes the boundary check") {
  CHECK(cgh::verify_boundary_squared(cgh::build_K(5)).ok);
  CHECK(cgh::verify_boundary_squared(cgh::build_M(5)).ok);
  CHECK(cgh::verify_boundary_squared(cgh::build_colored_K({2, 2, 1})).ok);
  CHECK(cgh::verify_boundary_squared(cgh::build_uniform_K(5, 3)).ok);
  CHECK(cgh::verify_boundary_squared(cgh::build_uniform_K(6, 4)).ok);
}

TEST_CASE("parameter gates") {
  CHECK_THROWS_AS(cgh::build_K(1), std::invalid_argument);
  CHECK_THROWS_AS(cgh::build_K(8), cgh::ResourceLimitError);
  CHECK_THROWS_AS(cgh::build_M(7), cgh::ResourceLimitError);
  CHECK_THROWS_AS(cgh::build_M(1), std::invalid_argument);
  CHECK_THROWS_AS(cgh::build_colored_K({}), std::invalid_argument);
  CHECK_THROWS_AS(cgh::build_colored_K({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(cgh::build_colored_K({4, 4}), cgh::ResourceLimitError);
  CHECK_THROWS_AS(cgh::build_uniform_K(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(cgh::build_uniform_K(4, 5), std::invalid_argument);

  cgh::GraphLimits tight;
  tight.layer_budget = 10;
  CHECK_THROWS_AS(cgh::build_K(5, tight), cgh::ResourceLimitError);
}

TEST_CASE("face names carry the edge labels") {
  const ChainComplex cx = cgh::build_K(3);
  CHECK(cx.name == "K(3)");
  CHECK(cx.face_name(1, 0) == "{12,13}");
  CHECK(cx.face_name(2, 0) == "{12,13,23}");
  CHECK(cgh::build_uniform_K(4, 3).name == "K(4;3)");
  CHECK(cgh::build_colored_K({2, 2, 1}).name == "K(2,2,1)");
}
