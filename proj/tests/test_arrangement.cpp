#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "cgh/arrangement.hpp"
#include "cgh/errors.hpp"
#include "oracles.hpp"

using cgh::AffinePlane;
using cgh::Flat;
using cgh::GMTable;
using cgh::Index;
using cgh::Rational;
using cgh::RationalMatrix;
using cgh::RationalVector;

namespace {

// a1 x + a2 y = b as a line in the plane.
AffinePlane line2(const Rational& a1, const Rational& a2, const Rational& b) {
  RationalMatrix a(1, 2);
  a(0, 0) = a1;
  a(0, 1) = a2;
  RationalVector rhs(1);
  rhs(0) = b;
  return AffinePlane(a, rhs);
}

AffinePlane plane3(const Rational& a1, const Rational& a2, const Rational& a3,
                   const Rational& b) {
  RationalMatrix a(1, 3);
  a(0, 0) = a1;
  a(0, 1) = a2;
  a(0, 2) = a3;
  RationalVector rhs(1);
  rhs(0) = b;
  return AffinePlane(a, rhs);
}

}  // namespace

TEST_CASE("affine planes canonicalize their constraint systems") {
  // x + y = 1 described three different ways.
  const AffinePlane a = line2(1, 1, 1);
  const AffinePlane b = line2(3, 3, 3);
  RationalMatrix redundant(2, 2);
  redundant << Rational(1), Rational(1), Rational(2), Rational(2);
  RationalVector rhs(2);
  rhs << Rational(1), Rational(2);
  const AffinePlane c(redundant, rhs);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.dim() == 1);
  CHECK(a.codim() == 1);
  CHECK_FALSE(a == line2(1, 1, 2));
}

TEST_CASE("inconsistent or trivial systems are rejected") {
  RationalMatrix a(2, 2);
  a << Rational(1), Rational(1), Rational(1), Rational(1);
  RationalVector rhs(2);
  rhs << Rational(1), Rational(2);
  CHECK_THROWS_AS(AffinePlane(a, rhs), std::invalid_argument);  // 1 = 2

  RationalMatrix zero = RationalMatrix::Zero(1, 2);
  RationalVector zrhs(1);
  zrhs(0) = Rational(0);
  CHECK_THROWS_AS(AffinePlane(zero, zrhs),
                  std::invalid_argument);  // whole space

  RationalMatrix bad(1, 2);
  bad << Rational(1), Rational(0);
  RationalVector badrhs(2);
  badrhs << Rational(1), Rational(1);
  CHECK_THROWS_AS(AffinePlane(bad, badrhs), std::invalid_argument);  // shape
}

TEST_CASE("points are valid planes of dimension zero") {
  RationalMatrix a(2, 2);
  a << Rational(1), Rational(0), Rational(0), Rational(1);
  RationalVector rhs(2);
  rhs << Rational(2), Rational(3);
  const AffinePlane p(a, rhs);
  CHECK(p.dim() == 0);
  CHECK(p.subset_of(line2(1, 0, 2)));
  CHECK(p.subset_of(line2(0, 1, 3)));
  CHECK_FALSE(p.subset_of(line2(0, 1, 4)));
}

TEST_CASE("intersection of planes") {
  const AffinePlane x_axis = line2(0, 1, 0);  // y = 0
  const AffinePlane y_axis = line2(1, 0, 0);  // x = 0
  const auto origin = x_axis.intersect(y_axis);
  REQUIRE(origin.has_value());
  CHECK(origin->dim() == 0);

  // Parallel lines miss each other.
  CHECK_FALSE(line2(1, 1, 0).intersect(line2(1, 1, 5)).has_value());
  // A plane meets itself in itself.
  const auto self = x_axis.intersect(x_axis);
  REQUIRE(self.has_value());
  CHECK(*self == x_axis);
}

TEST_CASE("intersection poset of three concurrent lines") {
  const std::vector<AffinePlane> planes = {line2(1, 0, 0), line2(0, 1, 0),
                                           line2(1, -1, 0)};
  const std::vector<Flat> flats = cgh::intersection_poset(planes);
  REQUIRE(flats.size() == 4);
  CHECK(flats[0].plane.dim() == 1);
  CHECK(flats[1].plane.dim() == 1);
  CHECK(flats[2].plane.dim() == 1);
  CHECK(flats[3].plane.dim() == 0);
  CHECK(flats[3].j_prime == std::vector<int>{1, 2, 3});
  for (int i = 0; i < 3; ++i) CHECK(flats[i].j_prime.size() == 1);
}

TEST_CASE("intersection poset of generic and parallel lines") {
  // Three lines in general position: three points, six flats.
  const std::vector<AffinePlane> generic = {line2(1, 0, 0), line2(0, 1, 0),
                                            line2(1, 1, 1)};
  CHECK(cgh::intersection_poset(generic).size() == 6);

  // Two parallels never meet: just the two lines.
  const std::vector<AffinePlane> parallel = {line2(1, 1, 0), line2(1, 1, 3)};
  CHECK(cgh::intersection_poset(parallel).size() == 2);

  CHECK(cgh::intersection_poset({}).empty());
}

TEST_CASE("a duplicated input plane is one flat with both indices") {
  const std::vector<AffinePlane> planes = {line2(1, 0, 0), line2(2, 0, 0)};
  const std::vector<Flat> flats = cgh::intersection_poset(planes);
  REQUIRE(flats.size() == 1);
  CHECK(flats[0].j_prime == std::vector<int>{1, 2});
}

TEST_CASE("flat complexes drop marginal faces") {
  const std::vector<AffinePlane> planes = {line2(1, 0, 0), line2(0, 1, 0),
                                           line2(1, -1, 0)};
  const std::vector<Flat> flats = cgh::intersection_poset(planes);
  const Flat& point = flats[3];
  const cgh::ChainComplex cx = cgh::flat_complex(point, planes);
  // Single planes cut out lines, not the point: marginal, excluded.
  CHECK(cx.basis_sizes == std::vector<Index>{0, 3, 1});
  const cgh::HomologySummary s = cgh::homology(cx, {});
  CHECK(s.dims[1].betti == 2);
  CHECK(oracle::betti_via_rational(cx) ==
        std::vector<Index>{0, 2, 0});
}

TEST_CASE("assembled Betti numbers of small line arrangements") {
  const std::vector<AffinePlane> concurrent = {line2(1, 0, 0), line2(0, 1, 0),
                                               line2(1, -1, 0)};
  CHECK(cgh::assemble_gm(concurrent).complement_betti ==
        std::vector<Index>{6});

  const std::vector<AffinePlane> generic = {line2(1, 0, 0), line2(0, 1, 0),
                                            line2(1, 1, 1)};
  CHECK(cgh::assemble_gm(generic).complement_betti == std::vector<Index>{7});

  const std::vector<AffinePlane> parallel = {line2(1, 1, 0), line2(1, 1, 3)};
  CHECK(cgh::assemble_gm(parallel).complement_betti == std::vector<Index>{3});

  // A point inside the real line leaves two rays.
  RationalMatrix a(1, 1);
  a(0, 0) = Rational(1);
  RationalVector rhs(1);
  rhs(0) = Rational(0);
  CHECK(cgh::assemble_gm({AffinePlane(a, rhs)}).complement_betti ==
        std::vector<Index>{2});

  CHECK(cgh::assemble_gm({}).complement_betti == std::vector<Index>{1});
}

TEST_CASE("complexified braid arrangements") {
  const std::vector<AffinePlane> b3 = cgh::braid_arrangement(3);
  CHECK(b3.size() == 3);
  for (const AffinePlane& p : b3) {
    CHECK(p.ambient_dim() == 6);
    CHECK(p.codim() == 2);
  }
  CHECK(cgh::assemble_gm(cgh::braid_arrangement(2)).complement_betti ==
        std::vector<Index>{1, 1});
  CHECK(cgh::assemble_gm(b3).complement_betti ==
        std::vector<Index>{1, 3, 2});
  CHECK(cgh::assemble_gm(cgh::braid_arrangement(4)).complement_betti ==
        std::vector<Index>{1, 6, 11, 6});

  CHECK(cgh::intersection_poset(b3).size() == 4);
  CHECK(cgh::intersection_poset(cgh::braid_arrangement(4)).size() == 14);

  CHECK_THROWS_AS(cgh::braid_arrangement(1), std::invalid_argument);
  CHECK_THROWS_AS(cgh::braid_arrangement(6), cgh::ResourceLimitError);
}

TEST_CASE("chamber counts of classic line arrangements") {
  // n generic lines cut the plane into 1 + n + C(n,2) chambers.
  std::vector<AffinePlane> generic;
  const int slopes[4][3] = {{1, 1, 0}, {1, -1, 1}, {1, 2, 2}, {1, 3, 5}};
  for (int n = 1; n <= 4; ++n) {
    generic.clear();
    for (int i = 0; i < n; ++i)
      generic.push_back(
          line2(slopes[i][0], slopes[i][1], slopes[i][2]));
    CHECK(cgh::chamber_count(generic) == 1 + n + n * (n - 1) / 2);
  }

  const std::vector<AffinePlane> concurrent = {line2(1, 0, 0), line2(0, 1, 0),
                                               line2(1, -1, 0)};
  CHECK(cgh::chamber_count(concurrent) == 6);

  const std::vector<AffinePlane> parallel = {line2(1, 1, 0), line2(1, 1, 3)};
  CHECK(cgh::chamber_count(parallel) == 3);

  // Three generic planes in space: 1 + 3 + 3 + 1.
  const std::vector<AffinePlane> walls = {
      plane3(1, 0, 0, 0), plane3(0, 1, 0, 0), plane3(0, 0, 1, 0)};
  CHECK(cgh::chamber_count(walls) == 8);
}

TEST_CASE("chamber counting validates its inputs") {
  const std::vector<AffinePlane> braid = cgh::braid_arrangement(2);
  CHECK_THROWS_AS(cgh::chamber_count(braid),
                  std::invalid_argument);  // codim 2 members
  CHECK_THROWS_AS(cgh::chamber_count({}), std::invalid_argument);
  std::vector<AffinePlane> many;
  for (int i = 1; i <= 9; ++i) many.push_back(line2(1, i, 0));
  CHECK_THROWS_AS(cgh::chamber_count(many), cgh::ResourceLimitError);
}

TEST_CASE("assembled b_0 equals the chamber count on random arrangements") {
  std::mt19937 rng(20250101);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = trial % 2 == 0 ? 2 : 3;
    const int n = 2 + trial % 3;
    std::vector<AffinePlane> planes;
    while (static_cast<int>(planes.size()) < n) {
      RationalMatrix a(1, dim);
      bool all_zero = true;
      for (int j = 0; j < dim; ++j) {
        const int c = coeff(rng);
        a(0, j) = Rational(c);
        all_zero = all_zero && c == 0;
      }
      if (all_zero) continue;
      RationalVector rhs(1);
      rhs(0) = Rational(coeff(rng));
      const AffinePlane candidate(a, rhs);
      bool duplicate = false;
      for (const AffinePlane& p : planes) duplicate |= p == candidate;
      if (!duplicate) planes.push_back(candidate);
    }
    const GMTable table = cgh::assemble_gm(planes);
    CHECK(table.complement_betti[0] == cgh::chamber_count(planes));
  }
}

TEST_CASE("arrangement parsing accepts integers and rational strings") {
  const std::string text = R"({
    "ambient_dim": 2,
    "planes": [
      {"A": [[1, "1/2"]], "b": ["3"]},
      {"A": [["-2/3", 0]], "b": [1]}
    ]
  })";
  const std::vector<AffinePlane> planes = cgh::parse_arrangement(text);
  REQUIRE(planes.size() == 2);
  CHECK(planes[0] == line2(1, Rational(1, 2), 3));
  CHECK(planes[1] == line2(Rational(-2, 3), 0, 1));
}

TEST_CASE("arrangement parsing reports malformed input") {
  CHECK_THROWS_AS(cgh::parse_arrangement("{"), std::invalid_argument);
  CHECK_THROWS_AS(cgh::parse_arrangement("{}"), std::invalid_argument);
  CHECK_THROWS_AS(cgh::parse_arrangement(
                      R"({"ambient_dim": 2, "planes": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      cgh::parse_arrangement(
          R"({"ambient_dim": 2, "planes": [{"A": [[1]], "b": [0]}]})"),
      std::invalid_argument);  // row width != ambient_dim
  CHECK_THROWS_AS(
      cgh::parse_arrangement(
          R"({"ambient_dim": 2, "planes": [{"A": [[1, "1/0"]], "b": [0]}]})"),
      std::invalid_argument);  // zero denominator
  CHECK_THROWS_AS(
      cgh::parse_arrangement(
          R"({"ambient_dim": 2, "planes": [{"A": [[1, 0.5]], "b": [0]}]})"),
      std::invalid_argument);  // floats are not exact
}

TEST_CASE("table serialization shape") {
  const GMTable table = cgh::assemble_gm({line2(1, 0, 0)});
  const std::string json = cgh::to_json(table);
  CHECK(json ==
        R"({"flats":[{"dim":1,"J":[1],"betti":{"0":{"betti":1,"torsion":[]}}}],)"
        R"("complement_betti":[2]})");
}

TEST_CASE("mixed ambient dimensions are rejected") {
  const std::vector<AffinePlane> mixed = {line2(1, 0, 0),
                                          plane3(1, 0, 0, 0)};
  CHECK_THROWS_AS(cgh::intersection_poset(mixed), std::invalid_argument);
  CHECK_THROWS_AS(cgh::assemble_gm(mixed), std::invalid_argument);
}

TEST_CASE("poset limits gate runaway inputs") {
  cgh::ArrangementLimits limits;
  limits.max_planes = 2;
  const std::vector<AffinePlane> three = {line2(1, 0, 0), line2(0, 1, 0),
                                          line2(1, 1, 1)};
  CHECK_THROWS_AS(cgh::intersection_poset(three, limits),
                  cgh::ResourceLimitError);
}
