#include "helpers.hpp"
#include "oracles/oracles.hpp"

#include "cubex/errors.hpp"
#include "cubex/families.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace cubex;
using testing::family;

TEST_CASE("family sizes") {
  SUBCASE("grid:3x2") {
    const auto g = family("grid:3x2");
    CHECK(g.vertex_count() == 6);
    CHECK(std::set<std::string>(g.hyperplane_names().begin(), g.hyperplane_names().end()) ==
          std::set<std::string>{"H0", "K0", "K1"});
    CHECK(g.vertex_name(g.base()) == "(0,0)");
    CHECK(g.ambient_dimension() == 2);
  }
  SUBCASE("grid:4x4") { CHECK(family("grid:4x4").vertex_count() == 16); }
  SUBCASE("star") {
    for (std::size_t m = 1; m <= 9; ++m) {
      const auto s = build_family(FamilySpec::star(m));
      CHECK(s.vertex_count() == m + 1);
      CHECK(s.hyperplane_count() == m);
      CHECK(s.ambient_dimension() == 1);
    }
  }
  SUBCASE("cube") {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto c = build_family(FamilySpec::cube(n));
      CHECK(c.vertex_count() == (std::size_t{1} << n));
      CHECK(c.ambient_dimension() == n);
    }
  }
  SUBCASE("tree") {
    // valence v, depth d: 1 + v + v(v-1) + ... vertices, one hyperplane per edge
    const auto t = family("tree:3,3");
    CHECK(t.vertex_count() == 1 + 3 + 6 + 12);
    CHECK(t.hyperplane_count() == t.vertex_count() - 1);
    CHECK(t.ambient_dimension() == 1);
  }
  SUBCASE("path") {
    const auto p = family("path:5");
    CHECK(p.vertex_count() == 5);
    CHECK(p.hyperplane_count() == 4);
    CHECK(p.ambient_dimension() == 1);
  }
}

TEST_CASE("product(edge,edge) is the square") {
  const auto p = family("product(edge,edge)");
  CHECK(p.vertex_count() == 4);
  CHECK(p.hyperplane_count() == 2);
  CHECK(p.ambient_dimension() == 2);
  CHECK(validate_complex(p).ok());
  const oracle::GraphMetric g(p);
  for (std::size_t v = 0; v < 4; ++v) {
    CHECK(g.neighbours(v).size() == 2);
  }
}

TEST_CASE("products are valid and dimensions add") {
  for (const char* spec : {"product(path:3,star:4)", "product(grid:2x3,edge)", "product(tree:3,2,cube:2)"}) {
    INFO(spec);
    const auto p = family(spec);
    CHECK(validate_complex(p).ok());
    const auto parsed = FamilySpec::parse(spec);
    CHECK(p.ambient_dimension() == build_family(parsed.factors[0]).ambient_dimension() +
                                       build_family(parsed.factors[1]).ambient_dimension());
    CHECK(p.vertex_count() ==
          build_family(parsed.factors[0]).vertex_count() * build_family(parsed.factors[1]).vertex_count());
  }
}

TEST_CASE("spec parsing") {
  CHECK(FamilySpec::parse("grid:3x2").to_string() == "grid:3x2");
  CHECK(FamilySpec::parse("product(edge,tree:3,2)").to_string() == "product(edge,tree:3,2)");
  for (const char* bad : {"grid:0x2", "star:0", "tree:1,2", "path:0", "blob", "grid:3", "product(edge)",
                          "cube:2x", "grid:100000x100000"}) {
    INFO(bad);
    CHECK_THROWS_AS(FamilySpec::parse(bad), InputError);
  }
}

TEST_CASE("grid ideal points") {
  const auto spec = FamilySpec::grid(4, 4);
  const auto c = build_family(spec);
  const auto pts = ideal_points(spec);
  const auto it = std::find_if(pts.begin(), pts.end(), [](const IdealPointSpec& p) { return p.label == "(+inf,+inf)"; });
  REQUIRE(it != pts.end());
  // Every H_n and K_n with n >= 0 points away from the base; those with
  // n < 0 (only H-1, K-1 outside the truncation) point towards it.
  for (std::size_t h = 0; h < c.hyperplane_count(); ++h) {
    CHECK(it->restriction[HyperplaneId(h)] == Sign::Minus);
  }
  std::map<std::string, Sign> boundary(it->boundary.begin(), it->boundary.end());
  CHECK(boundary.at("H-1") == Sign::Plus);
  CHECK(boundary.at("K-1") == Sign::Plus);
  CHECK(boundary.at("H3") == Sign::Minus);
  CHECK(boundary.at("K3") == Sign::Minus);
  CHECK(is_admissible(c, it->restriction));

  // Four corners and a line point at each of W+H positions on each side.
  CHECK(pts.size() == 4 + 2 * 4 + 2 * 4);
  for (const auto& p : pts) {
    INFO(p.label);
    CHECK(is_admissible(c, p.restriction));
  }
  // North line above column p orients every H away from the base and K as (p, .).
  const auto north = std::find_if(pts.begin(), pts.end(), [](const IdealPointSpec& p) { return p.label == "(2,+inf)"; });
  REQUIRE(north != pts.end());
  CHECK(north->restriction[c.hyperplane("H0")] == Sign::Minus);
  CHECK(north->restriction[c.hyperplane("H2")] == Sign::Minus);
  CHECK(north->restriction[c.hyperplane("K1")] == Sign::Minus);
  CHECK(north->restriction[c.hyperplane("K2")] == Sign::Plus);
}

TEST_CASE("star has no ideal points; unsupported kinds are not annotated") {
  CHECK(ideal_points(FamilySpec::star(6)).empty());
  CHECK_THROWS_WITH_AS(ideal_points(FamilySpec::cube(2)), doctest::Contains("not annotated"), InputError);
}

TEST_CASE("star annotation: the center has infinitely many adjacent hyperplanes") {
  const auto spec = FamilySpec::star(5);
  const auto c = build_family(spec);
  const auto ann = annotate_family(spec);
  CHECK(ann.vertex_infinite(c.vertex("center")));
  CHECK_FALSE(ann.vertex_infinite(c.vertex("l1")));
  CHECK(ann.shared_infinite(c.vertex("center"), c.vertex("center")));
  CHECK_FALSE(ann.shared_infinite(c.vertex("center"), c.vertex("l2")));
  CHECK_FALSE(ann.locally_finite());
  CHECK(annotate_family(FamilySpec::grid(3, 3)).locally_finite());
}

TEST_CASE("median closure") {
  SUBCASE("two antipodal corners: one hyperplane survives") {
    SignVector a(2), b(2);
    b.flip(HyperplaneId(0));
    b.flip(HyperplaneId(1));
    const auto c = median_closure({a, b});
    CHECK(c.vertex_count() == 2);
    CHECK(c.hyperplane_count() == 1);
    CHECK(validate_complex(c).ok());
  }
  SUBCASE("single vector") {
    const auto c = median_closure({SignVector(3)});
    CHECK(c.vertex_count() == 1);
    CHECK(c.hyperplane_count() == 0);
  }
  SUBCASE("three corners of a square are already closed") {
    SignVector a(2), b(2), d(2);
    b.flip(HyperplaneId(0));
    d.flip(HyperplaneId(1));
    CHECK(median_closure({a, b, d}).vertex_count() == 3);
  }
  SUBCASE("three neighbours of a cube corner pull in the corner") {
    SignVector a(3), b(3), d(3);
    a.flip(HyperplaneId(1));
    a.flip(HyperplaneId(2));
    b.flip(HyperplaneId(0));
    b.flip(HyperplaneId(2));
    d.flip(HyperplaneId(0));
    d.flip(HyperplaneId(1));
    const auto c = median_closure({a, b, d});
    CHECK(c.vertex_count() == 4);
    CHECK(validate_complex(c).ok());
  }
  SUBCASE("capacity") { CHECK_THROWS_AS(median_closure({SignVector(1), SignVector(1).flipped(HyperplaneId(0))}, {}, 1), CapacityError); }
}

TEST_CASE("property: median closure is the fixed point of adding majorities") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t nh = 1 + rng() % 6;
    std::set<SignVector> set;
    const std::size_t seeds = 1 + rng() % 5;
    for (std::size_t i = 0; i < seeds; ++i) {
      SignVector v(nh);
      for (std::size_t h = 0; h < nh; ++h) {
        if (rng() & 1U) v.flip(HyperplaneId(h));
      }
      set.insert(v);
    }
    const std::vector<SignVector> input(set.begin(), set.end());
    for (bool grew = true; grew;) {
      grew = false;
      const std::vector<SignVector> cur(set.begin(), set.end());
      for (const auto& x : cur) {
        for (const auto& y : cur) {
          for (const auto& z : cur) {
            grew = set.insert(majority(x, y, z)).second || grew;
          }
        }
      }
    }
    CHECK(median_closure(input).vertex_count() == set.size());
  }
}

TEST_CASE("standard symmetries") {
  CHECK(standard_symmetries(FamilySpec::edge()).size() == 1);
  CHECK(standard_symmetries(FamilySpec::cube(3)).size() == 3);
  CHECK(standard_symmetries(FamilySpec::grid(3, 3)).size() == 3);
  CHECK(standard_symmetries(FamilySpec::grid(3, 2)).size() == 2);
  for (const char* spec : {"edge", "path:4", "cube:2", "cube:3", "grid:3x3", "grid:4x2", "star:5"}) {
    INFO(spec);
    const auto fs = FamilySpec::parse(spec);
    const auto c = build_family(fs);
    for (const auto& p : standard_symmetries(fs)) {
      CHECK(induced_automorphism(c, p.images).has_value());
    }
  }
  CHECK_THROWS_AS(standard_symmetries(FamilySpec::tree(3, 2)), InputError);
}
