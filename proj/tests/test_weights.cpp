#include "helpers.hpp"
#include "oracles/oracles.hpp"

#include "cubex/errors.hpp"
#include "cubex/weights.hpp"

#include <doctest.h>

#include <random>

using namespace cubex;
using testing::family;

TEST_CASE("binomial convention") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
  for (long m = 0; m < 40; ++m) {
    for (long k = -2; k <= m + 2; ++k) {
      CHECK(binomial(m, k) == oracle::pascal(m, k));
    }
  }
}

TEST_CASE("rationals") {
  CHECK(to_string(parse_rational("6/8")) == "3/4");
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK(to_string(parse_rational("-3")) == "-3");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}

TEST_CASE("deficiency sets") {
  const auto g = family("grid:3x2");
  const auto x = g.signs(g.vertex("(0,0)"));
  const auto z = g.signs(g.vertex("(2,1)"));
  const auto d = deficiency_set(g, x, z, g.vertex("(0,1)"));
  REQUIRE(d.set.size() == 1);
  CHECK(g.hyperplane_name(d.set[0]) == "K0");
  CHECK(d.deficiency == 1);

  const auto full = deficiency_set(g, x, x, g.vertex("(0,0)"));
  CHECK(full.set.empty());
  CHECK(full.deficiency == 2);

  const auto e = family("edge");
  const auto de = deficiency_set(e, e.signs(e.vertex("x")), e.signs(e.vertex("y")), e.vertex("x"));
  CHECK(de.set.size() == 1);
  CHECK(de.deficiency == 0);

  CHECK_THROWS_AS(deficiency_set(g, x, g.signs(g.vertex("(1,0)")), g.vertex("(0,1)")), DomainError);
  const auto squeezed = g.with_ambient_dimension(1);
  CHECK_THROWS_AS(deficiency_set(squeezed, squeezed.signs(squeezed.vertex("(0,0)")),
                                 squeezed.signs(squeezed.vertex("(1,1)")), squeezed.vertex("(0,0)")),
                  DimensionError);
}

TEST_CASE("grid worked table") {
  const auto g = family("grid:3x2");
  const auto w = weight_vector(g, 2, g.vertex("(0,0)"), g.signs(g.vertex("(2,1)")));
  const oracle::GraphMetric m(g);
  const std::size_t x = g.vertex("(0,0)").index(), z = g.vertex("(2,1)").index();
  const std::vector<std::pair<const char*, int>> table{{"(0,0)", 1}, {"(1,0)", 1}, {"(0,1)", 2},
                                                       {"(1,1)", 1}, {"(2,0)", 1}, {"(2,1)", 0}};
  for (const auto& [name, value] : table) {
    INFO(name);
    CHECK(w(g.vertex(name)) == value);
    CHECK(oracle::weight(m, 2, 2, x, z, g.vertex(name).index()) == value);
  }
  CHECK(w.mass() == 6);
}

TEST_CASE("weight vectors: z = x is a point mass") {
  const auto g = family("grid:3x3");
  for (std::size_t n = 0; n < 5; ++n) {
    const auto w = weight_vector(g, n, g.vertex("(1,1)"), g.signs(g.vertex("(1,1)")));
    CHECK(w.values.size() == 1);
    const auto norm = w.normalized();
    CHECK(norm(g.vertex("(1,1)")) == 1);
  }
}

TEST_CASE("property: weights agree with the graph-metric oracle") {
  std::mt19937_64 rng(31);
  std::vector<CubeComplex> cs;
  for (const auto& name : testing::listed_families()) {
    cs.push_back(family(name));
  }
  for (int i = 0; i < 15; ++i) {
    cs.push_back(testing::random_complex(rng, 6, 5));
  }
  for (const auto& c : cs) {
    const oracle::GraphMetric m(c);
    const std::size_t big_n = c.ambient_dimension();
    const std::size_t nv = c.vertex_count();
    for (int sample = 0; sample < 40; ++sample) {
      const std::size_t x = rng() % nv, z = rng() % nv, n = rng() % 7;
      const auto w = weight_vector(c, n, VertexId(x), c.signs(VertexId(z)));
      for (std::size_t a = 0; a < nv; ++a) {
        REQUIRE(w(VertexId(a)) == oracle::weight(m, big_n, n, x, z, a));
      }
    }
  }
}

TEST_CASE("property: the identity sweep passes on small complexes") {
  for (const char* spec : {"edge", "path:4", "cube:2", "grid:3x2", "star:4", "tree:3,2", "product(path:2,edge)"}) {
    INFO(spec);
    const auto c = family(spec);
    WeightCheckOptions opts;
    opts.jobs = 2;
    const auto r = verify_weight_identities(c, 6, opts);
    CHECK(r.ok());
    CHECK(r.checks > 0);
  }
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::random_complex(rng, 5, 4);
    CHECK(verify_weight_identities(c, 4).ok());
  }
}

TEST_CASE("equivariance under the square's swap") {
  const auto spec = FamilySpec::cube(2);
  const auto c = build_family(spec);
  WeightCheckOptions opts;
  for (const auto& p : standard_symmetries(spec)) {
    opts.automorphisms.push_back(*induced_automorphism(c, p.images));
  }
  const auto r = verify_weight_identities(c, 5, opts);
  CHECK(r.ok());
}

TEST_CASE("ideal targets in a grid truncation") {
  const auto spec = FamilySpec::grid(4, 4);
  const auto c = build_family(spec);
  WeightCheckOptions opts;
  for (const auto& p : ideal_points(spec)) {
    opts.extra_targets.push_back(p.restriction);
  }
  CHECK(verify_weight_identities(c, 4, opts).ok());
}

TEST_CASE("an undersized ambient dimension is reported") {
  const auto c = family("grid:3x3").with_ambient_dimension(1);
  const auto r = verify_weight_identities(c, 2);
  CHECK_FALSE(r.ok());
}

TEST_CASE("eta uses the basepoint as source") {
  const auto e = family("edge");
  const auto m = eta(e, 3, e.vertex("x"), e.signs(e.vertex("y")));
  CHECK(m(e.vertex("x")) == Rational(1, 4));
  CHECK(m(e.vertex("y")) == Rational(3, 4));
  CHECK(m.is_probability());
}

TEST_CASE("property: eta is almost invariant") {
  // ||s.eta_z - eta_{sz}|| <= 2 d(x0, s x0) N / (n + N) for every automorphism s.
  for (const char* name : {"grid:4x4", "star:6", "cube:3", "path:5"}) {
    INFO(name);
    const auto spec = FamilySpec::parse(name);
    const auto c = build_family(spec);
    const std::size_t big_n = c.ambient_dimension();
    const oracle::GraphMetric m(c);
    const VertexId x0 = c.base();
    for (const auto& p : standard_symmetries(spec)) {
      const auto s = [&](VertexId v) { return p.images[v.index()]; };
      for (std::size_t n : {2U, 6U, 12U}) {
        const Rational bound(2 * static_cast<long>(distance(c, x0, s(x0)) * big_n), static_cast<long>(n + big_n));
        for (std::size_t z = 0; z < c.vertex_count(); ++z) {
          const auto moved = eta(c, n, x0, c.signs(VertexId(z))).pushforward(s);
          const auto target = eta(c, n, x0, c.signs(s(VertexId(z))));
          CHECK(l1_distance(moved, target) <= bound);
          CHECK(eta(c, n, x0, c.signs(VertexId(z))) == oracle::eta(m, big_n, n, x0.index(), z));
        }
      }
    }
  }
}
