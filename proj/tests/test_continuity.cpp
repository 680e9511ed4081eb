#include "helpers.hpp"
#include "oracles/oracles.hpp"

#include "cubex/continuity.hpp"

#include <doctest.h>

#include <set>

using namespace cubex;
using testing::family;

namespace {

std::set<std::string> labels(const std::vector<ProbePoint>& probe, const std::vector<std::size_t>& idx) {
  std::set<std::string> out;
  for (std::size_t i : idx) {
    out.insert(probe[i].label);
  }
  return out;
}

struct Family {
  FamilySpec spec;
  CubeComplex c;
  FamilyAnnotations ann;
  std::vector<ProbePoint> probe;

  explicit Family(const std::string& s)
      : spec(FamilySpec::parse(s)), c(build_family(spec)), ann(annotate_family(spec)), probe(probe_points(c, &ann)) {}

  const ProbePoint& point(const std::string& label) const {
    for (const auto& p : probe) {
      if (p.label == label) {
        return p;
      }
    }
    throw std::runtime_error("no probe point " + label);
  }
};

} // namespace

TEST_CASE("zero sets") {
  SUBCASE("star:5, x = l1, a = center") {
    const auto c = family("star:5");
    const auto probe = probe_points(c);
    const auto zs = zero_set(c, c.vertex("l1"), c.vertex("center"), probe);
    CHECK(labels(probe, zs.direct) == std::set<std::string>{"l1"});
    CHECK(zs.agree);
  }
  SUBCASE("a = x gives the empty set") {
    const auto c = family("grid:3x3");
    const auto probe = probe_points(c);
    for (std::size_t v = 0; v < c.vertex_count(); ++v) {
      CHECK(zero_set(c, VertexId(v), VertexId(v), probe).direct.empty());
    }
  }
  SUBCASE("grid:3x2, x = (0,0), a = (1,0): exactly z(K0) = +1") {
    const auto c = family("grid:3x2");
    const auto probe = probe_points(c);
    const auto zs = zero_set(c, c.vertex("(0,0)"), c.vertex("(1,0)"), probe);
    std::set<std::string> expected;
    for (const auto& p : probe) {
      if (p.z[c.hyperplane("K0")] == Sign::Plus) {
        expected.insert(p.label);
      }
    }
    CHECK(labels(probe, zs.direct) == expected);
    CHECK(zs.agree);
  }
}

TEST_CASE("level sets on the star") {
  const auto c = family("star:5");
  const auto probe = probe_points(c);
  const PhiQuery q{c.vertex("l1"), c.vertex("center"), 2};
  const auto ls = level_sets(c, q, probe);
  REQUIRE(ls.cells.size() == 3);
  CHECK(labels(probe, ls.cells.at(0)) == std::set<std::string>{"l1"});
  CHECK(labels(probe, ls.cells.at(1)) == std::set<std::string>{"l2", "l3", "l4", "l5"});
  CHECK(labels(probe, ls.cells.at(2)) == std::set<std::string>{"center"});
  CHECK(ls.ok());
}

TEST_CASE("n = d(x,a) gives the indicator of a in [x,z]") {
  const auto c = family("grid:4x3");
  const auto probe = probe_points(c);
  const oracle::GraphMetric g(c);
  for (std::size_t x = 0; x < c.vertex_count(); ++x) {
    for (std::size_t a = 0; a < c.vertex_count(); ++a) {
      const PhiQuery q{VertexId(x), VertexId(a), g.d(x, a)};
      for (std::size_t z = 0; z < c.vertex_count(); ++z) {
        CHECK(phi(c, q, c.signs(VertexId(z))) == (g.between(x, a, z) ? 1 : 0));
      }
      const auto ls = level_sets(c, q, probe);
      for (const auto& [value, cell] : ls.cells) {
        CHECK((value == 0 || value == 1));
      }
    }
  }
}

TEST_CASE("superlevel identity on grid:3x2") {
  const auto c = family("grid:3x2");
  const auto probe = probe_points(c);
  const auto ls = level_sets(c, {c.vertex("(0,0)"), c.vertex("(1,1)"), 3}, probe);
  CHECK(ls.ok());
  CHECK(ls.superlevel.size() == 3);
  for (const auto& s : ls.superlevel) {
    CHECK(s.evaluated);
    CHECK(s.agree);
  }
}

TEST_CASE("property: half-space formula equals direct evaluation") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = testing::random_complex(rng, 6, 5);
    const oracle::GraphMetric g(c);
    const auto probe = probe_points(c);
    const std::size_t nv = c.vertex_count();
    for (int sample = 0; sample < 10; ++sample) {
      const PhiQuery q{VertexId(rng() % nv), VertexId(rng() % nv), rng() % 6};
      const auto ls = level_sets(c, q, probe);
      CHECK(ls.ok());
      for (std::size_t z = 0; z < nv; ++z) {
        CHECK(phi_by_half_spaces(c, q, c.signs(VertexId(z))) ==
              oracle::weight_by_levels(g, c.ambient_dimension(), q.n, q.x.index(), z, q.a.index()));
      }
    }
  }
}

TEST_CASE("continuity verdicts") {
  SUBCASE("star: the center is a discontinuity") {
    const Family f("star:7");
    for (std::size_t n = 2; n <= 6; ++n) {
      const PhiQuery q{f.c.vertex("l1"), f.c.vertex("center"), n};
      const auto v = continuity_classify(f.c, q, f.point("center"), &f.ann);
      CHECK(v.verdict == Continuity::Discontinuous);
    }
  }
  SUBCASE("Phi(z) = 0 is continuous") {
    const Family f("star:7");
    const PhiQuery q{f.c.vertex("l1"), f.c.vertex("center"), 4};
    const auto v = continuity_classify(f.c, q, f.point("l1"), &f.ann);
    CHECK(v.verdict == Continuity::Continuous);
    CHECK(v.rule == "Phi(z) = 0");
  }
  SUBCASE("n <= d(x,a) is continuous") {
    const Family f("star:7");
    const PhiQuery q{f.c.vertex("l1"), f.c.vertex("center"), 1};
    CHECK(continuity_classify(f.c, q, f.point("center"), &f.ann).verdict == Continuity::Continuous);
  }
  SUBCASE("the grid is locally finite") {
    const Family f("grid:4x4");
    const PhiQuery q{f.c.vertex("(0,0)"), f.c.vertex("(1,0)"), 4};
    CHECK(continuity_classify(f.c, q, f.point("(1,1)"), &f.ann).verdict == Continuity::Continuous);
    for (const auto& p : f.probe) {
      CHECK(continuity_classify(f.c, q, p, &f.ann).verdict == Continuity::Continuous);
    }
  }
  SUBCASE("tree ideal ends with a finite a are continuous") {
    const Family f("tree:3,3");
    const PhiQuery q{f.c.vertex("r"), f.c.vertex("r.0"), 3};
    for (const auto& p : f.probe) {
      CHECK(continuity_classify(f.c, q, p, &f.ann).verdict != Continuity::Discontinuous);
    }
  }
}

TEST_CASE("discontinuity witnesses") {
  const Family f("star:9");
  const PhiQuery q{f.c.vertex("l1"), f.c.vertex("center"), 4};
  SUBCASE("the center") {
    const auto w = discontinuity_witness(f.c, q, f.point("center"), &f.ann, 5);
    REQUIRE(w.has_value());
    CHECK(w->steps.size() == 5);
    CHECK_FALSE(w->partial);
    CHECK(w->perturbation_ok);
    std::set<HyperplaneId> hs;
    for (const auto& s : w->steps) {
      hs.insert(s.h);
      CHECK(s.delta_m_prime + 1 == s.delta_m);
      CHECK(s.phi_m_prime == 1);
    }
    CHECK(hs.size() == 5);
  }
  SUBCASE("prefix longer than the truncation is partial") {
    const auto w = discontinuity_witness(f.c, q, f.point("center"), &f.ann, 50);
    REQUIRE(w.has_value());
    CHECK(w->partial);
    CHECK(w->steps.size() == 8);
  }
  SUBCASE("Phi(z) = 0 has none") {
    CHECK_FALSE(discontinuity_witness(f.c, q, f.point("l1"), &f.ann, 3).has_value());
  }
}

TEST_CASE("singleton openness") {
  const auto spec = FamilySpec::star(6);
  const auto c = build_family(spec);
  const auto ann = annotate_family(spec);
  CHECK_FALSE(singleton_openness(c, c.vertex("center"), &ann).open);
  const auto leaf = singleton_openness(c, c.vertex("l3"), &ann);
  CHECK(leaf.open);
  REQUIRE(leaf.certificate.size() == 1);
  CHECK(c.hyperplane_name(leaf.certificate[0].first) == "H3");
  CHECK(leaf.certificate[0].second == Sign::Minus);
  CHECK(leaf.verified);
  const auto g = family("grid:3x3");
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto s = singleton_openness(g, VertexId(v));
    CHECK(s.open);
    CHECK(s.verified);
  }
}
