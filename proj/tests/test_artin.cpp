#include "helpers.hpp"
#include "oracles/oracles.hpp"

#include "cubex/artin.hpp"
#include "cubex/errors.hpp"
#include "cubex/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace cubex;

namespace {

using Rows = std::vector<std::vector<CoxeterEntry>>;

CoxeterMatrix make(const Rows& rows) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    names.push_back("s" + std::to_string(i + 1));
  }
  return validate_matrix(names, rows);
}

// Matrix of a Coxeter diagram given by labelled edges (label 3 when omitted
// in the caller); unlisted pairs commute.
CoxeterMatrix diagram(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>>& edges) {
  Rows rows(n, std::vector<CoxeterEntry>(n, CoxeterEntry(2)));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
  }
  for (const auto& [i, j, m] : edges) {
    rows[i][j] = m;
    rows[j][i] = m;
  }
  return make(rows);
}

std::vector<std::vector<std::uint64_t>> raw(const CoxeterMatrix& m) {
  std::vector<std::vector<std::uint64_t>> out(m.size(), std::vector<std::uint64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      out[i][j] = m(i, j).value_or(0);
    }
  }
  return out;
}

CoxeterMatrix random_matrix(std::mt19937_64& rng, std::size_t n, const std::vector<CoxeterEntry>& labels) {
  Rows rows(n, std::vector<CoxeterEntry>(n));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      rows[i][j] = labels[rng() % labels.size()];
      rows[j][i] = rows[i][j];
    }
  }
  return make(rows);
}

CoxeterMatrix permuted(const CoxeterMatrix& m, const std::vector<std::size_t>& perm) {
  // Generator i of the result is generator perm[i] of m, keeping its name.
  std::vector<std::string> names;
  Rows rows(m.size(), std::vector<CoxeterEntry>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    names.push_back(m.name(perm[i]));
    for (std::size_t j = 0; j < m.size(); ++j) {
      rows[i][j] = m(perm[i], perm[j]);
    }
  }
  return validate_matrix(names, rows);
}

std::set<std::set<std::string>> clique_sets(const FCVerdict& v) {
  std::set<std::set<std::string>> out;
  for (const auto& c : v.cliques) {
    out.emplace(c.clique.begin(), c.clique.end());
  }
  return out;
}

} // namespace

TEST_CASE("matrix validation") {
  CHECK_NOTHROW(make({{1, 2}, {2, 1}}));
  CHECK_NOTHROW(make({{1, kInfinity}, {kInfinity, 1}}));
  CHECK_THROWS_WITH_AS(make({{1, 3}, {2, 1}}), doctest::Contains("asymmetric at (0,1)"), InputError);
  CHECK_THROWS_WITH_AS(make({{2, 3}, {3, 1}}), doctest::Contains("(0,0)"), InputError);
  CHECK_THROWS_WITH_AS(make({{1, 1}, {1, 1}}), doctest::Contains("(0,1)"), InputError);
  CHECK_THROWS_AS(make({{1, 2}, {2}}), InputError);
  CHECK_THROWS_AS(load_coxeter_file(testing::fixture("asymmetric.json")), InputError);
  const auto inf = load_coxeter_file(testing::fixture("free_inf.json"));
  CHECK_FALSE(inf.finite(0, 1));
  CHECK(to_string(inf(0, 1)) == "inf");
}

TEST_CASE("parabolic restriction") {
  const auto tri = load_coxeter_file(testing::fixture("triangle3.json"));
  CHECK(parabolic_restrict(tri, std::vector<std::size_t>{0, 1, 2}) == tri);
  CHECK(parabolic_restrict(tri, std::vector<std::size_t>{}).size() == 0);
  const auto pair = parabolic_restrict(tri, std::vector<std::string>{"a", "c"});
  CHECK(pair.size() == 2);
  CHECK(pair(0, 1) == CoxeterEntry(3));
  CHECK(pair.names() == std::vector<std::string>{"a", "c"});
  CHECK_THROWS_AS(parabolic_restrict(tri, std::vector<std::string>{"zz"}), InputError);
  CHECK_THROWS_AS(parabolic_restrict(tri, std::vector<std::size_t>{5}), InputError);
}

TEST_CASE("spherical classification") {
  SUBCASE("Klein four") {
    const auto r = spherical_classify(load_coxeter_file(testing::fixture("klein4.json")));
    CHECK(r.spherical);
    CHECK(r.decomposition() == "A1xA1");
    CHECK(r.order == 4);
  }
  SUBCASE("A3") {
    const auto m = load_coxeter_file(testing::fixture("a3.json"));
    const auto r = spherical_classify(m);
    CHECK(r.spherical);
    CHECK(r.decomposition() == "A3");
    CHECK(r.order == 24);
    CHECK(oracle::coxeter_order(raw(m), 10000) == std::optional<std::size_t>(24));
  }
  SUBCASE("triangle of 3s") {
    const auto m = load_coxeter_file(testing::fixture("triangle3.json"));
    CHECK_FALSE(spherical_classify(m).spherical);
    CHECK_FALSE(oracle::coxeter_order(raw(m), 5000).has_value());
  }
  SUBCASE("infinite label") {
    const auto r = spherical_classify(make({{1, kInfinity}, {kInfinity, 1}}));
    CHECK_FALSE(r.spherical);
    CHECK(r.reason.find("infinite") != std::string::npos);
  }
  SUBCASE("empty set is trivial") {
    const auto r = spherical_classify(make({{1, 3}, {3, 1}}), {});
    CHECK(r.spherical);
    CHECK(r.decomposition() == "trivial");
    CHECK(r.order == 1);
  }
}

TEST_CASE("classification orders agree with coset enumeration") {
  struct Case {
    const char* type;
    CoxeterMatrix m;
  };
  const std::vector<Case> cases{
      {"A1", diagram(1, {})},
      {"A2", diagram(2, {{0, 1, 3}})},
      {"B2", diagram(2, {{0, 1, 4}})},
      {"I2(5)", diagram(2, {{0, 1, 5}})},
      {"I2(7)", diagram(2, {{0, 1, 7}})},
      {"A4", diagram(4, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}})},
      {"B3", diagram(3, {{0, 1, 4}, {1, 2, 3}})},
      {"B4", diagram(4, {{0, 1, 3}, {1, 2, 3}, {2, 3, 4}})},
      {"D4", diagram(4, {{0, 1, 3}, {1, 2, 3}, {1, 3, 3}})},
      {"D5", diagram(5, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}})},
      {"F4", diagram(4, {{0, 1, 3}, {1, 2, 4}, {2, 3, 3}})},
      {"H3", diagram(3, {{0, 1, 5}, {1, 2, 3}})},
      {"H4", diagram(4, {{0, 1, 5}, {1, 2, 3}, {2, 3, 3}})},
      {"E6", diagram(6, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}})},
  };
  for (const auto& c : cases) {
    INFO(c.type);
    const auto r = spherical_classify(c.m);
    REQUIRE(r.spherical);
    CHECK(r.decomposition() == c.type);
    const auto order = oracle::coxeter_order(raw(c.m), 200000);
    REQUIRE(order.has_value());
    CHECK(r.order == BigInt(static_cast<unsigned long>(*order)));
  }
  SUBCASE("reducible") {
    const auto m = diagram(5, {{0, 1, 3}, {2, 3, 4}});
    const auto r = spherical_classify(m);
    CHECK(r.spherical);
    CHECK(r.order == 6 * 8 * 2);
    CHECK(oracle::coxeter_order(raw(m), 10000) == std::optional<std::size_t>(96));
  }
}

TEST_CASE("non-spherical diagrams") {
  // Affine and hyperbolic diagrams: the classification rejects them and
  // coset enumeration does not terminate within the bound.
  const std::vector<CoxeterMatrix> cases{
      diagram(3, {{0, 1, 4}, {1, 2, 4}}),                   // affine C2
      diagram(3, {{0, 1, 3}, {1, 2, 6}}),                   // affine G2
      diagram(5, {{0, 1, 3}, {1, 2, 3}, {1, 3, 3}, {1, 4, 3}}), // affine D4
      diagram(3, {{0, 1, 5}, {1, 2, 4}}),                   // hyperbolic
      diagram(4, {{0, 1, 4}, {1, 2, 3}, {2, 3, 4}}),        // affine B3 variant
  };
  for (const auto& m : cases) {
    CHECK_FALSE(spherical_classify(m).spherical);
    CHECK_FALSE(oracle::coxeter_order(raw(m), 20000).has_value());
  }
}

TEST_CASE("FC check") {
  SUBCASE("triangle of 3s") {
    const auto v = fc_check(load_coxeter_file(testing::fixture("triangle3.json")));
    CHECK_FALSE(v.is_fc);
    REQUIRE(v.witness.has_value());
    CHECK(std::set<std::string>(v.witness->begin(), v.witness->end()) == std::set<std::string>{"a", "b", "c"});
  }
  SUBCASE("single generator") { CHECK(fc_check(make({{1}})).is_fc); }
  SUBCASE("free product") { CHECK(fc_check(load_coxeter_file(testing::fixture("free_inf.json"))).is_fc); }
  SUBCASE("capacity") {
    FCOptions opts;
    opts.max_cliques = 1;
    const auto m = make({{1, kInfinity, 2}, {kInfinity, 1, 2}, {2, 2, 1}});
    try {
      fc_check(m, opts);
      FAIL("no capacity error");
    } catch (const CliqueCapacityError& e) {
      CHECK(e.partial().cliques.size() == 1);
    }
    opts.max_generators = 2;
    CHECK_THROWS_AS(fc_check(m, opts), CapacityError);
  }
}

TEST_CASE("property: maximal cliques match brute force") {
  std::mt19937_64 rng(404);
  const std::vector<CoxeterEntry> labels{2, 3, kInfinity, kInfinity};
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    const auto m = random_matrix(rng, n, labels);
    std::set<std::set<std::string>> brute;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      auto clique = [&](std::uint32_t s) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            if (((s >> i) & (s >> j) & 1U) && !m.finite(i, j)) {
              return false;
            }
          }
        }
        return true;
      };
      if (!clique(mask)) {
        continue;
      }
      bool maximal = true;
      for (std::size_t k = 0; k < n && maximal; ++k) {
        if (!((mask >> k) & 1U) && clique(mask | (1U << k))) {
          maximal = false;
        }
      }
      if (maximal) {
        std::set<std::string> names;
        for (std::size_t i = 0; i < n; ++i) {
          if ((mask >> i) & 1U) {
            names.insert(m.name(i));
          }
        }
        brute.insert(names);
      }
    }
    const auto v = fc_check(m);
    CHECK(clique_sets(v) == brute);
  }
}

TEST_CASE("property: right-angled matrices are FC") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, 1 + rng() % 12, {2, kInfinity});
    const auto v = fc_check(m);
    CHECK(v.is_fc);
    for (const auto& c : v.cliques) {
      for (const auto& comp : c.classification.components) {
        CHECK(comp.type == "A1");
      }
    }
  }
}

TEST_CASE("property: verdicts are invariant under relabeling") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    const auto m = random_matrix(rng, n, {2, 2, 3, 4, 5, kInfinity});
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto p = permuted(m, perm);
    const auto a = fc_check(m), b = fc_check(p);
    CHECK(a.is_fc == b.is_fc);
    CHECK(clique_sets(a) == clique_sets(b));
    CHECK(spherical_classify(m).spherical == spherical_classify(p).spherical);
    if (spherical_classify(m).spherical) {
      CHECK(spherical_classify(m).order == spherical_classify(p).order);
    }
  }
}

TEST_CASE("exactness report") {
  SUBCASE("Klein four") {
    const auto r = exactness_report(load_coxeter_file(testing::fixture("klein4.json")));
    CHECK(r.exact);
    CHECK(r.verdict == "exact");
    CHECK(r.stabilizer_types == std::vector<std::string>{"A1xA1"});
  }
  SUBCASE("right-angled pentagon") {
    Rows rows(5, std::vector<CoxeterEntry>(5, kInfinity));
    for (std::size_t i = 0; i < 5; ++i) {
      rows[i][i] = 1;
      rows[i][(i + 1) % 5] = 2;
      rows[(i + 1) % 5][i] = 2;
    }
    const auto r = exactness_report(make(rows));
    CHECK(r.exact);
    CHECK(r.fc.cliques.size() == 5);
    CHECK(r.stabilizer_types == std::vector<std::string>{"A1xA1"});
  }
  SUBCASE("triangle of 3s") {
    const auto r = exactness_report(load_coxeter_file(testing::fixture("triangle3.json")));
    CHECK_FALSE(r.exact);
    CHECK(r.verdict == "inapplicable");
    CHECK(r.witness.has_value());
  }
}
