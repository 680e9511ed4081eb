#include "helpers.hpp"

#include "cubex/errors.hpp"
#include "cubex/io.hpp"

#include <doctest.h>

using namespace cubex;

TEST_CASE("complex JSON round trip") {
  for (const char* spec : {"grid:3x2", "star:4", "tree:3,2", "product(edge,path:2)"}) {
    INFO(spec);
    const auto c = testing::family(spec);
    const auto back = parse_complex(complex_to_json(c));
    CHECK(back.vertex_names() == c.vertex_names());
    CHECK(back.hyperplane_names() == c.hyperplane_names());
    CHECK(back.vertices() == c.vertices());
    CHECK(back.ambient_dimension() == c.ambient_dimension());
    CHECK(back.base() == c.base());
  }
}

TEST_CASE("per-hyperplane vertex objects and the default N") {
  const auto c = parse_complex(R"({"hyperplanes":["H","K"],"base":"a",
    "vertices":{"a":{"H":1,"K":1},"b":{"K":1,"H":-1},"c":{"H":-1,"K":-1},"d":{"H":1,"K":-1}}})");
  CHECK(c.vertex_count() == 4);
  CHECK(c.ambient_dimension() == 2);
  CHECK(c.signs(c.vertex("b"))[c.hyperplane("H")] == Sign::Minus);
}

TEST_CASE("complex input errors") {
  CHECK_THROWS_AS(parse_complex("{"), InputError);
  CHECK_THROWS_AS(parse_complex(R"({"hyperplanes":["H"],"base":"q","vertices":{"x":[1]}})"), InputError);
  CHECK_THROWS_AS(parse_complex(R"({"hyperplanes":["H"],"base":"x","vertices":{"x":[2]}})"), InputError);
  CHECK_THROWS_AS(parse_complex(R"({"hyperplanes":["H"],"base":"x","vertices":{}})"), InputError);
  CHECK_THROWS_AS(parse_complex(R"({"hyperplanes":["H"],"base":"x","N":-1,"vertices":{"x":[1]}})"), InputError);
  CHECK_THROWS_WITH_AS(load_complex_file(testing::fixture("bad_length.json")), doctest::Contains("vertex b"),
                       InputError);
  CHECK_THROWS_AS(load_complex_file(testing::fixture("missing.json")), InputError);
}

TEST_CASE("actions: unlisted vertices are fixed") {
  const auto c = testing::family("star:3");
  const auto gens = parse_action(R"({"generators":{"t":{"l1":"l2","l2":"l1"},"a":{}}})", c);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].name == "a");
  CHECK(gens[1].images[c.vertex("center").index()] == c.vertex("center"));
  CHECK(gens[1].images[c.vertex("l1").index()] == c.vertex("l2"));
  CHECK_THROWS_AS(parse_action(R"({"generators":{"t":{"l9":"l1"}}})", c), InputError);
}

TEST_CASE("coxeter matrices") {
  const auto m = parse_coxeter(R"({"matrix":[[1,"inf"],["inf",1]]})");
  CHECK(m.names() == std::vector<std::string>{"s1", "s2"});
  CHECK_FALSE(m.finite(0, 1));
  CHECK_THROWS_AS(parse_coxeter(R"({"matrix":[[1,"infinity"],["inf",1]]})"), InputError);
  CHECK_THROWS_AS(parse_coxeter(R"({"matrix":[[1,-3],[-3,1]]})"), InputError);
}
