#pragma once

#include "cubex/complex.hpp"
#include "cubex/families.hpp"
#include "cubex/io.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

inline cubex::CubeComplex family(const std::string& spec) {
  return cubex::build_family(cubex::FamilySpec::parse(spec));
}

inline std::string fixture(const std::string& name) { return std::string(CUBEX_FIXTURE_DIR) + "/" + name; }

/// Median closure of a few random vertices of a random-dimensional cube:
/// always a valid finite CAT(0) cube complex.
inline cubex::CubeComplex random_complex(std::mt19937_64& rng, std::size_t max_hyperplanes = 6,
                                         std::size_t max_seeds = 5) {
  std::uniform_int_distribution<std::size_t> nh(1, max_hyperplanes);
  std::uniform_int_distribution<std::size_t> ns(1, max_seeds);
  const std::size_t h = nh(rng);
  std::vector<cubex::SignVector> seeds;
  const std::size_t count = ns(rng);
  for (std::size_t i = 0; i < count; ++i) {
    cubex::SignVector v(h);
    for (std::size_t j = 0; j < h; ++j) {
      if (rng() & 1U) {
        v.flip(cubex::HyperplaneId(j));
      }
    }
    seeds.push_back(v);
  }
  return cubex::median_closure(seeds);
}

inline const std::vector<std::string>& listed_families() {
  static const std::vector<std::string> names{"edge",     "path:5", "cube:2",  "cube:3",
                                              "grid:4x4", "star:8", "tree:3,3"};
  return names;
}

} // namespace testing
