#ifndef CUBEX_IO_HPP
#define CUBEX_IO_HPP

#include "cubex/artin.hpp"
#include "cubex/complex.hpp"
#include "cubex/families.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cubex {

/// {"hyperplanes":[...], "base":"v0", "N":2, "vertices":{"v0":[1,1], ...}}
///
/// Vertex ids follow the order of the "vertices" object. A vertex may also
/// be given as {"H0":-1, ...}, listing every hyperplane. "N" defaults to the
/// dimension estimate.
CubeComplex parse_complex(std::string_view json_text);
CubeComplex load_complex_file(const std::string& path);
std::string complex_to_json(const CubeComplex& c, int indent = 2);

/// {"generators":{"s":{"v0":"v1","v1":"v0"}}}. Vertices not listed are
/// fixed. Generators are returned sorted by name.
std::vector<NamedPermutation> parse_action(std::string_view json_text, const CubeComplex& c);
std::vector<NamedPermutation> load_action_file(const std::string& path, const CubeComplex& c);

/// {"generators":["a","b"], "matrix":[[1,3],[3,1]]}, infinity as "inf".
CoxeterMatrix parse_coxeter(std::string_view json_text);
CoxeterMatrix load_coxeter_file(const std::string& path);

std::string read_text_file(const std::string& path);

} // namespace cubex

#endif // CUBEX_IO_HPP
