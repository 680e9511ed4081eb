#ifndef CUBEX_FAMILIES_HPP
#define CUBEX_FAMILIES_HPP

#include "cubex/complex.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cubex {

enum class FamilyKind { Edge, Path, Grid, Star, Tree, Cube, Product, Explicit };

/// A named finite complex, or a finite truncation of an infinite one.
///
/// Text syntax: `edge`, `path:L`, `grid:WxH`, `star:M`, `tree:V,D`,
/// `cube:N`, `product(<f>,<f>)`, `file:<path>`.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Edge;
  std::vector<std::size_t> params;
  std::vector<FamilySpec> factors;
  std::string path;

  static FamilySpec parse(std::string_view text);
  std::string to_string() const;

  static FamilySpec edge() { return {FamilyKind::Edge, {}, {}, {}}; }
  static FamilySpec path_of(std::size_t length) { return {FamilyKind::Path, {length}, {}, {}}; }
  static FamilySpec grid(std::size_t w, std::size_t h) { return {FamilyKind::Grid, {w, h}, {}, {}}; }
  static FamilySpec star(std::size_t m) { return {FamilyKind::Star, {m}, {}, {}}; }
  static FamilySpec tree(std::size_t valence, std::size_t depth) {
    return {FamilyKind::Tree, {valence, depth}, {}, {}};
  }
  static FamilySpec cube(std::size_t n) { return {FamilyKind::Cube, {n}, {}, {}}; }
  static FamilySpec product(FamilySpec a, FamilySpec b) {
    return {FamilyKind::Product, {}, {std::move(a), std::move(b)}, {}};
  }
};

/// Desk-scale bounds on generated families.
inline constexpr std::size_t kMaxFamilyVertices = 1'000'000;
inline constexpr std::size_t kMaxFamilyIncidences = 100'000'000;

/// Builds the family's complex. Grids use vertices "(p,q)", hyperplanes
/// H0.. (horizontal cuts y = n + 1/2) then K0.. (vertical cuts x = n + 1/2),
/// base (0,0). The ambient dimension is the family's dimension.
CubeComplex build_family(const FamilySpec& spec);

/// An ideal vertex of the infinite family, seen from a finite truncation.
///
/// `restriction` is its orientation of the truncation's hyperplanes; in a
/// finite complex this always coincides with some original vertex. The
/// `boundary` entries orient hyperplanes just outside the truncation, where
/// every vertex of the truncation has sign +1; a Minus entry there is what
/// separates the ideal point from the whole truncation.
struct IdealPointSpec {
  std::string label;
  SignVector restriction;
  std::vector<std::pair<std::string, Sign>> boundary;
  bool adjacency_infinite = false;
};

/// Ideal points for grid, star and tree families (star has none).
/// Throws InputError("not annotated") for other kinds.
std::vector<IdealPointSpec> ideal_points(const FamilySpec& spec);

/// What the infinite family knows that its truncation cannot show: which
/// vertices have infinitely many adjacent hyperplanes, grouped into classes
/// so that two vertices share infinitely many adjacent hyperplanes exactly
/// when their class sets intersect.
struct FamilyAnnotations {
  std::vector<std::vector<std::string>> infinite_classes;
  std::vector<IdealPointSpec> ideal_points;

  bool vertex_infinite(VertexId v) const { return !infinite_classes[v.index()].empty(); }
  bool shared_infinite(VertexId a, VertexId z) const;
  bool locally_finite() const;
};

FamilyAnnotations annotate_family(const FamilySpec& spec);

/// Built-in symmetry generators, as vertex images indexed by vertex id.
struct NamedPermutation {
  std::string name;
  std::vector<VertexId> images;
};

/// edge: the swap. path: the reversal. cube:n: adjacent coordinate swaps
/// s1..s(n-1) plus the flip r of coordinate 0. grid: the two mirror
/// reflections (plus the diagonal when square). star: a transposition of
/// two leaves and the leaf rotation.
std::vector<NamedPermutation> standard_symmetries(const FamilySpec& spec);

/// Smallest median-closed superset of `vectors`, as a complex.
///
/// Vertices are re-based at the first input, named v0, v1, ... in discovery
/// order. Hyperplanes that fail to separate are dropped and duplicate
/// partitions keep their first member. Throws CapacityError past `cap`.
CubeComplex median_closure(const std::vector<SignVector>& vectors,
                           const std::vector<std::string>& hyperplane_names = {},
                           std::size_t cap = 100'000);

} // namespace cubex

#endif // CUBEX_FAMILIES_HPP
