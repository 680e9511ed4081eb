#ifndef CUBEX_COMPLEX_HPP
#define CUBEX_COMPLEX_HPP

#include "cubex/ids.hpp"
#include "cubex/report.hpp"
#include "cubex/sign_vector.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cubex {

/// The vertex set of a finite CAT(0) cube complex embedded in the Hamming
/// cube on its hyperplanes, together with a base vertex and an ambient
/// dimension N.
///
/// Construction checks only the input shape (names, sizes, uniqueness).
/// The cube-complex invariants are checked by validate_complex so that a
/// broken complex can still be loaded and reported on. Immutable once built.
class CubeComplex {
public:
  CubeComplex(std::vector<std::string> hyperplane_names,
              std::vector<std::string> vertex_names,
              std::vector<SignVector> vertices,
              VertexId base,
              std::size_t ambient_dimension);

  std::size_t hyperplane_count() const { return hyperplane_names_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t ambient_dimension() const { return ambient_dimension_; }
  VertexId base() const { return base_; }

  const std::string& hyperplane_name(HyperplaneId h) const { return hyperplane_names_[h.index()]; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v.index()]; }
  const std::vector<std::string>& hyperplane_names() const { return hyperplane_names_; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  const SignVector& signs(VertexId v) const { return vertices_[v.index()]; }
  const std::vector<SignVector>& vertices() const { return vertices_; }

  std::optional<VertexId> find(const SignVector& v) const;
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<HyperplaneId> find_hyperplane(std::string_view name) const;

  /// Name lookups that throw InputError on unknown names.
  VertexId vertex(std::string_view name) const;
  HyperplaneId hyperplane(std::string_view name) const;

  /// Hyperplanes across which `v` has a neighbour, in increasing order.
  std::span<const HyperplaneId> adjacent(VertexId v) const { return adjacency_[v.index()]; }

  /// Same vertices and hyperplanes with a different ambient dimension.
  CubeComplex with_ambient_dimension(std::size_t n) const;

private:
  std::vector<std::string> hyperplane_names_;
  std::vector<std::string> vertex_names_;
  std::vector<SignVector> vertices_;
  VertexId base_;
  std::size_t ambient_dimension_;
  std::unordered_map<SignVector, VertexId, SignVectorHash> index_;
  std::unordered_map<std::string, VertexId> vertex_by_name_;
  std::unordered_map<std::string, HyperplaneId> hyperplane_by_name_;
  std::vector<std::vector<HyperplaneId>> adjacency_;
};

struct ValidationOptions {
  /// Median closure is checked on every triple up to this many vertices,
  /// and on `sampled_triples` random triples above it.
  std::size_t exhaustive_vertex_limit = 300;
  std::size_t sampled_triples = 200000;
  std::uint64_t seed = 0;
};

ValidationReport validate_complex(const CubeComplex& c, const ValidationOptions& options = {});

/// {H : x(H) != y(H)}.
std::vector<HyperplaneId> separators(const SignVector& x, const SignVector& y);
std::vector<HyperplaneId> separators(const CubeComplex& c, VertexId x, VertexId y);

std::size_t distance(const SignVector& x, const SignVector& y);
std::size_t distance(const CubeComplex& c, VertexId x, VertexId y);

SignVector median(const SignVector& x, const SignVector& y, const SignVector& z);

/// Original vertices of [x, y], in increasing id order.
std::vector<VertexId> interval(const CubeComplex& c, const SignVector& x, const SignVector& y);
bool interval_membership(const SignVector& a, const SignVector& x, const SignVector& y);

/// The vertex differing from `a` exactly on `h`, if it is a vertex of `c`.
std::optional<VertexId> neighbor_across(const CubeComplex& c, VertexId a, HyperplaneId h);

std::vector<HyperplaneId> adjacent_hyperplanes(const CubeComplex& c, VertexId a);

/// All four sign combinations on (h, k) occur among the vertices.
bool crosses(const CubeComplex& c, HyperplaneId h, HyperplaneId k);

/// Largest number of pairwise-crossing hyperplanes adjacent to one vertex.
/// Two hyperplanes adjacent to a vertex of a median-closed set cross exactly
/// when the square they span at that vertex is present.
std::size_t dimension_estimate(const CubeComplex& c);

/// For each ordered pair of hyperplanes, which of the four sign combinations
/// some vertex realizes. Backs the pairwise admissibility tests.
class QuadrantTable {
public:
  explicit QuadrantTable(const CubeComplex& c);

  bool realized(HyperplaneId h, Sign sh, HyperplaneId k, Sign sk) const;
  std::size_t hyperplane_count() const { return count_; }

private:
  std::size_t count_;
  std::vector<std::uint8_t> masks_;
};

bool is_admissible(const CubeComplex& c, const SignVector& z);
bool is_admissible(const QuadrantTable& table, const SignVector& z);

struct AdmissibleEnumeration {
  std::vector<SignVector> vectors;
  bool partial = false;
};

/// Backtracking over hyperplanes in order, pruning any prefix with a pair
/// of chosen half spaces that no vertex realizes. Stops after `limit` results.
AdmissibleEnumeration enumerate_admissible(const CubeComplex& c, std::size_t limit);

/// A vertex permutation together with the hyperplane permutation it induces.
/// `orientation[h]` is Minus when the image of h's + side is the - side of
/// `hyperplane_image[h]`.
struct Automorphism {
  std::vector<VertexId> vertex_image;
  std::vector<HyperplaneId> hyperplane_image;
  std::vector<Sign> orientation;

  VertexId operator()(VertexId v) const { return vertex_image[v.index()]; }
  SignVector apply(const SignVector& z) const;
};

/// Derives the induced hyperplane permutation of a vertex bijection. Returns
/// nullopt when the bijection does not carry half spaces onto half spaces.
std::optional<Automorphism> induced_automorphism(const CubeComplex& c,
                                                 std::span<const VertexId> vertex_image);

} // namespace cubex

#endif // CUBEX_COMPLEX_HPP
