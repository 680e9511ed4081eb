#ifndef CUBEX_CONTINUITY_HPP
#define CUBEX_CONTINUITY_HPP

#include "cubex/arith.hpp"
#include "cubex/complex.hpp"
#include "cubex/families.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubex {

/// Phi(z) = phi^n_{x,z}(a) as a function of the target z.
struct PhiQuery {
  VertexId x;
  VertexId a;
  std::size_t n = 0;
};

BigInt phi(const CubeComplex& c, const PhiQuery& q, const SignVector& z);

/// Phi(z) evaluated from half spaces alone: zero unless z lies on a's side
/// of every hyperplane separating x from a; otherwise C(A+N-k, N-k) where
/// A = n - d(x,a) and k counts the hyperplanes adjacent to a, not
/// separating x from a, on which z leaves x's side.
BigInt phi_by_half_spaces(const CubeComplex& c, const PhiQuery& q, const SignVector& z);

/// A point at which Phi is probed: an original vertex, or an ideal point
/// of a family seen through its restriction to the truncation.
struct ProbePoint {
  std::string label;
  SignVector z;
  std::optional<VertexId> vertex; // set for original vertices
  bool ideal = false;
  bool adjacency_infinite = false;
};

/// The original vertices, then the annotated ideal points (if any).
std::vector<ProbePoint> probe_points(const CubeComplex& c, const FamilyAnnotations* annotations = nullptr);

struct ZeroSet {
  std::vector<std::size_t> direct;      // probe indices with a not in [x, z]
  std::vector<std::size_t> half_spaces; // probe indices in the union of H^{x(H)}, H separating a and x
  bool agree = false;
};

ZeroSet zero_set(const CubeComplex& c, VertexId x, VertexId a, const std::vector<ProbePoint>& probe);

struct SuperlevelCheck {
  std::size_t k = 0;
  BigInt threshold;                    // C(A+N-k, N-k)
  std::vector<std::size_t> direct;     // {Phi > threshold}
  std::vector<std::size_t> formula;    // the intersection-of-unions expression
  bool evaluated = true;               // false when the k-subsets exceed the cap
  bool agree = false;
};

struct LevelSetPartition {
  std::map<BigInt, std::vector<std::size_t>> cells; // value -> probe indices
  std::vector<BigInt> predicted;                     // {0} and C(A+N-k, N-k)
  bool values_predicted = false;
  bool formula_agrees = false; // phi_by_half_spaces == phi pointwise
  std::vector<SuperlevelCheck> superlevel;           // only when A > 0
  bool ok() const;
};

/// Partitions the probe set by Phi and checks the level-set and superlevel
/// identities against their half-space descriptions.
LevelSetPartition level_sets(const CubeComplex& c, const PhiQuery& q,
                             const std::vector<ProbePoint>& probe,
                             std::size_t subset_cap = 1'000'000);

enum class Continuity { Continuous, Discontinuous, NotDetermined };
std::string to_string(Continuity c);

struct ContinuityVerdict {
  Continuity verdict = Continuity::NotDetermined;
  std::string rule;
};

struct WitnessStep {
  SignVector m;
  VertexId m_vertex;
  HyperplaneId h;
  VertexId m_prime;
  std::size_t delta_m = 0;
  std::size_t delta_m_prime = 0;
  BigInt phi_m_prime;
};

struct DiscontinuityWitness {
  std::string point;
  std::vector<WitnessStep> steps;
  bool partial = false;         // fewer than the requested steps exist
  bool perturbation_ok = false; // every step changes the deficiency by exactly one
};

/// Searches [a, z] for vertices m with the deficiency set of z, paired with
/// distinct hyperplanes H adjacent to both a and m whose crossing m' keeps
/// a in [x, m']. Returns none when Phi(z) = 0, when a has finitely many
/// adjacent hyperplanes in the family, or when nothing is found.
std::optional<DiscontinuityWitness> discontinuity_witness(const CubeComplex& c, const PhiQuery& q,
                                                          const ProbePoint& z,
                                                          const FamilyAnnotations* annotations,
                                                          std::size_t prefix_len);

/// Rules, first match wins: Phi(z) = 0; n <= d(x,a); original z without
/// infinitely many hyperplanes adjacent to both a and z; original z with
/// them; ideal z with a finite; ideal z with a witness; otherwise
/// not determined.
ContinuityVerdict continuity_classify(const CubeComplex& c, const PhiQuery& q, const ProbePoint& z,
                                      const FamilyAnnotations* annotations);

struct SingletonOpenness {
  bool open = false;
  std::vector<std::pair<HyperplaneId, Sign>> certificate; // half spaces H^{a(H)}, H adjacent to a
  std::vector<SignVector> members; // admissible points inside the certificate
  bool verified = false;           // members == {a}
  bool partial = false;            // admissible enumeration hit its limit
};

SingletonOpenness singleton_openness(const CubeComplex& c, VertexId a,
                                     const FamilyAnnotations* annotations = nullptr,
                                     std::size_t enumeration_limit = 100'000);

} // namespace cubex

#endif // CUBEX_CONTINUITY_HPP
