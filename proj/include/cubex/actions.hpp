#ifndef CUBEX_ACTIONS_HPP
#define CUBEX_ACTIONS_HPP

#include "cubex/arith.hpp"
#include "cubex/complex.hpp"
#include "cubex/families.hpp"
#include "cubex/measure.hpp"
#include "cubex/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cubex {

struct ActionOptions {
  std::size_t element_cap = 10'000;
  /// Median equivariance is checked on all triples up to this many
  /// vertices and on `sampled_triples` random triples above it.
  std::size_t exhaustive_vertex_limit = 64;
  std::size_t sampled_triples = 100'000;
  std::uint64_t seed = 0;
  std::size_t table_limit = 1024;
};

/// A finite group acting on the left of a complex's vertices by
/// automorphisms: (gh).v = g.(h.v).
///
/// Elements are numbered in shortlex order of their shortest words over
/// the generator names (sorted), so the identity is element 0.
class GroupAction {
public:
  /// Validates bijectivity, edge preservation and median equivariance of
  /// every generator, then closes under composition. Throws ActionError
  /// with a witness, or CapacityError past `element_cap`.
  static GroupAction create(const CubeComplex& c, std::vector<NamedPermutation> generators,
                            const ActionOptions& options = {});

  std::size_t order() const { return elements_.size(); }
  std::size_t vertex_count() const { return vertex_count_; }
  GroupElement identity() const { return GroupElement(0U); }

  std::size_t generator_count() const { return generator_names_.size(); }
  const std::string& generator_name(std::size_t i) const { return generator_names_[i]; }
  GroupElement generator(std::size_t i) const { return generators_[i]; }
  /// Throws InputError for an unknown name.
  GroupElement generator(std::string_view name) const;
  const Automorphism& generator_automorphism(std::size_t i) const { return automorphisms_[i]; }

  VertexId apply(GroupElement g, VertexId v) const {
    return VertexId(elements_[g.index()][v.index()]);
  }
  std::span<const std::uint32_t> permutation(GroupElement g) const { return elements_[g.index()]; }

  GroupElement multiply(GroupElement g, GroupElement h) const;
  GroupElement inverse(GroupElement g) const { return inverses_[g.index()]; }

  /// "e", or generator names joined by '*'.
  const std::string& word(GroupElement g) const { return words_[g.index()]; }

  /// Left translation of measures: (g.m)(k) = m(g^-1 k).
  Measure<GroupElement> translate(GroupElement g, const Measure<GroupElement>& m) const;
  Measure<VertexId> translate(GroupElement g, const Measure<VertexId>& m) const;

private:
  using Perm = std::vector<std::uint32_t>;
  struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
  };

  std::size_t vertex_count_ = 0;
  std::vector<std::string> generator_names_;
  std::vector<GroupElement> generators_;
  std::vector<Automorphism> automorphisms_;
  std::vector<Perm> elements_;
  std::vector<std::string> words_;
  std::vector<GroupElement> inverses_;
  std::unordered_map<Perm, GroupElement, PermHash> index_;
  std::vector<GroupElement> table_; // order^2 when order <= table_limit
};

/// Coset data for one transversal vertex t: g = z_g a_g with z_g the
/// smallest element moving t to g.t and a_g = z_g^-1 g in the stabilizer.
struct StabilizerData {
  VertexId t;
  std::vector<GroupElement> stabilizer;      // increasing
  std::vector<GroupElement> representatives; // Z^t, increasing
  std::vector<GroupElement> z;               // indexed by g
  std::vector<GroupElement> a;               // indexed by g
  std::vector<bool> in_stabilizer;           // indexed by g
  std::vector<std::optional<GroupElement>> representative_at; // indexed by vertex
};

struct OrbitData {
  std::vector<VertexId> transversal;  // smallest vertex of each orbit, increasing
  std::vector<std::size_t> orbit_of;  // vertex -> position in transversal
  std::vector<StabilizerData> per_t;  // aligned with transversal
};

OrbitData orbit_transversal(const GroupAction& action);

/// For every t, g, k in the group and h in the stabilizer:
/// z_{gk} (a_{gk} a_k^-1) = g z_k, a_{gh} = a_g h, z_{gh} = z_g, g = z_g a_g,
/// and z -> z.t is a bijection of Z^t onto the orbit.
VerificationReport verify_coset_identities(const GroupAction& action, const OrbitData& orbits);

/// sigma(g) = a_{g^-1}^-1, a stabilizer-equivariant splitting.
GroupElement sigma_split(const GroupAction& action, const StabilizerData& data, GroupElement g);

/// sigma(g) lies in the stabilizer and sigma(hg) = h sigma(g) for every g
/// and every stabilizer element h, for every t.
VerificationReport verify_sigma_equivariance(const GroupAction& action, const OrbitData& orbits);

/// A function from the stabilizer to probability measures on it.
struct StabilizerMeasures {
  bool uniform = true;
  std::map<GroupElement, Measure<GroupElement>> values; // keyed by stabilizer element

  static StabilizerMeasures make_uniform() { return {}; }
};

/// nu^t_g as a measure on the whole group, indexed by g.
using MeasureFamily = std::vector<Measure<GroupElement>>;

/// nu^t_g = family(sigma(g)). Throws InputError when a value is missing,
/// is not a probability measure, or leaves the stabilizer.
MeasureFamily induce_nu(const GroupAction& action, const StabilizerData& data,
                        const StabilizerMeasures& family);

/// max over g of ||h.nu_g - nu_{hg}||.
Rational nu_deviation(const GroupAction& action, const MeasureFamily& nu, GroupElement h);

struct CertificateInput {
  std::vector<GroupElement> E; // symmetric, contains the identity
  Rational epsilon;
  std::size_t n = 0;
  VertexId origin;
  std::map<VertexId, StabilizerMeasures> nu; // keyed by transversal vertex
  std::optional<StabilizerMeasures> default_nu;
};

/// {e} together with the named generators and their inverses, increasing.
std::vector<GroupElement> symmetric_set(const GroupAction& action, const std::vector<std::string>& names);

/// E^t = {z_{sg}^-1 s z_g : s in E, g in Z^t_F}, increasing.
std::vector<GroupElement> compute_Et(const GroupAction& action, const StabilizerData& data,
                                     const std::vector<GroupElement>& E,
                                     const std::vector<GroupElement>& z_f);

struct TransversalCertificate {
  std::size_t position = 0; // in OrbitData::transversal
  VertexId t;
  std::vector<GroupElement> z_f; // Z^t_F
  std::vector<GroupElement> f_t; // union of the supports of nu^t
  std::vector<GroupElement> e_t; // E^t
  MeasureFamily nu;
};

struct Certificate {
  std::size_t n = 0;
  VertexId origin;
  std::vector<Measure<VertexId>> eta;      // eta_v for every vertex v
  std::vector<VertexId> F;                 // union of the supports of eta_{x.O}
  std::vector<TransversalCertificate> per_t; // t in T_F
  std::vector<Measure<GroupElement>> mu;   // indexed by x
  std::vector<GroupElement> support_bound; // union of Z^t_F F_t
  std::vector<GroupElement> support;       // union of the supports of mu_x
  VerificationReport construction;         // "probability", "support-bound", "e-t"
};

/// mu_x(g) = sum over t in T_F of eta_{x.O}(g.t) nu^t_{z_g^-1 x}(a_g).
Certificate build_mu(const CubeComplex& c, const GroupAction& action, const OrbitData& orbits,
                     const CertificateInput& input);

struct GeneratorDeviation {
  GroupElement s;
  Rational dev;     // max_x ||s.mu_x - mu_{sx}||
  Rational eps_eta; // max_x ||s.eta_{x.O} - eta_{sx.O}||
  bool bound_holds = false;
};

struct CertificateVerification {
  std::vector<GeneratorDeviation> per_s;
  Rational eps_nu;
  Rational max_dev;
  bool bounds_hold = false;
  bool below_epsilon = false;
  VerificationReport report;
};

/// Checks dev(s) <= eps_eta(s) + eps_nu for every s in E, and whether the
/// largest deviation is below epsilon.
CertificateVerification verify_mu(const GroupAction& action, const Certificate& cert,
                                  const CertificateInput& input);

} // namespace cubex

#endif // CUBEX_ACTIONS_HPP
