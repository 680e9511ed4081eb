#ifndef CUBEX_WEIGHTS_HPP
#define CUBEX_WEIGHTS_HPP

#include "cubex/arith.hpp"
#include "cubex/complex.hpp"
#include "cubex/measure.hpp"
#include "cubex/report.hpp"

#include <map>
#include <span>
#include <vector>

namespace cubex {

/// The hyperplanes adjacent to `a` that separate `a` from `z`.
struct DeficiencySet {
  VertexId a;
  SignVector z;
  std::vector<HyperplaneId> set;
  std::size_t deficiency = 0; // N - |set|
};

/// Requires a in [x, z] (DomainError otherwise) and |set| <= N
/// (DimensionError otherwise).
DeficiencySet deficiency_set(const CubeComplex& c, const SignVector& x, const SignVector& z,
                             VertexId a);

/// phi^n_{x,z}(a) = C(n - d(x,a) + delta, delta) on [x, z], zero elsewhere.
BigInt weight(const CubeComplex& c, std::size_t n, const SignVector& x, const SignVector& z,
              VertexId a);

struct WeightVector {
  VertexId source;
  SignVector target;
  std::size_t n = 0;
  std::size_t N = 0;
  std::map<VertexId, BigInt> values; // non-zero values only

  BigInt operator()(VertexId a) const;
  BigInt mass() const;
  /// Divided by C(n+N, N).
  Measure<VertexId> normalized() const;
};

WeightVector weight_vector(const CubeComplex& c, std::size_t n, VertexId x, const SignVector& z);

/// eta_z = C(n+N, N)^-1 phi^n_{x0,z}: the basepoint is the source.
Measure<VertexId> eta(const CubeComplex& c, std::size_t n, VertexId basepoint, const SignVector& z);

/// l1 distance between two weight vectors.
BigInt l1_distance(const WeightVector& a, const WeightVector& b);

struct WeightCheckOptions {
  /// Extra admissible targets besides the original vertices.
  std::vector<SignVector> extra_targets;
  /// Checked for equivariance s.phi^n_{x,z} = phi^n_{sx,sz}.
  std::vector<Automorphism> automorphisms;
  /// Also check ||phi_x - phi_x'|| <= 2 d(x,x') C(n+N-1, N-1) for all pairs.
  bool triangle_bound = true;
  unsigned jobs = 1;
};

/// Sweeps n = 0..n_max, every original source x and every target z:
/// non-negative integer values, support in B_n(x) and [x,z], total mass
/// C(n+N,N), the adjacent-source difference 2 C(n+N-1,N-1), and the
/// optional triangle bound and equivariance. Finding kinds: "values",
/// "support", "mass", "adjacent-difference", "triangle-bound",
/// "equivariance".
VerificationReport verify_weight_identities(const CubeComplex& c, std::size_t n_max,
                                            const WeightCheckOptions& options = {});

} // namespace cubex

#endif // CUBEX_WEIGHTS_HPP
