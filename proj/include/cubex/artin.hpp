#ifndef CUBEX_ARTIN_HPP
#define CUBEX_ARTIN_HPP

#include "cubex/arith.hpp"
#include "cubex/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cubex {

/// A Coxeter label; nullopt stands for infinity.
using CoxeterEntry = std::optional<std::uint64_t>;
inline constexpr CoxeterEntry kInfinity = std::nullopt;

std::string to_string(const CoxeterEntry& e);

/// A symmetric matrix with unit diagonal and off-diagonal labels in
/// {2, 3, ...} or infinity. Only validate_matrix and parabolic_restrict
/// produce instances, so a held value is always valid.
class CoxeterMatrix {
public:
  CoxeterMatrix() = default;

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const CoxeterEntry& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * names_.size() + j];
  }
  bool finite(std::size_t i, std::size_t j) const { return (*this)(i, j).has_value(); }

  /// Index of a generator name; throws InputError when unknown.
  std::size_t index(std::string_view name) const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

private:
  friend CoxeterMatrix validate_matrix(std::vector<std::string>, std::vector<std::vector<CoxeterEntry>>);
  std::vector<std::string> names_;
  std::vector<CoxeterEntry> entries_;
};

/// Checks symmetry, the unit diagonal and off-diagonal labels >= 2.
/// Errors name the offending coordinates, e.g. "asymmetric at (0,1)".
CoxeterMatrix validate_matrix(std::vector<std::string> names,
                              std::vector<std::vector<CoxeterEntry>> rows);

/// The submatrix on `subset` (generator indices), in the given order.
CoxeterMatrix parabolic_restrict(const CoxeterMatrix& m, const std::vector<std::size_t>& subset);
CoxeterMatrix parabolic_restrict(const CoxeterMatrix& m, const std::vector<std::string>& subset);

/// One connected component of a Coxeter diagram, matched against the
/// finite irreducible types.
struct ComponentType {
  std::string type; // "A3", "B2", "E6", "I2(7)", ...
  std::vector<std::string> generators;
  BigInt order;
};

struct SphericalResult {
  bool spherical = false;
  std::vector<ComponentType> components; // set when spherical
  std::string reason;                    // set when not
  BigInt order;                          // |W_J| when spherical

  /// "A1xA1", "A3", or "trivial" for the empty set.
  std::string decomposition() const;
};

SphericalResult spherical_classify(const CoxeterMatrix& m, const std::vector<std::size_t>& subset);
SphericalResult spherical_classify(const CoxeterMatrix& m);

struct CliqueRecord {
  std::vector<std::string> clique;
  SphericalResult classification;
};

struct FCVerdict {
  bool is_fc = true;
  std::optional<std::vector<std::string>> witness;
  std::vector<CliqueRecord> cliques; // maximal cliques in enumeration order
};

struct FCOptions {
  std::size_t max_generators = 64;
  std::size_t max_cliques = 100'000;
};

/// Thrown when enumeration stops at the clique cap; keeps what was found.
class CliqueCapacityError : public CapacityError {
public:
  CliqueCapacityError(const std::string& what, FCVerdict partial)
      : CapacityError(what, partial.cliques.size()), partial_(std::move(partial)) {}

  const FCVerdict& partial() const { return partial_; }

private:
  FCVerdict partial_;
};

/// Every maximal clique of the graph {i ~ j : M_ij < inf} must be spherical.
/// Cliques are enumerated by Bron-Kerbosch with pivoting, smallest indices
/// first, so the witness is deterministic.
FCVerdict fc_check(const CoxeterMatrix& m, const FCOptions& options = {});

struct ExactnessReport {
  bool exact = false;
  std::string verdict; // "exact" or "inapplicable"
  std::vector<std::string> stabilizer_types; // distinct, sorted
  std::optional<std::vector<std::string>> witness;
  FCVerdict fc;
};

ExactnessReport exactness_report(const CoxeterMatrix& m, const FCOptions& options = {});

} // namespace cubex

#endif // CUBEX_ARTIN_HPP
