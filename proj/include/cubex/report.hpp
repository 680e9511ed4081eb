#ifndef CUBEX_REPORT_HPP
#define CUBEX_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace cubex {

/// One violated invariant, with the names of the objects that witness it.
struct Finding {
  std::string kind;
  std::string message;
  std::vector<std::string> witness;
};

/// Outcome of a verification sweep. An empty violation list means every
/// check passed; `checks` counts the individual checks performed.
struct VerificationReport {
  std::vector<Finding> violations;
  std::size_t checks = 0;

  bool ok() const { return violations.empty(); }

  void fail(std::string kind, std::string message, std::vector<std::string> witness = {}) {
    violations.push_back({std::move(kind), std::move(message), std::move(witness)});
  }

  void merge(VerificationReport other) {
    checks += other.checks;
    for (auto& f : other.violations) {
      violations.push_back(std::move(f));
    }
  }
};

using ValidationReport = VerificationReport;

} // namespace cubex

#endif // CUBEX_REPORT_HPP
