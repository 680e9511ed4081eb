#ifndef CUBEX_ERRORS_HPP
#define CUBEX_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cubex {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (unknown names, bad shapes, parse errors).
class InputError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its domain, e.g. a vertex outside an interval.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The ambient dimension is smaller than some vertex's deficiency count.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A configured size cap was exceeded. Carries the size reached so far.
class CapacityError : public Error {
public:
  CapacityError(const std::string& what, std::size_t reached)
      : Error(what), reached_(reached) {}

  std::size_t reached() const { return reached_; }

private:
  std::size_t reached_;
};

/// A group action was rejected; `witness` names the offending vertices.
class ActionError : public Error {
public:
  ActionError(const std::string& what, std::vector<std::string> witness)
      : Error(what), witness_(std::move(witness)) {}

  const std::vector<std::string>& witness() const { return witness_; }

private:
  std::vector<std::string> witness_;
};

} // namespace cubex

#endif // CUBEX_ERRORS_HPP
