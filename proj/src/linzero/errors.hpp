#ifndef LINZERO_ERRORS_HPP
#define LINZERO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace linzero {

// Caller violated a documented precondition (shape mismatch, bad index, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact identity that must hold by construction failed to hold.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation only defined for a single parameter (q = 1).
class UnsupportedParameterCount : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter value lies on the exceptional locus of the derived equation.
class DegenerateParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Step size underflow or step budget exhausted while integrating.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double where)
      : std::runtime_error(what), location_(where) {}
  double location() const { return location_; }

 private:
  double location_;
};

// Malformed system document; `where` is a JSON-pointer-like path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string where)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        location_(std::move(where)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace linzero

#endif
