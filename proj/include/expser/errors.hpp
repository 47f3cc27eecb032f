#pragma once

#include <stdexcept>
#include <string>

namespace expser {

/// Raised when an argument lies outside the domain where an operation is defined
/// (divergent series, pole of zeta, index out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an adaptive summation exhausts its term budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace expser
