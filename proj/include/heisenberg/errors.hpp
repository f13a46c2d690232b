#pragma once

#include <stdexcept>
#include <string>

namespace heis {

// Raised when two operands live in Heisenberg groups of different dimension,
// or when an input violates a structural invariant (empty vectors, NaN, ...).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when the arguments are well-formed but the operation is undefined
// for them (identical endpoints, T = 0, parameter out of range, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class ConvergenceError : public DomainError {
 public:
  explicit ConvergenceError(const std::string& what) : DomainError(what) {}
};

}  // namespace heis
