#pragma once

#include <stdexcept>
#include <string>

namespace eg2 {

/// Argument outside the mathematical domain of an operation (x <= 0, u outside
/// (0,1), non-positive parameter, non-finite input).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Structural precondition violated: shape mismatch, differing common
/// parameters, transform order mismatch.
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// Result not representable in double precision.
class OverflowSignal : public std::overflow_error {
 public:
  explicit OverflowSignal(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace eg2
