#pragma once

#include <stdexcept>
#include <string>

namespace levinoise {

/// A physics precondition was violated (bad bounds, unphysical input,
/// regime assumption broken). Carries the name of the failing operation.
class DomainError : public std::domain_error {
public:
  DomainError(std::string operation, const std::string& what)
      : std::domain_error(operation + ": " + what), operation_(std::move(operation)) {}
  const std::string& operation() const noexcept { return operation_; }

private:
  std::string operation_;
};

/// A numerical procedure failed (non-convergence, singular system,
/// unresolved feature on a grid).
class NumericError : public std::runtime_error {
public:
  NumericError(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}
  const std::string& operation() const noexcept { return operation_; }

private:
  std::string operation_;
};

}  // namespace levinoise
