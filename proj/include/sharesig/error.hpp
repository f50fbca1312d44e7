#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sharesig {

enum class ErrorKind {
  DegenerateSignal,
  ToleranceNotReached,
  NoSharing,
  EmptyTruncation,
  EmptyPool,
  NoRoot,
  BracketFailure,
  InvalidDistribution,
  PreconditionViolation,
};

std::string_view to_string(ErrorKind kind);

/// Raised by the numerical routines. `kind()` lets callers (sweeps, the CLI)
/// map failures to status tags or exit codes without parsing messages.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sharesig
