#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace onsager {

enum class ErrorKind {
  InvalidParam,
  ThresholdDegenerate,
  NotIntegrable,
  ToleranceNotMet,
  OutOfWindow,
  WrongRegime,
  BracketFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure carries one of the kinds above so callers (the CLI in
/// particular) can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical tolerances threaded through every solver. Defaults are the
/// library-wide settings; the CLI exposes both as flags.
struct Tolerances {
  double rel_tol = 1e-10;   // quadrature relative accuracy
  double root_tol = 1e-12;  // residual target for scalar root solves
};

}  // namespace onsager
