#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "onsager/error.hpp"

namespace onsager {

/// Deliberate bugs used to check that the suite can fail.
enum class FaultInjection { None, HSign };

struct VerifyOptions {
  /// User overrides. They only loosen the pass thresholds; the computations
  /// themselves never run coarser than the defaults.
  double rel_tol = 1e-10;
  double root_tol = 1e-12;
  FaultInjection fault = FaultInjection::None;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst error seen
  double threshold = 0.0;  // pass iff measured <= threshold
  std::vector<std::string> notes;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

/// One PASS/FAIL line per check followed by its notes; returns true iff all passed.
bool print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace onsager
