#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "onsager/sweep.hpp"

namespace onsager {

/// Shortest string that parses back to the same double; "nan", "inf",
/// "-inf" otherwise. Independent of the global locale.
std::string format_double(double x);

inline constexpr const char* kSweepHeader = "kappa,branch,alpha,eta,com_norm,energy";

void write_sweep_csv(std::ostream& out, const std::vector<BranchSample>& rows);

void write_profile_csv(std::ostream& out, const std::vector<std::pair<double, double>>& samples);

}  // namespace onsager
