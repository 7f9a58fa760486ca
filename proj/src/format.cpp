#include "onsager/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace onsager {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), end);
}

void write_sweep_csv(std::ostream& out, const std::vector<BranchSample>& rows) {
  out << kSweepHeader << '\n';
  for (const BranchSample& r : rows) {
    out << format_double(r.kappa) << ',' << to_string(r.branch) << ',' << format_double(r.alpha) << ','
        << format_double(r.eta) << ',' << format_double(r.com_norm) << ',' << format_double(r.energy) << '\n';
  }
}

void write_profile_csv(std::ostream& out, const std::vector<std::pair<double, double>>& samples) {
  out << "theta,density\n";
  for (const auto& [theta, density] : samples) {
    out << format_double(theta) << ',' << format_double(density) << '\n';
  }
}

}  // namespace onsager
