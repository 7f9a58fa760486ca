#include "onsager/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>

namespace onsager {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

BranchSample failed_sample(double kappa, Branch branch) {
  return {kappa, branch, kNaN, kNaN, kNaN, kNaN, true};
}

bool name_order(const BranchSample& a, const BranchSample& b) {
  return to_string(a.branch) < to_string(b.branch);
}

}  // namespace

void validate(const SweepOptions& options) {
  validate_dm(options.d, options.m);
  if (!(options.kappa_min > 0.0) || !std::isfinite(options.kappa_max) || !(options.kappa_max >= options.kappa_min)) {
    std::ostringstream os;
    os << "kappa range must satisfy 0 < kappa-min <= kappa-max < inf, got [" << options.kappa_min << ", "
       << options.kappa_max << "]";
    throw Error(ErrorKind::InvalidParam, os.str());
  }
  if (options.steps < 1) throw Error(ErrorKind::InvalidParam, "steps must be >= 1");
}

std::vector<double> kappa_grid(const SweepOptions& options) {
  validate(options);
  const int n = options.steps;
  std::vector<double> grid(n, options.kappa_min);
  if (n == 1) return grid;
  if (options.log_grid) {
    const double lo = std::log(options.kappa_min);
    const double step = (std::log(options.kappa_max) - lo) / (n - 1);
    for (int i = 1; i < n - 1; ++i) grid[i] = std::exp(lo + i * step);
  } else {
    const double step = (options.kappa_max - options.kappa_min) / (n - 1);
    for (int i = 1; i < n - 1; ++i) grid[i] = options.kappa_min + i * step;
  }
  grid[n - 1] = options.kappa_max;
  return grid;
}

std::vector<BranchSample> sample_kappa(double kappa, int d, double m, const CriticalSet& critical,
                                       const Tolerances& tol) {
  std::vector<BranchSample> rows;
  rows.push_back({kappa, Branch::Uniform, 0.0, kInf, 0.0, energy_uniform(kappa, d, m), false});

  const Regime regime = classify_regime(d, m);
  const KappaWindow window = fully_supported_window(d, m);
  if (kappa > window.lo && kappa < window.hi) {
    try {
      const FullySupportedState state = fully_supported_state(kappa, d, m, tol);
      rows.push_back({kappa, Branch::FullySupported, 0.0, state.eta, state.s,
                      energy_fully_supported(state, d, m, tol), false});
    } catch (const Error&) {
      rows.push_back(failed_sample(kappa, Branch::FullySupported));
    }
  }

  bool upper = false;
  bool lower = false;
  if (regime.tag == RegimeTag::CaseII) {
    upper = kappa > *critical.kappa2;
  } else if (regime.tag == RegimeTag::CaseIII) {
    upper = kappa >= *critical.kappa3;
    lower = kappa > *critical.kappa3 && kappa < *critical.kappa2;
  }
  if (upper || lower) {
    try {
      const AlphaRoots roots = alpha_roots(kappa, d, m, tol);
      if (roots.values.empty()) throw Error(ErrorKind::BracketFailure, "no alpha root inside the window");
      auto singular = [&](Branch branch, double alpha) {
        return BranchSample{kappa, branch, alpha, 1.0, singular_com_norm(alpha, d, m),
                            energy_singular(alpha, kappa, d, m), false};
      };
      if (upper) rows.push_back(singular(Branch::SingularUpper, roots.values.back()));
      if (lower) rows.push_back(singular(Branch::SingularLower, roots.values.front()));
    } catch (const Error&) {
      if (upper) rows.push_back(failed_sample(kappa, Branch::SingularUpper));
      if (lower) rows.push_back(failed_sample(kappa, Branch::SingularLower));
    }
  }

  std::sort(rows.begin(), rows.end(), name_order);
  return rows;
}

std::vector<BranchSample> sweep_serial(const SweepOptions& options) {
  const std::vector<double> grid = kappa_grid(options);
  const CriticalSet critical = critical_set(options.d, options.m);
  std::vector<BranchSample> rows;
  for (double kappa : grid) {
    std::vector<BranchSample> here = sample_kappa(kappa, options.d, options.m, critical, options.tol);
    rows.insert(rows.end(), here.begin(), here.end());
  }
  return rows;
}

std::vector<BranchSample> sweep_parallel(const SweepOptions& options) {
  const std::vector<double> grid = kappa_grid(options);
  const CriticalSet critical = critical_set(options.d, options.m);
  const int n = static_cast<int>(grid.size());
  std::vector<std::vector<BranchSample>> per_kappa(n);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      per_kappa[i] = sample_kappa(grid[i], options.d, options.m, critical, options.tol);
    } catch (...) {
#pragma omp critical(onsager_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BranchSample> rows;
  for (auto& here : per_kappa) rows.insert(rows.end(), here.begin(), here.end());
  return rows;
}

int count_failures(const std::vector<BranchSample>& rows) {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const BranchSample& r) { return r.failed; }));
}

ProfileBranch parse_profile_branch(const std::string& name) {
  if (name == "fully_supported") return ProfileBranch::FullySupported;
  if (name == "rho_bar") return ProfileBranch::RhoBar;
  throw Error(ErrorKind::InvalidParam, "branch must be fully_supported or rho_bar, got '" + name + "'");
}

std::vector<std::pair<double, double>> density_profile(int d, double m, double kappa, int points,
                                                       ProfileBranch branch, const Tolerances& tol) {
  validate(ModelParams{d, m, kappa});
  if (points < 2) throw Error(ErrorKind::InvalidParam, "points must be >= 2");
  std::vector<std::pair<double, double>> out(points);
  const double step = std::numbers::pi / (points - 1);
  auto theta_at = [&](int i) { return i == points - 1 ? std::numbers::pi : i * step; };

  if (branch == ProfileBranch::FullySupported) {
    const FullySupportedState state = fully_supported_state(kappa, d, m, tol);
    for (int i = 0; i < points; ++i) out[i] = {theta_at(i), rho_kappa_density(state, theta_at(i), d, m)};
  } else {
    for (int i = 0; i < points; ++i) out[i] = {theta_at(i), rho_bar_density(theta_at(i), d, m)};
  }
  return out;
}

}  // namespace onsager
