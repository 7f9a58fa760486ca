#pragma once

#include <string>
#include <utility>
#include <vector>

#include "onsager/energy.hpp"
#include "onsager/error.hpp"

namespace onsager {

/// One row of a bifurcation sweep. eta is +inf for the uniform state (the
/// eta -> infinity limit of the branch) and 1 for the measure-valued states.
/// A failed solve keeps kappa and branch and sets every other field to nan.
struct BranchSample {
  double kappa = 0.0;
  Branch branch = Branch::Uniform;
  double alpha = 0.0;
  double eta = 0.0;
  double com_norm = 0.0;
  double energy = 0.0;
  bool failed = false;
};

struct SweepOptions {
  int d = 2;
  double m = 0.5;
  double kappa_min = 1.0;
  double kappa_max = 10.0;
  int steps = 50;  // number of kappa samples, endpoints included
  bool log_grid = false;
  Tolerances tol;
};

void validate(const SweepOptions& options);

std::vector<double> kappa_grid(const SweepOptions& options);

/// Every branch that exists at kappa, sorted by branch name. Existence is
/// decided from the critical set, not from solver success.
std::vector<BranchSample> sample_kappa(double kappa, int d, double m, const CriticalSet& critical,
                                       const Tolerances& tol = {});

/// Reference implementation: one kappa after another.
std::vector<BranchSample> sweep_serial(const SweepOptions& options);

/// Same rows as sweep_serial, with the kappa grid split across OpenMP threads.
std::vector<BranchSample> sweep_parallel(const SweepOptions& options);

int count_failures(const std::vector<BranchSample>& rows);

enum class ProfileBranch { FullySupported, RhoBar };

ProfileBranch parse_profile_branch(const std::string& name);

/// (theta, density) at `points` uniformly spaced theta in [0, pi].
std::vector<std::pair<double, double>> density_profile(int d, double m, double kappa, int points,
                                                       ProfileBranch branch, const Tolerances& tol = {});

}  // namespace onsager
