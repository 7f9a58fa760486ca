#pragma once

#include <optional>
#include <string_view>

#include "onsager/equilibria.hpp"
#include "onsager/error.hpp"

namespace onsager {

/// Candidate equilibrium families.
enum class Branch { Uniform, FullySupported, SingularUpper, SingularLower };

std::string_view to_string(Branch branch);

/// Energies use the convention E[mu] = (1/(m-1)) int rho^m - (kappa/2) |c_mu|^2 + kappa/2,
/// so a single Dirac mass has energy 0.
struct EnergyReport {
  double kappa = 0.0;
  double e_uniform = 0.0;
  std::optional<double> e_fully_supported;
  std::optional<double> e_singular_upper;
  std::optional<double> e_singular_lower;
  Branch minimizer = Branch::Uniform;
  /// Set at a transition point (kappa within 1e-12 of kappa1, kappa2 or
  /// kappa_c, or two energies tied within 1e-12); competitor names the other side.
  bool degenerate = false;
  std::optional<Branch> competitor;
};

struct G1G2Value {
  double eta = 0.0;
  double value = 0.0;
};

double energy_uniform(double kappa, int d, double m);

/// g1(eta) g2(eta) with
///   g1 = m I(eta, q, 1) + 2 I(eta, m/(m-1), 0),
///   g2 = 1 / (2 (1-m) (d w_d)^{m-1} I(eta, q, 0)^m),   q = 1/(m-1).
/// Along the branch, E[rho_kappa] = kappa/2 - g1 g2.
G1G2Value g1g2(double eta, int d, double m, const Tolerances& tol = {});

/// g1 g2 at eta = 1 + gap.
G1G2Value g1g2_gap(double gap, int d, double m, const Tolerances& tol = {});

/// int_{S^d} rho_kappa^m dS by adaptive Gauss-Kronrod on the pointwise density.
double entropy_fully_supported(const FullySupportedState& state, int d, double m, const Tolerances& tol = {});

struct FullySupportedEnergy {
  double direct = 0.0;  // from the entropy quadrature and s
  double identity = 0.0;  // kappa/2 - g1 g2
};
FullySupportedEnergy energy_fully_supported_routes(const FullySupportedState& state, int d, double m,
                                                   const Tolerances& tol = {});

/// Direct energy of rho_kappa. Throws ToleranceNotMet if the two routes above
/// disagree by more than 1e-8 relative to max(1, |E|, kappa).
double energy_fully_supported(const FullySupportedState& state, int d, double m, const Tolerances& tol = {});

/// int_{S^d} rho_bar^m dS in closed form.
double entropy_rho_bar(int d, double m);

double energy_singular(double alpha, double kappa, int d, double m);

/// Energy of (1 - t) delta + (t / |S^d|) dS.
double delta_mixture_energy(double t, double kappa, int d, double m);

struct SecondVariation {
  double gap = 0.0;                  // kappa1 - kappa; > 0 means locally stable
  double trial_functional = 0.0;     // F[<x, e>] by quadrature
  double infimum_functional = 0.0;   // (d + 1) / |S^d|
  double kappa_from_trial = 0.0;     // m |S^d|^{2-m} F[<x, e>]
};
SecondVariation second_variation_gap(double kappa, int d, double m, const Tolerances& tol = {});

/// Energy of the upper measure-valued branch at kappa, or nullopt when no
/// alpha root exists.
std::optional<double> energy_singular_upper(double kappa, int d, double m, const Tolerances& tol = {});

/// Case iii: the kappa in (kappa3, kappa1) where the uniform state and the
/// upper measure-valued branch have equal energy, by bisection to 1e-10.
double kappa_c(int d, double m, const Tolerances& tol = {});

/// critical_set() with kappa_c filled in for case iii.
CriticalSet critical_set_with_kappa_c(int d, double m, const Tolerances& tol = {});

EnergyReport classify_minimizer(double kappa, int d, double m, const Tolerances& tol = {});

/// Same, reusing a precomputed critical set (from critical_set_with_kappa_c).
EnergyReport classify_minimizer(double kappa, int d, double m, const CriticalSet& critical,
                                const Tolerances& tol = {});

}  // namespace onsager
