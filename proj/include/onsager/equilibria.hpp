#pragma once

#include <optional>
#include <vector>

#include "onsager/error.hpp"
#include "onsager/model.hpp"

namespace onsager {

struct UniformState {
  double density_value = 0.0;  // 1 / |S^d|
  double lambda_uni = 0.0;     // (m/(m-1)) |S^d|^{1-m}
};

/// Fully supported equilibrium
///   rho(t) = (m/(1-m))^{1/(1-m)} (-lambda - kappa s cos t)^{1/(m-1)},
/// parametrised by eta with lambda = -kappa s eta.
struct FullySupportedState {
  double kappa = 0.0;
  double eta = 0.0;     // > 1
  double gap = 0.0;     // eta - 1, kept separately; near kappa2 it drops far below 1e-16
  double s = 0.0;       // norm of the centre of mass
  double lambda = 0.0;  // -kappa * s * eta
};

/// alpha * delta_{x0} + (1 - alpha) * rho_bar, with rho_bar independent of kappa.
struct SingularState {
  double kappa = 0.0;
  double alpha = 0.0;  // mass of the atom
  double s_bar = 0.0;  // centre-of-mass norm of rho_bar
};

struct CriticalSet {
  double kappa1 = 0.0;
  std::optional<double> kappa2;     // CaseII / CaseIII
  std::optional<double> kappa3;     // CaseIII
  std::optional<double> alpha_bar;  // CaseIII
  std::optional<double> kappa_c;    // CaseIII, filled in by the energy module
};

/// Roots of f_kappa(alpha) = g(alpha) in (0, 1), ascending. A tangency is
/// reported once with double_root set.
struct AlphaRoots {
  std::vector<double> values;
  bool double_root = false;
};

UniformState uniform_state(int d, double m);

/// Stability threshold of the uniform state, m (d+1) / |S^d|^{m-1}.
double kappa1(int d, double m);

/// H(eta) = ((1-m)/m) (d w_d)^{m-1} I1(eta) I0(eta)^{m-2}; kappa^{-1} = H(eta)
/// selects the fully supported branch.
double H(double eta, int d, double m, const Tolerances& tol = {});

/// H at eta = 1 + gap.
double H_gap(double gap, int d, double m, const Tolerances& tol = {});

/// s(eta) = I1(eta) / I0(eta), the centre-of-mass norm along the branch.
double s_of_eta(double eta, int d, double m, const Tolerances& tol = {});

double s_gap(double gap, int d, double m, const Tolerances& tol = {});

/// Open interval of kappa on which the fully supported branch exists:
/// CaseI (kappa1, inf), CaseII (kappa1, kappa2), CaseIII (kappa2, kappa1).
struct KappaWindow {
  double lo = 0.0;
  double hi = 0.0;  // +inf for CaseI
};
KappaWindow fully_supported_window(int d, double m);

/// eta - 1 for the unique eta > 1 with kappa H(eta) = 1. The solve runs in
/// v = gap^g with a regime-dependent g <= 1, in which the residual is close to
/// linear at v = 0, where its value is known exactly: -1 in case i and
/// kappa/kappa2 - 1 otherwise. kappa == kappa2 (to root tolerance) returns 0.
double solve_gap(double kappa, int d, double m, const Tolerances& tol = {});

/// 1 + solve_gap(); loses the gap once it falls below machine epsilon.
double solve_eta(double kappa, int d, double m, const Tolerances& tol = {});

FullySupportedState fully_supported_state(double kappa, int d, double m, const Tolerances& tol = {});

double rho_kappa_density(const FullySupportedState& state, double theta, int d, double m);

/// 1 / ((1-m) d - 1); requires m < 1 - 2/d.
double s_bar(int d, double m);

/// s_bar as the ratio of the eta = 1 integrals, by quadrature.
double s_bar_quadrature(int d, double m, const Tolerances& tol = {});

/// Closed Gamma-function form of 1/H(1), evaluated in log space.
double kappa2(int d, double m);

/// 1/H(1) with both integrals taken by quadrature.
double kappa2_quadrature(int d, double m, const Tolerances& tol = {});

/// f_kappa(alpha) - g(alpha) = kappa (s_bar + alpha (1 - s_bar)) - (1-alpha)^{m-1} kappa2 s_bar.
double alpha_residual(double alpha, double kappa, int d, double m);

AlphaRoots alpha_roots(double kappa, int d, double m, const Tolerances& tol = {});

struct FoldPoint {
  double kappa3 = 0.0;
  double alpha_bar = 0.0;
};
FoldPoint kappa3_and_alpha_bar(int d, double m);

/// Normalised regular part of the measure-valued equilibria; +inf at theta = 0.
double rho_bar_density(double theta, int d, double m);

/// Centre-of-mass norm alpha + (1 - alpha) s_bar of a singular state.
double singular_com_norm(double alpha, int d, double m);

/// Lagrange multiplier of a singular state reconstructed from the mass
/// constraint of its regular part.
double singular_lambda(double alpha, int d, double m);

/// kappa1, kappa2, kappa3 and alpha_bar as the regime allows; kappa_c is left
/// empty here (see energy.hpp).
CriticalSet critical_set(int d, double m);

}  // namespace onsager
