#include "onsager/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "onsager/quadrature.hpp"
#include "onsager/roots.hpp"

namespace onsager {

namespace {

constexpr double kTransitionTol = 1e-12;
constexpr double kRouteAgreement = 1e-8;
constexpr double kKappaCTol = 1e-10;

}  // namespace

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::Uniform: return "uniform";
    case Branch::FullySupported: return "fully_supported";
    case Branch::SingularUpper: return "singular_upper";
    case Branch::SingularLower: return "singular_lower";
  }
  return "unknown";
}

double energy_uniform(double kappa, int d, double m) {
  validate_dm(d, m);
  const double area = sphere_geometry(d).area_Sd;
  return std::pow(area, 1.0 - m) / (m - 1.0) + 0.5 * kappa;
}

G1G2Value g1g2(double eta, int d, double m, const Tolerances& tol) { return g1g2_gap(eta - 1.0, d, m, tol); }

G1G2Value g1g2_gap(double gap, int d, double m, const Tolerances& tol) {
  validate_dm(d, m);
  const double q = density_exponent(m);
  const double i0 = theta_integral({gap, q, 0, d}, tol.rel_tol);
  const double i1 = theta_integral({gap, q, 1, d}, tol.rel_tol);
  const double im = theta_integral({gap, m / (m - 1.0), 0, d}, tol.rel_tol);
  const double dwd = sphere_geometry(d).area_Sdm1;
  const double g1 = m * i1 + 2.0 * im;
  const double g2 = 0.5 / ((1.0 - m) * std::pow(dwd, m - 1.0) * std::pow(i0, m));
  return {1.0 + gap, g1 * g2};
}

double entropy_fully_supported(const FullySupportedState& state, int d, double m, const Tolerances& tol) {
  const int sin_power = d - 1;
  auto integrand = [&](double theta) {
    const double w = sin_power == 0 ? 1.0 : std::pow(std::sin(theta), sin_power);
    return std::pow(rho_kappa_density(state, theta, d, m), m) * w;
  };
  const double half_pi = 0.5 * std::numbers::pi;
  const double quad_tol = std::min(tol.rel_tol, 1e-12);
  const QuadratureResult a = gauss_kronrod(integrand, 0.0, half_pi, quad_tol);
  const QuadratureResult b = gauss_kronrod(integrand, half_pi, std::numbers::pi, quad_tol);
  if (!a.converged || !b.converged) {
    throw Error(ErrorKind::ToleranceNotMet, "entropy quadrature of rho_kappa did not converge");
  }
  return sphere_geometry(d).area_Sdm1 * (a.value + b.value);
}

FullySupportedEnergy energy_fully_supported_routes(const FullySupportedState& state, int d, double m,
                                                   const Tolerances& tol) {
  FullySupportedEnergy out;
  const double kappa = state.kappa;
  out.direct = entropy_fully_supported(state, d, m, tol) / (m - 1.0) - 0.5 * kappa * state.s * state.s + 0.5 * kappa;
  out.identity = 0.5 * kappa - g1g2_gap(state.gap, d, m, tol).value;
  return out;
}

double energy_fully_supported(const FullySupportedState& state, int d, double m, const Tolerances& tol) {
  const FullySupportedEnergy e = energy_fully_supported_routes(state, d, m, tol);
  // both routes carry kappa/2 terms, so kappa sets the cancellation scale
  const double scale = std::max({1.0, std::abs(e.direct), state.kappa});
  if (std::abs(e.direct - e.identity) > kRouteAgreement * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "energy routes disagree at kappa = " << state.kappa << ": direct " << e.direct << ", identity "
       << e.identity;
    throw Error(ErrorKind::ToleranceNotMet, os.str());
  }
  return e.direct;
}

double entropy_rho_bar(int d, double m) {
  validate_dm(d, m);
  const double q = density_exponent(m);
  const double dwd = sphere_geometry(d).area_Sdm1;
  // int rho_bar^m dS = (d w_d)^{1-m} I(1, m/(m-1), 0) / I(1, q, 0)^m
  const double log_value = (1.0 - m) * std::log(dwd) + std::log(eta1_closed_form(m / (m - 1.0), 0, d)) -
                           m * std::log(eta1_closed_form(q, 0, d));
  return std::exp(log_value);
}

double energy_singular(double alpha, double kappa, int d, double m) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidParam, "alpha must lie in [0, 1)");
  }
  const double com = singular_com_norm(alpha, d, m);
  return std::pow(1.0 - alpha, m) * entropy_rho_bar(d, m) / (m - 1.0) - 0.5 * kappa * com * com + 0.5 * kappa;
}

double delta_mixture_energy(double t, double kappa, int d, double m) {
  validate_dm(d, m);
  if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorKind::InvalidParam, "t must lie in [0, 1)");
  const double area = sphere_geometry(d).area_Sd;
  return std::pow(t, m) / ((m - 1.0) * std::pow(area, m - 1.0)) - 0.5 * kappa * (1.0 - t) * (1.0 - t) + 0.5 * kappa;
}

SecondVariation second_variation_gap(double kappa, int d, double m, const Tolerances& tol) {
  validate({d, m, kappa});
  const SphereGeometry geo = sphere_geometry(d);
  const int sin_power = d - 1;
  // int <x, e>^2 dS = d w_d int cos^2 t sin^{d-1} t dt; the same number is the
  // e-component of int x <x, e> dS, so F[<x, e>] = 1 / that.
  auto integrand = [&](double theta) {
    const double c = std::cos(theta);
    return c * c * (sin_power == 0 ? 1.0 : std::pow(std::sin(theta), sin_power));
  };
  const QuadratureResult r = gauss_kronrod(integrand, 0.0, std::numbers::pi, std::min(tol.rel_tol, 1e-12));
  if (!r.converged) throw Error(ErrorKind::ToleranceNotMet, "second moment quadrature did not converge");
  const double second_moment = geo.area_Sdm1 * r.value;

  SecondVariation out;
  out.gap = kappa1(d, m) - kappa;
  out.trial_functional = second_moment / (second_moment * second_moment);
  out.infimum_functional = (d + 1) / geo.area_Sd;
  out.kappa_from_trial = m * std::pow(geo.area_Sd, 2.0 - m) * out.trial_functional;
  return out;
}

std::optional<double> energy_singular_upper(double kappa, int d, double m, const Tolerances& tol) {
  const AlphaRoots roots = alpha_roots(kappa, d, m, tol);
  if (roots.values.empty()) return std::nullopt;
  return energy_singular(roots.values.back(), kappa, d, m);
}

double kappa_c(int d, double m, const Tolerances& tol) {
  const Regime regime = classify_regime(d, m);
  if (regime.tag != RegimeTag::CaseIII) {
    std::ostringstream os;
    os << "kappa_c exists only in case iii; (d, m) = (" << d << ", " << m << ") is " << to_string(regime.tag);
    throw Error(ErrorKind::WrongRegime, os.str());
  }
  const double lo = kappa3_and_alpha_bar(d, m).kappa3;
  const double hi = kappa1(d, m);
  auto gap = [&](double kappa) {
    const auto upper = energy_singular_upper(kappa, d, m, tol);
    if (!upper) throw Error(ErrorKind::BracketFailure, "upper measure-valued branch missing inside (kappa3, kappa1)");
    return energy_uniform(kappa, d, m) - *upper;
  };
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (!(g_lo < 0.0 && g_hi > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "E_uniform - E_singular does not change sign on [kappa3, kappa1]: " << g_lo << " at " << lo << ", " << g_hi
       << " at " << hi;
    throw Error(ErrorKind::BracketFailure, os.str());
  }
  const RootResult r = bisect_root(gap, lo, hi, g_lo, kKappaCTol);
  if (!r.converged) throw Error(ErrorKind::ToleranceNotMet, "kappa_c bisection did not converge");
  return r.x;
}

CriticalSet critical_set_with_kappa_c(int d, double m, const Tolerances& tol) {
  CriticalSet out = critical_set(d, m);
  if (out.kappa3) out.kappa_c = kappa_c(d, m, tol);
  return out;
}

EnergyReport classify_minimizer(double kappa, int d, double m, const Tolerances& tol) {
  return classify_minimizer(kappa, d, m, critical_set_with_kappa_c(d, m, tol), tol);
}

EnergyReport classify_minimizer(double kappa, int d, double m, const CriticalSet& critical, const Tolerances& tol) {
  validate({d, m, kappa});
  const Regime regime = classify_regime(d, m);

  EnergyReport report;
  report.kappa = kappa;
  report.e_uniform = energy_uniform(kappa, d, m);

  const KappaWindow window = fully_supported_window(d, m);
  if (kappa > window.lo && kappa < window.hi) {
    report.e_fully_supported = energy_fully_supported(fully_supported_state(kappa, d, m, tol), d, m, tol);
  }
  if (regime.tag != RegimeTag::CaseI) {
    const AlphaRoots roots = alpha_roots(kappa, d, m, tol);
    if (!roots.values.empty()) report.e_singular_upper = energy_singular(roots.values.back(), kappa, d, m);
    if (roots.values.size() == 2) report.e_singular_lower = energy_singular(roots.values.front(), kappa, d, m);
  }

  // argmin over the populated branches, ties broken in declaration order
  const std::array<std::pair<Branch, std::optional<double>>, 4> candidates = {{
      {Branch::Uniform, report.e_uniform},
      {Branch::FullySupported, report.e_fully_supported},
      {Branch::SingularUpper, report.e_singular_upper},
      {Branch::SingularLower, report.e_singular_lower},
  }};
  double best = report.e_uniform;
  for (const auto& [branch, energy] : candidates) {
    if (energy && *energy < best) {
      best = *energy;
      report.minimizer = branch;
    }
  }
  for (const auto& [branch, energy] : candidates) {
    if (energy && branch != report.minimizer && std::abs(*energy - best) <= kTransitionTol * std::max(1.0, std::abs(best))) {
      report.degenerate = true;
      report.competitor = branch;
      break;
    }
  }

  auto near = [&](std::optional<double> critical_value) {
    return critical_value && std::abs(kappa - *critical_value) <= kTransitionTol * *critical_value;
  };
  if (!report.degenerate) {
    if (regime.tag != RegimeTag::CaseIII && near(critical.kappa1)) {
      report.degenerate = true;
      report.competitor = Branch::FullySupported;
    } else if (regime.tag == RegimeTag::CaseII && near(critical.kappa2)) {
      report.degenerate = true;
      report.competitor = report.minimizer == Branch::SingularUpper ? Branch::FullySupported : Branch::SingularUpper;
    } else if (regime.tag == RegimeTag::CaseIII && near(critical.kappa_c)) {
      report.degenerate = true;
      report.competitor = report.minimizer == Branch::Uniform ? Branch::SingularUpper : Branch::Uniform;
    }
  }
  return report;
}

}  // namespace onsager
