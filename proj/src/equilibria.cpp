#include "onsager/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "onsager/quadrature.hpp"
#include "onsager/roots.hpp"

namespace onsager {

namespace {

// Upper end of the gap bracket; H there matches 1/kappa1 to ~1e-18.
constexpr double kGapMax = 1e9;
// The upper alpha root is searched below 1 - kAlphaCap.
constexpr double kAlphaCap = 1e-12;
// Sub-bracket roots closer than this are one tangential root.
constexpr double kDoubleRootGap = 1e-6;

void require_singular_integrable(int d, double m) {
  if (!singular_branch_integrable(d, m)) {
    std::ostringstream os;
    os << "the eta = 1 integrals diverge for m = " << m << " >= 1 - 2/d with d = " << d;
    throw Error(ErrorKind::NotIntegrable, os.str());
  }
}

void check_gap(double gap, int d, double m) {
  if (!(gap >= 0.0) || !std::isfinite(gap)) {
    std::ostringstream os;
    os << "eta must be finite and >= 1, got eta - 1 = " << gap;
    throw Error(ErrorKind::InvalidParam, os.str());
  }
  if (gap == 0.0) require_singular_integrable(d, m);
}

struct BranchIntegrals {
  double i0 = 0.0;
  double i1 = 0.0;
};

BranchIntegrals branch_integrals(double gap, int d, double m, const Tolerances& tol) {
  const double q = density_exponent(m);
  return {theta_integral({gap, q, 0, d}, tol.rel_tol), theta_integral({gap, q, 1, d}, tol.rel_tol)};
}

double log_H_from(const BranchIntegrals& in, int d, double m) {
  const double dwd = sphere_geometry(d).area_Sdm1;
  return std::log((1.0 - m) / m) + (m - 1.0) * std::log(dwd) + std::log(in.i1) + (m - 2.0) * std::log(in.i0);
}

std::string window_text(const KappaWindow& w) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << w.lo << ", " << w.hi << ")";
  return os.str();
}

}  // namespace

UniformState uniform_state(int d, double m) {
  validate_dm(d, m);
  const double area = sphere_geometry(d).area_Sd;
  return {1.0 / area, (m / (m - 1.0)) * std::pow(area, 1.0 - m)};
}

double kappa1(int d, double m) {
  validate_dm(d, m);
  return m * (d + 1) / std::pow(sphere_geometry(d).area_Sd, m - 1.0);
}

double H_gap(double gap, int d, double m, const Tolerances& tol) {
  validate_dm(d, m);
  check_gap(gap, d, m);
  return std::exp(log_H_from(branch_integrals(gap, d, m, tol), d, m));
}

double H(double eta, int d, double m, const Tolerances& tol) { return H_gap(eta - 1.0, d, m, tol); }

double s_gap(double gap, int d, double m, const Tolerances& tol) {
  validate_dm(d, m);
  check_gap(gap, d, m);
  const BranchIntegrals in = branch_integrals(gap, d, m, tol);
  return in.i1 / in.i0;
}

double s_of_eta(double eta, int d, double m, const Tolerances& tol) { return s_gap(eta - 1.0, d, m, tol); }

KappaWindow fully_supported_window(int d, double m) {
  const Regime regime = classify_regime(d, m);
  const double k1 = kappa1(d, m);
  switch (regime.tag) {
    case RegimeTag::CaseI: return {k1, std::numeric_limits<double>::infinity()};
    case RegimeTag::CaseII: return {k1, kappa2(d, m)};
    case RegimeTag::CaseIII: return {kappa2(d, m), k1};
  }
  return {};
}

double solve_gap(double kappa, int d, double m, const Tolerances& tol) {
  validate(ModelParams{d, m, kappa});
  const Regime regime = classify_regime(d, m);
  const KappaWindow window = fully_supported_window(d, m);

  if (regime.tag != RegimeTag::CaseI) {
    const double k2 = kappa2(d, m);
    if (std::abs(kappa - k2) <= tol.root_tol * k2) return 0.0;
  }
  if (!(kappa > window.lo && kappa < window.hi)) {
    std::ostringstream os;
    os.precision(17);
    os << "kappa = " << kappa << " lies outside the fully supported window " << window_text(window);
    throw Error(ErrorKind::OutOfWindow, os.str());
  }

  // H(1 + gap) - H(1) behaves like gap^{(2q+d)/2} in cases ii/iii; in case i
  // H itself vanishes like gap^{-(2q+d)(1-m)/2}.
  const double beta = 0.5 * (2.0 * density_exponent(m) + d);
  const double power = std::min(1.0, regime.tag == RegimeTag::CaseI ? -beta * (1.0 - m) : beta);
  const double at_zero = regime.tag == RegimeTag::CaseI ? -1.0 : kappa / kappa2(d, m) - 1.0;
  auto gap_of = [&](double v) { return std::pow(v, 1.0 / power); };
  auto residual = [&](double v) { return v == 0.0 ? at_zero : kappa * H_gap(gap_of(v), d, m, tol) - 1.0; };

  const double v_max = std::pow(kGapMax, power);
  const double f_max = residual(v_max);
  if ((at_zero > 0.0) == (f_max > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "no sign change of kappa H(eta) - 1 on eta - 1 in [0, " << kGapMax << "] for kappa = " << kappa;
    throw Error(ErrorKind::BracketFailure, os.str());
  }
  const RootResult root = brent_root(residual, 0.0, v_max, at_zero, f_max, tol.root_tol, 0.0);
  if (!root.converged) throw Error(ErrorKind::ToleranceNotMet, "eta root solve did not converge");
  if (root.x == 0.0) {
    std::ostringstream os;
    os << "kappa = " << kappa << " is indistinguishable from kappa2 at the requested root tolerance";
    throw Error(ErrorKind::ToleranceNotMet, os.str());
  }
  return gap_of(root.x);
}

double solve_eta(double kappa, int d, double m, const Tolerances& tol) { return 1.0 + solve_gap(kappa, d, m, tol); }

FullySupportedState fully_supported_state(double kappa, int d, double m, const Tolerances& tol) {
  FullySupportedState state;
  state.kappa = kappa;
  state.gap = solve_gap(kappa, d, m, tol);
  state.eta = 1.0 + state.gap;
  state.s = s_gap(state.gap, d, m, tol);
  state.lambda = -kappa * state.s * state.eta;
  return state;
}

double rho_kappa_density(const FullySupportedState& state, double theta, int d, double m) {
  (void)d;
  const double half = std::sin(0.5 * theta);
  // -lambda - kappa s cos t = kappa s ((eta - 1) + 2 sin^2(t/2))
  const double base = state.kappa * state.s * (state.gap + 2.0 * half * half);
  const double prefactor = std::pow(m / (1.0 - m), 1.0 / (1.0 - m));
  return prefactor * std::pow(base, density_exponent(m));
}

double s_bar(int d, double m) {
  validate_dm(d, m);
  require_singular_integrable(d, m);
  return 1.0 / ((1.0 - m) * d - 1.0);
}

double s_bar_quadrature(int d, double m, const Tolerances& tol) {
  validate_dm(d, m);
  require_singular_integrable(d, m);
  const BranchIntegrals in = branch_integrals(0.0, d, m, tol);
  return in.i1 / in.i0;
}

double kappa2(int d, double m) {
  validate_dm(d, m);
  require_singular_integrable(d, m);
  const double q = density_exponent(m);
  const double area = sphere_geometry(d).area_Sd;
  const double log_gamma_ratio = 0.5 * std::log(std::numbers::pi) + log_gamma(q + d) - log_gamma(q + 0.5 * d) -
                                 log_gamma(0.5 * (d + 1));
  const double log_k2 = std::log(m) + std::log(q + d) - (1.0 + (d - 1.0) * (m - 1.0)) * std::numbers::ln2 -
                        (m - 1.0) * std::log(area) + (m - 1.0) * log_gamma_ratio;
  return std::exp(log_k2);
}

double kappa2_quadrature(int d, double m, const Tolerances& tol) {
  validate_dm(d, m);
  require_singular_integrable(d, m);
  return std::exp(-log_H_from(branch_integrals(0.0, d, m, tol), d, m));
}

double alpha_residual(double alpha, double kappa, int d, double m) {
  const double sb = s_bar(d, m);
  return kappa * (sb + alpha * (1.0 - sb)) - std::pow(1.0 - alpha, m - 1.0) * kappa2(d, m) * sb;
}

AlphaRoots alpha_roots(double kappa, int d, double m, const Tolerances& tol) {
  validate({d, m, kappa});
  require_singular_integrable(d, m);
  const Regime regime = classify_regime(d, m);
  const double sb = s_bar(d, m);
  const double k2 = kappa2(d, m);

  auto phi = [&](double alpha) {
    return kappa * (sb + alpha * (1.0 - sb)) - std::pow(1.0 - alpha, m - 1.0) * k2 * sb;
  };
  const double f_tol = tol.root_tol * std::max(kappa, k2 * sb);
  auto solve = [&](double lo, double hi, double f_lo, double f_hi) {
    const RootResult r = brent_root(phi, lo, hi, f_lo, f_hi, f_tol, 1e-13);
    if (!r.converged) throw Error(ErrorKind::ToleranceNotMet, "alpha root solve did not converge");
    return r.x;
  };

  AlphaRoots out;
  if (regime.tag == RegimeTag::CaseIII) {
    const FoldPoint fold = kappa3_and_alpha_bar(d, m);
    if (std::abs(kappa - fold.kappa3) <= tol.root_tol * fold.kappa3) {
      out.values.push_back(fold.alpha_bar);
      out.double_root = true;
      return out;
    }
  }

  const double cap = 1.0 - kAlphaCap;
  const double f_cap = phi(cap);
  if (f_cap >= 0.0) {
    std::ostringstream os;
    os << "kappa = " << kappa << " pushes the upper alpha root beyond 1 - " << kAlphaCap;
    throw Error(ErrorKind::ToleranceNotMet, os.str());
  }

  // phi is concave; its maximiser solves kappa (1 - s_bar) = (1-m) kappa2 s_bar (1-alpha)^{m-2}.
  const double slope_ratio = kappa * (1.0 - sb) / ((1.0 - m) * k2 * sb);
  const double alpha_star = 1.0 - std::pow(slope_ratio, 1.0 / (m - 2.0));
  const double f0 = phi(0.0);

  if (f0 > 0.0) {
    const double lo = std::max(0.0, alpha_star);
    out.values.push_back(solve(lo, cap, phi(lo), f_cap));
    return out;
  }
  if (alpha_star <= 0.0 || alpha_star >= cap) return out;

  const double f_star = phi(alpha_star);
  if (f_star < 0.0) return out;
  if (f_star == 0.0) {
    out.values.push_back(alpha_star);
    out.double_root = true;
    return out;
  }
  const double upper = solve(alpha_star, cap, f_star, f_cap);
  if (f0 == 0.0) {
    // kappa == kappa2: the lower root is alpha = 0, outside the open interval.
    out.values.push_back(upper);
    return out;
  }
  const double lower = solve(0.0, alpha_star, f0, f_star);
  if (upper - lower < kDoubleRootGap) {
    out.values.push_back(0.5 * (lower + upper));
    out.double_root = true;
  } else {
    out.values = {lower, upper};
  }
  return out;
}

FoldPoint kappa3_and_alpha_bar(int d, double m) {
  const Regime regime = classify_regime(d, m);
  if (regime.tag != RegimeTag::CaseIII) {
    std::ostringstream os;
    os << "the fold point kappa3 exists only in case iii; (d, m) = (" << d << ", " << m << ") is "
       << to_string(regime.tag);
    throw Error(ErrorKind::WrongRegime, os.str());
  }
  const double sb = s_bar(d, m);
  FoldPoint fold;
  fold.alpha_bar = (1.0 - 2.0 * sb + m * sb) / ((1.0 - sb) * (2.0 - m));
  fold.kappa3 = kappa2(d, m) * (1.0 - m) * sb / (1.0 - sb) * std::pow(1.0 - fold.alpha_bar, m - 2.0);
  return fold;
}

double rho_bar_density(double theta, int d, double m) {
  validate_dm(d, m);
  require_singular_integrable(d, m);
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw Error(ErrorKind::InvalidParam, "theta must lie in [0, pi]");
  }
  if (theta == 0.0) return std::numeric_limits<double>::infinity();
  const double q = density_exponent(m);
  const double half = std::sin(0.5 * theta);
  const double normaliser = sphere_geometry(d).area_Sdm1 * eta1_closed_form(q, 0, d);
  return std::pow(2.0 * half * half, q) / normaliser;
}

double singular_com_norm(double alpha, int d, double m) {
  const double sb = s_bar(d, m);
  return alpha + (1.0 - alpha) * sb;
}

double singular_lambda(double alpha, int d, double m) {
  validate_dm(d, m);
  require_singular_integrable(d, m);
  const double q = density_exponent(m);
  const double mass_integral = sphere_geometry(d).area_Sdm1 * eta1_closed_form(q, 0, d);
  const double minus_lambda =
      std::pow(mass_integral, 1.0 - m) * m * std::pow(1.0 - alpha, m) / (1.0 - m);
  return -minus_lambda;
}

CriticalSet critical_set(int d, double m) {
  const Regime regime = classify_regime(d, m);
  CriticalSet out;
  out.kappa1 = kappa1(d, m);
  if (regime.tag != RegimeTag::CaseI) out.kappa2 = kappa2(d, m);
  if (regime.tag == RegimeTag::CaseIII) {
    const FoldPoint fold = kappa3_and_alpha_bar(d, m);
    out.kappa3 = fold.kappa3;
    out.alpha_bar = fold.alpha_bar;
  }
  return out;
}

}  // namespace onsager
