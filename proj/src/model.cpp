#include "onsager/model.hpp"

#include <cmath>
#include <sstream>

#include "onsager/error.hpp"
#include "onsager/quadrature.hpp"

namespace onsager {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::ThresholdDegenerate: return "ThresholdDegenerate";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::WrongRegime: return "WrongRegime";
    case ErrorKind::BracketFailure: return "BracketFailure";
  }
  return "Unknown";
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::CaseI: return "case_i";
    case RegimeTag::CaseII: return "case_ii";
    case RegimeTag::CaseIII: return "case_iii";
  }
  return "unknown";
}

void validate_dm(int d, double m) {
  if (d < 1) {
    throw Error(ErrorKind::InvalidParam, "dimension d must be >= 1, got " + std::to_string(d));
  }
  if (!(m > 0.0 && m < 1.0)) {
    std::ostringstream os;
    os << "diffusion exponent m must lie in (0, 1), got " << m;
    throw Error(ErrorKind::InvalidParam, os.str());
  }
}

void validate(const ModelParams& params) {
  validate_dm(params.d, params.m);
  if (!(params.kappa > 0.0) || !std::isfinite(params.kappa)) {
    std::ostringstream os;
    os << "interaction strength kappa must be positive and finite, got " << params.kappa;
    throw Error(ErrorKind::InvalidParam, os.str());
  }
  (void)classify_regime(params.d, params.m);
}

Regime classify_regime(int d, double m) {
  validate_dm(d, m);
  Regime regime;
  regime.threshold_high = 1.0 - 2.0 / d;
  if (d > 1) regime.threshold_low = 1.0 - 2.0 / (d - 1);

  auto near = [m](double threshold) { return std::abs(m - threshold) < kThresholdExclusion; };
  if (near(regime.threshold_high) || (regime.threshold_low && near(*regime.threshold_low))) {
    std::ostringstream os;
    os.precision(17);
    os << "m = " << m << " is within " << kThresholdExclusion << " of a regime threshold for d = " << d;
    throw Error(ErrorKind::ThresholdDegenerate, os.str());
  }

  if (m > regime.threshold_high) {
    regime.tag = RegimeTag::CaseI;
  } else if (regime.threshold_low && m > *regime.threshold_low) {
    regime.tag = RegimeTag::CaseII;
  } else {
    regime.tag = RegimeTag::CaseIII;
  }
  return regime;
}

SphereGeometry sphere_geometry(int d) {
  if (d < 1) {
    throw Error(ErrorKind::InvalidParam, "dimension d must be >= 1, got " + std::to_string(d));
  }
  constexpr double log_pi = 1.1447298858494002;  // ln(pi)
  const double half = 0.5 * (d + 1);
  SphereGeometry g;
  g.area_Sd = 2.0 * std::exp(half * log_pi - log_gamma(half));
  g.ball_volume_wd = std::exp(0.5 * d * log_pi - log_gamma(0.5 * d + 1.0));
  g.area_Sdm1 = d * g.ball_volume_wd;
  return g;
}

bool singular_branch_integrable(int d, double m) { return m < 1.0 - 2.0 / d; }

}  // namespace onsager
