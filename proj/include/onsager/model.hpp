#pragma once

#include <optional>
#include <string_view>

namespace onsager {

/// Distance from a regime threshold below which m is refused.
inline constexpr double kThresholdExclusion = 1e-9;

struct ModelParams {
  int d = 2;           // dimension of the sphere S^d
  double m = 0.5;      // diffusion exponent, 0 < m < 1
  double kappa = 1.0;  // interaction strength, > 0
};

/// The three m-ranges with qualitatively different phase diagrams.
///   CaseI:   1 - 2/d       < m < 1
///   CaseII:  1 - 2/(d-1)   < m < 1 - 2/d
///   CaseIII: 0             < m < 1 - 2/(d-1)
enum class RegimeTag { CaseI, CaseII, CaseIII };

std::string_view to_string(RegimeTag tag);

struct Regime {
  RegimeTag tag = RegimeTag::CaseI;
  std::optional<double> threshold_low;  // 1 - 2/(d-1); absent for d = 1
  double threshold_high = 0.0;          // 1 - 2/d
};

struct SphereGeometry {
  double area_Sd = 0.0;         // |S^d|
  double ball_volume_wd = 0.0;  // w_d, volume of the unit d-ball
  double area_Sdm1 = 0.0;       // |S^{d-1}| = d * w_d
};

/// Throws InvalidParam unless d >= 1 and 0 < m < 1.
void validate_dm(int d, double m);

/// Throws InvalidParam for a bad (d, m, kappa) and ThresholdDegenerate when m
/// sits within kThresholdExclusion of 1-2/d or 1-2/(d-1).
void validate(const ModelParams& params);

Regime classify_regime(int d, double m);

SphereGeometry sphere_geometry(int d);

/// True when the regular density with a point singularity is integrable,
/// i.e. m < 1 - 2/d. Only meaningful for valid (d, m).
bool singular_branch_integrable(int d, double m);

}  // namespace onsager
