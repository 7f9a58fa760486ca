#include "onsager/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "onsager/error.hpp"

namespace onsager {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "log_gamma requires a finite positive argument, got " << x;
    throw Error(ErrorKind::InvalidParam, os.str());
  }
#if defined(__GLIBC__)
  // Reentrant variant: std::lgamma writes the global signgam.
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace {

constexpr int kMaxLevel = 12;

void check_spec(const ThetaIntegralSpec& spec, double rel_tol) {
  std::ostringstream os;
  if (!(spec.gap >= 0.0) || !std::isfinite(spec.gap)) {
    os << "eta - 1 must be finite and >= 0, got " << spec.gap;
  } else if (spec.p != 0 && spec.p != 1) {
    os << "power of cos must be 0 or 1, got " << spec.p;
  } else if (spec.d < 1) {
    os << "dimension must be >= 1, got " << spec.d;
  } else if (!std::isfinite(spec.q)) {
    os << "exponent q must be finite";
  } else if (!(rel_tol > 0.0 && rel_tol <= 1e-6)) {
    os << "rel_tol must lie in (0, 1e-6], got " << rel_tol;
  } else {
    return;
  }
  throw Error(ErrorKind::InvalidParam, os.str());
}

void check_integrable_at_one(double q, int d) {
  if (!(2.0 * q + d > 0.0)) {
    std::ostringstream os;
    os << "integrand (1 - cos t)^q sin^{d-1} t is not integrable at t = 0 for q = " << q << ", d = " << d;
    throw Error(ErrorKind::NotIntegrable, os.str());
  }
}

double finish(const QuadratureResult& r, const ThetaIntegralSpec& spec, double rel_tol) {
  if (!r.converged || !std::isfinite(r.value)) {
    std::ostringstream os;
    os.precision(17);
    os << "theta integral (eta-1=" << spec.gap << ", q=" << spec.q << ", p=" << spec.p << ", d=" << spec.d
       << ") did not reach rel_tol " << rel_tol << " (estimate " << r.value << ", error " << r.error << ")";
    throw Error(ErrorKind::ToleranceNotMet, os.str());
  }
  return r.value;
}

// eta > 1: fold [pi/2, pi] onto [0, pi/2] via t -> pi - t.
double folded_integral(const ThetaIntegralSpec& spec, double rel_tol) {
  const double gap = spec.gap;
  const double eta = 1.0 + spec.gap;
  const double q = spec.q;
  const int sin_power = spec.d - 1;
  const bool odd = spec.p == 1;

  auto integrand = [=](double, double from_zero, double to_half_pi) {
    const double c = std::sin(to_half_pi);  // cos t
    const double half = std::sin(0.5 * from_zero);
    const double minus = gap + 2.0 * half * half;  // eta - cos t, no cancellation near t = 0
    const double plus = eta + c;
    const double weight = sin_power == 0 ? 1.0 : std::pow(std::sin(from_zero), sin_power);
    if (!odd) return weight * (std::pow(minus, q) + std::pow(plus, q));
    const double ratio = 2.0 * c / plus;
    const double log_ratio = ratio < 0.5 ? std::log1p(-ratio) : std::log(minus) - std::log(plus);
    return weight * c * std::pow(plus, q) * std::expm1(q * log_ratio);
  };
  return finish(tanh_sinh(integrand, 0.0, 0.5 * std::numbers::pi, rel_tol, kMaxLevel), spec, rel_tol);
}

// eta == 1: with y = sin(t/2),
//   I = 2^{q+d} int_0^1 y^a (1 - y^2)^{(d-2)/2} (1 - 2y^2)^p dy,   a = 2q + d - 1,
// and z = y^{a+1} turns the y^a weight into dz/(a+1).
double singular_integral(const ThetaIntegralSpec& spec, double rel_tol) {
  check_integrable_at_one(spec.q, spec.d);
  const double b = 2.0 * spec.q + spec.d;
  const double half_power = 0.5 * (spec.d - 2);
  const bool odd = spec.p == 1;

  auto integrand = [=](double z, double from_zero, double to_one) {
    const double log_z = z < 0.5 ? std::log(from_zero) : std::log1p(-to_one);
    const double log_y = log_z / b;
    const double y = std::exp(log_y);
    const double one_minus_y2 = -std::expm1(log_y) * (1.0 + y);
    double value = half_power == 0.0 ? 1.0 : std::pow(one_minus_y2, half_power);
    if (odd) value *= 1.0 - 2.0 * y * y;
    return value;
  };
  const QuadratureResult r = tanh_sinh(integrand, 0.0, 1.0, rel_tol, kMaxLevel);
  const double scale = std::exp((spec.q + spec.d) * std::numbers::ln2 - std::log(b));
  return scale * finish(r, spec, rel_tol);
}

}  // namespace

double theta_integral(const ThetaIntegralSpec& spec, double rel_tol) {
  check_spec(spec, rel_tol);
  if (spec.gap == 0.0) return singular_integral(spec, rel_tol);
  return folded_integral(spec, rel_tol);
}

double eta1_closed_form(double q, int p, int d) {
  if (p != 0 && p != 1) throw Error(ErrorKind::InvalidParam, "power of cos must be 0 or 1");
  if (d < 1) throw Error(ErrorKind::InvalidParam, "dimension must be >= 1");
  check_integrable_at_one(q, d);
  const double log_i0 = (q + d - 1.0) * std::numbers::ln2 + log_gamma(q + 0.5 * d) + log_gamma(0.5 * d) -
                        log_gamma(q + d);
  const double i0 = std::exp(log_i0);
  return p == 0 ? i0 : i0 * (-q / (q + d));
}

}  // namespace onsager
