#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace onsager {

/// ln Gamma(x) for x > 0. Throws InvalidParam otherwise.
double log_gamma(double x);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

/// Double-exponential (tanh-sinh) rule on [a, b].
///
/// The integrand is called as f(x, da, db) where da = x - a and db = b - x are
/// supplied without cancellation, so integrands with an algebraic endpoint
/// singularity can be written in terms of the distance to that endpoint.
/// Levels halve the step; the estimate is accepted once two consecutive levels
/// agree to rel_tol relative to the L1 norm of the integrand.
template <class F>
QuadratureResult tanh_sinh(F&& f, double a, double b, double rel_tol, int max_level = 12) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  // Past t = 6 the abscissae sit within ~1e-275 of the endpoints.
  constexpr double t_max = 6.0;
  const double half_len = 0.5 * (b - a);

  QuadratureResult result;
  double sum = 0.0;
  double l1 = 0.0;

  auto add_node = [&](double t) {
    const double s = half_pi * std::sinh(t);
    const double e = std::exp(-2.0 * s);  // s >= 0 here
    const double near = half_len * 2.0 * e / (1.0 + e);  // distance to the nearer endpoint
    const double weight = half_len * half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (near <= 0.0) return;
    const double far = 2.0 * half_len - near;
    double contribution = 0.0;
    if (t == 0.0) {
      contribution = weight * f(a + half_len, half_len, half_len);
      result.evaluations += 1;
    } else {
      const double right = f(b - near, far, near);
      const double left = f(a + near, near, far);
      contribution = weight * (left + right);
      l1 += weight * (std::abs(left) + std::abs(right));
      result.evaluations += 2;
      sum += contribution;
      return;
    }
    l1 += std::abs(contribution);
    sum += contribution;
  };

  double h = 1.0;
  for (double t = 0.0; t <= t_max; t += h) add_node(t);
  double previous = h * sum;

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= t_max; t += 2.0 * h) add_node(t);
    const double estimate = h * sum;
    result.value = estimate;
    result.error = std::abs(estimate - previous);
    if (level >= 4 && result.error <= rel_tol * h * l1) {
      result.converged = true;
      return result;
    }
    previous = estimate;
  }
  return result;
}

/// Globally adaptive 7/15-point Gauss-Kronrod rule on [a, b]. Used as an
/// independent cross-check of the tanh-sinh based integrals.
template <class F>
QuadratureResult gauss_kronrod(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                               int max_intervals = 2000) {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  struct Interval {
    double lo, hi, value, error;
    bool operator<(const Interval& other) const { return error < other.error; }
  };

  QuadratureResult result;
  auto rule = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    const double fc = f(c);
    double kronrod = wk[7] * fc;
    double gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
      const double dx = r * xk[j];
      const double pair = f(c - dx) + f(c + dx);
      kronrod += wk[j] * pair;
      if (j % 2 == 1) gauss += wg[j / 2] * pair;
    }
    result.evaluations += 15;
    return Interval{lo, hi, r * kronrod, std::abs(r * (kronrod - gauss))};
  };

  std::priority_queue<Interval> heap;
  heap.push(rule(a, b));
  double total = heap.top().value;
  double total_error = heap.top().error;
  int intervals = 1;
  while (total_error > std::max(abs_tol, rel_tol * std::abs(total)) && intervals < max_intervals) {
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Interval left = rule(worst.lo, mid);
    const Interval right = rule(mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  result.value = total;
  result.error = total_error;
  result.converged = total_error <= std::max(abs_tol, rel_tol * std::abs(total));
  return result;
}

/// The integral family behind every equilibrium condition:
///   I(eta, q, p, d) = int_0^pi (eta - cos t)^q sin^{d-1} t cos^p t dt.
/// eta enters through gap = eta - 1 so that states with eta - 1 far below
/// machine epsilon stay distinct from eta = 1.
struct ThetaIntegralSpec {
  double gap = 1.0;  // eta - 1, >= 0
  double q = 0.0;    // exponent on (eta - cos t)
  int p = 0;         // power of cos t, 0 or 1
  int d = 2;         // sphere dimension
};

/// Evaluates I(1 + gap, q, p, d) by quadrature to the requested relative accuracy.
///
/// For gap > 0 the integrand is folded about pi/2 so both halves share the
/// node set and the p = 1 case never cancels. For gap == 0 the half-angle
/// substitution 1 - cos t = 2 sin^2(t/2) followed by z = sin^{a+1}(t/2)
/// absorbs the endpoint singularity; no closed form is used on either path.
///
/// Throws NotIntegrable when gap == 0 and 2q + d <= 0, ToleranceNotMet when
/// the level budget runs out, InvalidParam for malformed arguments.
double theta_integral(const ThetaIntegralSpec& spec, double rel_tol = 1e-10);

/// Exact value of I(1, q, p, d) through Gamma functions (log space):
///   I(1, q, 0, d) = 2^{q+d-1} Gamma(q + d/2) Gamma(d/2) / Gamma(q + d)
///   I(1, q, 1, d) = I(1, q, 0, d) * (-q) / (q + d)
double eta1_closed_form(double q, int p, int d);

/// Natural exponent of the density profile, 1/(m-1).
inline double density_exponent(double m) { return 1.0 / (m - 1.0); }

}  // namespace onsager
