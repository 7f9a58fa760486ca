#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace onsager {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Brent's method on a sign-changing bracket [a, b] given f(a), f(b):
/// bisection safeguarding secant / inverse-quadratic steps. Stops once
/// |f(x)| <= f_tol or the bracket is narrower than x_tol.
template <class F>
RootResult brent_root(F&& f, double a, double b, double fa, double fb, double f_tol, double x_tol,
                      int max_iter = 200) {
  RootResult r;
  if (fa == 0.0) return {a, fa, 0, true};
  if (fb == 0.0) return {b, fb, 0, true};

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= f_tol || std::abs(xm) <= tol1) {
      r.x = b;
      r.fx = fb;
      r.converged = true;
      return r;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double rr = fb / fc;
        p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  r.x = b;
  r.fx = fb;
  return r;
}

/// Plain bisection; returns the midpoint of the final bracket.
template <class F>
RootResult bisect_root(F&& f, double a, double b, double fa, double x_tol, int max_iter = 200) {
  RootResult r;
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return {mid, fm, r.iterations, true};
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
    if (std::abs(b - a) <= x_tol) {
      r.x = 0.5 * (a + b);
      r.fx = f(r.x);
      r.converged = true;
      return r;
    }
  }
  r.x = 0.5 * (a + b);
  r.fx = f(r.x);
  return r;
}

}  // namespace onsager
