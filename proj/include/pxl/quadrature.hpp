#pragma once

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pxl/error.hpp"

namespace pxl {

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 31-point Gauss-Kronrod on a finite interval. `what` names the
/// integral in diagnostics.
template <class F>
Integral integrate(F&& f, double a, double b, const char* what = "integral",
                   double rel_tol = 1e-10) {
  if (!(b > a)) return {};
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 15, rel_tol, &error, &l1);
  if (!std::isfinite(value)) {
    throw NumericError(std::string("non-finite ") + what + " on [" + std::to_string(a) +
                       ", " + std::to_string(b) + "]");
  }
  return {value, error};
}

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. The tolerance is relative to
/// a coarse first estimate of the integral.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol = 1e-8, int max_depth = 48) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = rel_tol * std::max(std::fabs(whole), 1e-300);
  const double value = detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
  if (!std::isfinite(value)) throw NumericError("non-finite value in adaptive Simpson");
  return value;
}

}  // namespace pxl
