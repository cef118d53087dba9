#pragma once

// Reference values computed without the library's quadrature or solvers:
// closed forms for exponential claims and brute-force grid minima.

#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

// Integrals against an Exponential(r) density.
struct ExpClaims {
  double r = 1.0;

  double survival(double m) const { return std::exp(-r * m); }
  // int_0^M x dF
  double below_x(double m) const { return (1.0 - std::exp(-r * m) * (1.0 + r * m)) / r; }
  // int_0^M e^{cx} dF
  double below_exp(double c, double m) const {
    const double k = c - r;
    if (k == 0.0) return r * m;
    return r * std::expm1(k * m) / k;
  }
  // int_0^M x e^{cx} dF
  double below_x_exp(double c, double m) const {
    const double k = c - r;
    if (k == 0.0) return r * m * m / 2.0;
    return r * (std::exp(k * m) * (m / k - 1.0 / (k * k)) + 1.0 / (k * k));
  }
  // int_M^inf e^{bx} dF, b < r
  double tail_exp(double b, double m) const { return r * std::exp((b - r) * m) / (r - b); }
  // int_M^inf x dF
  double tail_x(double m) const { return std::exp(-r * m) * (m + 1.0 / r); }
  double quantile(double p) const { return -std::log1p(-p) / r; }
};

struct Party {
  double beta;
  double loading;
  double exposure = 1.0;
};

inline double g0(double a, double m, const ExpClaims& f, const Party& p) {
  const double s = f.survival(m);
  return -p.beta * (1.0 + p.loading) * p.exposure * a * (f.below_x(m) + m * s) +
         p.exposure * (f.below_exp(a * p.beta, m) + std::exp(a * p.beta * m) * s);
}

inline double g1(double a, double m, const ExpClaims& f, const Party& p) {
  const double b = p.beta;
  return f.below_exp(b * (1.0 - a), m) + std::exp(-b * a * m) * f.tail_exp(b, m) -
         b * (1.0 + p.loading) *
             ((1.0 - a) * f.below_x(m) + f.tail_x(m) - a * m * f.survival(m));
}

struct GridMin {
  double a = 0.0;
  double m = 0.0;
  double value = std::numeric_limits<double>::infinity();
  double step_a = 0.0;
  double step_m = 0.0;
};

// Minimum of g over the n x n lattice spanning [a_lo, a_hi] x [m_lo, m_hi].
inline GridMin grid_min(const std::function<double(double, double)>& g, double a_lo,
                        double a_hi, double m_lo, double m_hi, int n) {
  GridMin out;
  out.step_a = (a_hi - a_lo) / (n - 1);
  out.step_m = (m_hi - m_lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double a = a_lo + i * out.step_a;
    for (int j = 0; j < n; ++j) {
      const double m = m_lo + j * out.step_m;
      const double v = g(a, m);
      if (v < out.value) out = {a, m, v, out.step_a, out.step_m};
    }
  }
  return out;
}

}  // namespace oracle
