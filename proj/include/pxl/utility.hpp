#pragma once

#include <array>
#include <string>

#include "pxl/contract.hpp"

namespace pxl {

/// One party's exponential-utility setting: u(w) = -exp(-beta w), premium
/// loaded by (1 + loading), claims arriving at Poisson rate lambda over
/// [0, horizon], starting from initial_wealth.
struct UtilityConfig {
  double beta = 1.0;
  double loading = 0.0;
  double lambda = 1.0;
  double horizon = 1.0;
  double initial_wealth = 0.0;

  /// Validates beta > 0, lambda > 0, horizon > 0, loading > -1.
  static UtilityConfig make(double beta, double loading, double lambda = 1.0,
                            double horizon = 1.0, double initial_wealth = 0.0);

  double exposure() const noexcept { return lambda * horizon; }
};

struct Matrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  double det() const noexcept { return a11 * a22 - a12 * a21; }
};

/// Outcome of either party's optimization.
struct SolveResult {
  ContractParams params;
  double objective_value = 0.0;  // minimized g
  Matrix2 hessian;
  double hessian_det = 0.0;
  bool hessian_ok = false;  // det > 0 and a11 > 0
  /// A coordinate was held on the boundary of its domain (alpha in [0,1] or
  /// the cap search range) because the objective keeps decreasing past it.
  bool projected = false;
  bool converged = false;
  int iterations = 0;
  /// First-order residuals (dg/dalpha, dg/dM) at params.
  std::array<double, 2> residual{0.0, 0.0};
  /// Mass of the truncated tail integrals beyond quantile(1 - 1e-10).
  double tail_remainder = 0.0;
  std::string note;
};

}  // namespace pxl
