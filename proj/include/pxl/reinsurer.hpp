#pragma once

#include <array>

#include "pxl/contract.hpp"
#include "pxl/distributions.hpp"
#include "pxl/utility.hpp"

namespace pxl {

/// Integrals that make up g1 and its derivatives at one (alpha, M).
struct ReinsurerIntegrals {
  double below_exp = 0.0;     // int_0^M e^{beta(1-alpha)x} dF
  double below_x = 0.0;       // int_0^M x dF
  double below_x_exp = 0.0;   // int_0^M x e^{beta(1-alpha)x} dF
  double below_x2_exp = 0.0;  // int_0^M x^2 e^{beta(1-alpha)x} dF
  double tail_exp = 0.0;      // int_M^inf e^{beta x} dF
  double tail_x = 0.0;        // int_M^inf x dF
  double survival = 0.0;      // S(M)
  double density = 0.0;       // f(M)
  double tail_remainder = 0.0;
};

/// Throws DivergentMoment if E[e^{beta X}] does not exist.
ReinsurerIntegrals reinsurer_integrals(const ContractParams& c, const ClaimModel& model,
                                       const UtilityConfig& cfg, bool second_order = false);

/// g1(alpha, M) = int_0^M e^{beta(1-alpha)x} dF + int_M^inf e^{beta(x - alpha M)} dF
///   - beta(1+theta) [int_0^M (1-alpha) x dF + int_M^inf (x - alpha M) dF].
double reinsurer_objective(const ContractParams& c, const ClaimModel& model,
                           const UtilityConfig& cfg);

/// (dg1/dalpha, dg1/dM), both derived from g1 above.
std::array<double, 2> reinsurer_gradient(const ContractParams& c, const ClaimModel& model,
                                         const UtilityConfig& cfg);

/// H1 with entries a11, a12 = a21, a22 in closed form.
Matrix2 reinsurer_hessian(const ContractParams& c, const ClaimModel& model,
                          const UtilityConfig& cfg);

/// Cap search range [q(1e-3), q(1 - 1e-6)] and grid start range [q(0.5), q(1 - 1e-6)].
struct CapRange {
  double lo = 0.0;
  double hi = 0.0;
};
CapRange reinsurer_cap_bounds(const ClaimModel& model);
CapRange reinsurer_start_range(const ClaimModel& model);

/// Maximizes the reinsurer's expected exponential utility over (alpha, M).
///
/// Starts from the 60x60 grid minimum of g1 over [0,1] x reinsurer_start_range
/// and runs damped Newton on the first-order residuals with a central-difference
/// Jacobian. Coordinates at a bound whose residual pushes outward are held
/// there (projected). The step is halved until the free residual norm drops,
/// down to 2^-20. If the free residual is not below 1e-8 after 200 iterations
/// the best grid point is returned with converged = false.
SolveResult solve_reinsurer(const ClaimModel& model, const UtilityConfig& cfg);

}  // namespace pxl
