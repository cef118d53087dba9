#pragma once

#include <array>

#include "pxl/contract.hpp"
#include "pxl/distributions.hpp"
#include "pxl/utility.hpp"

namespace pxl {

/// g0(alpha, M) = -beta(1+theta) lambda t [alpha int_0^M x dF + alpha M S(M)]
///              + lambda t [int_0^M e^{alpha beta x} dF + e^{alpha beta M} S(M)],
/// the log of minus the insurer's expected utility up to an additive constant.
double insurer_objective(const ContractParams& c, const ClaimModel& model,
                         const UtilityConfig& cfg);

/// (dg0/dalpha, dg0/dM).
std::array<double, 2> insurer_gradient(const ContractParams& c, const ClaimModel& model,
                                       const UtilityConfig& cfg);

/// The insurer's 2x2 second-order matrix in closed form. The off-diagonal and
/// M-M entries drop the terms that vanish on e^{alpha beta M} = 1 + theta.
Matrix2 insurer_hessian(const ContractParams& c, const ClaimModel& model,
                        const UtilityConfig& cfg);

/// Residual of the alpha-condition after eliminating alpha through
/// alpha beta M = ln(1+theta):
///   int_0^M x (e^{ln(1+theta) x / M} - (1+theta)) dF(x).
double insurer_reduced_residual(double cap, const ClaimModel& model, const UtilityConfig& cfg);

/// Maximizes the insurer's expected exponential utility over (alpha, M).
///
/// Scans the reduced residual over 200 log-spaced caps in
/// [q(0.001), q(0.9999)], refines a sign change by bisection and Newton, and
/// rebuilds alpha = ln(1+theta)/(beta M). A root whose alpha exceeds 1 (or a
/// residual that stays negative over the whole scan, which places the root at
/// M -> 0 with alpha -> inf) is projected to alpha = 1, M = ln(1+theta)/beta.
///
/// Throws DegenerateLoading for loading <= 0 and NoRootFound when the residual
/// is positive over the whole scan.
SolveResult solve_insurer(const ClaimModel& model, const UtilityConfig& cfg);

}  // namespace pxl
