#pragma once

#include <functional>
#include <span>

#include "pxl/contract.hpp"
#include "pxl/distributions.hpp"

namespace pxl {

/// Maps a probability level in (0,1) to a loss level.
using QuantileFn = std::function<double(double)>;

/// Empirical VaR: the order statistic x_(ceil(n p)) of an ascending sample.
double value_at_risk(std::span<const double> sorted, double p);
/// Empirical TVaR: exact average of the empirical quantile over (p, 1).
double tail_value_at_risk(std::span<const double> sorted, double p);

double value_at_risk(const QuantileFn& quantile, double p);
/// (1-p)^{-1} times the adaptive-Simpson integral of VaR over (p, 1 - 1e-10).
double tail_value_at_risk(const QuantileFn& quantile, double p);

double value_at_risk(const ClaimModel& model, double p);
double tail_value_at_risk(const ClaimModel& model, double p);

/// Quantile function of a transformed loss: alpha*min(X, cap), min(X, cap),
/// alpha*X. All three are nondecreasing maps of X.
QuantileFn retained_quantile(const ClaimModel& model, const ContractParams& c);
QuantileFn excess_retained_quantile(const ClaimModel& model, double cap);
QuantileFn proportional_retained_quantile(const ClaimModel& model, double alpha);

}  // namespace pxl
