#include "pxl/risk_measures.hpp"

#include <algorithm>
#include <cmath>

#include "pxl/error.hpp"
#include "pxl/quadrature.hpp"
#include "text.hpp"

namespace pxl {
namespace {

constexpr double kUpperLevel = 1.0 - 1e-10;

void require_level(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("risk level p must lie in (0,1), got " + text::format_number(p));
  }
}

// 1-based index of the smallest order statistic whose empirical cdf is >= p.
std::size_t var_rank(std::size_t n, double p) {
  const double np = static_cast<double>(n) * p;
  auto k = static_cast<std::size_t>(std::ceil(np));
  // n*p can land one ulp above an integer; treat that as the integer.
  if (k > 1 && static_cast<double>(k - 1) >= np * (1.0 - 1e-14)) --k;
  return std::clamp<std::size_t>(k, 1, n);
}

void require_sample(std::span<const double> sorted) {
  if (sorted.empty()) throw DomainError("risk measure of an empty sample");
}

}  // namespace

double value_at_risk(std::span<const double> sorted, double p) {
  require_level(p);
  require_sample(sorted);
  return sorted[var_rank(sorted.size(), p) - 1];
}

double tail_value_at_risk(std::span<const double> sorted, double p) {
  require_level(p);
  require_sample(sorted);
  const std::size_t n = sorted.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t k0 = var_rank(n, p);
  // VaR equals x_(k) on ((k-1)/n, k/n]; integrate that step function over (p, 1).
  double acc = sorted[k0 - 1] * std::max(0.0, static_cast<double>(k0) * inv_n - p);
  for (std::size_t k = k0 + 1; k <= n; ++k) acc += sorted[k - 1] * inv_n;
  return acc / (1.0 - p);
}

double value_at_risk(const QuantileFn& quantile, double p) {
  require_level(p);
  return quantile(p);
}

double tail_value_at_risk(const QuantileFn& quantile, double p) {
  require_level(p);
  if (p >= kUpperLevel) return quantile(p);
  return adaptive_simpson(quantile, p, kUpperLevel, 1e-8) / (1.0 - p);
}

double value_at_risk(const ClaimModel& model, double p) {
  return value_at_risk([&](double q) { return model.quantile(q); }, p);
}

double tail_value_at_risk(const ClaimModel& model, double p) {
  return tail_value_at_risk([&](double q) { return model.quantile(q); }, p);
}

QuantileFn retained_quantile(const ClaimModel& model, const ContractParams& c) {
  return [model, c](double p) { return c.alpha * std::min(model.quantile(p), c.cap); };
}

QuantileFn excess_retained_quantile(const ClaimModel& model, double cap) {
  return [model, cap](double p) { return std::min(model.quantile(p), cap); };
}

QuantileFn proportional_retained_quantile(const ClaimModel& model, double alpha) {
  return [model, alpha](double p) { return alpha * model.quantile(p); };
}

}  // namespace pxl
