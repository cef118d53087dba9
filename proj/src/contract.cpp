#include "pxl/contract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pxl/error.hpp"
#include "text.hpp"

namespace pxl {
namespace {

void require_claim(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("claim amounts must be finite and nonnegative, got " +
                      text::format_number(x));
  }
}

double mean_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (const double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size());
}

// Relative slack for pointwise comparisons of amounts computed along different
// floating-point paths.
bool leq(double a, double b) { return a <= b + 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

}  // namespace

ContractParams ContractParams::make(double alpha, double cap) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0,1], got " + text::format_number(alpha));
  }
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    throw DomainError("cap M must be positive and finite, got " + text::format_number(cap));
  }
  return {alpha, cap};
}

LossSplit split(double x, const ContractParams& c) {
  require_claim(x);
  const double y = c.alpha * std::min(x, c.cap);
  return {y, x - y, x};
}

LossSplit split_proportional(double x, double alpha) {
  require_claim(x);
  const double y = alpha * x;
  return {y, x - y, x};
}

LossSplit split_excess(double x, double cap) {
  require_claim(x);
  const double y = std::min(x, cap);
  return {y, x - y, x};
}

std::vector<double> retained_losses(std::span<const double> xs, const ContractParams& c) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const double x : xs) out.push_back(split(x, c).retained);
  return out;
}

DominanceReport check_retained_dominance(std::span<const double> xs, const ContractParams& c) {
  const auto retained = retained_losses(xs, c);
  return check_retained_dominance(xs, retained, c);
}

DominanceReport check_retained_dominance(std::span<const double> xs,
                                         std::span<const double> retained,
                                         const ContractParams& c) {
  if (retained.size() != xs.size()) {
    throw DomainError("retained amounts must match the claims one to one");
  }
  DominanceReport report;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double excess = std::min(x, c.cap);
    const double proportional = c.alpha * x;
    // Exact comparison: both bounds are algebraic identities of the split.
    if (retained[i] > excess || retained[i] > proportional) {
      report.holds = false;
      report.counterexamples.push_back({i, x, retained[i], excess, proportional});
    }
  }
  return report;
}

VarianceOrderReport check_variance_order(std::span<const double> xs, const ContractParams& c,
                                         std::span<const double> other_ceded, double mean_tol) {
  if (other_ceded.size() != xs.size()) {
    throw DomainError("competing reinsurer amounts must match the claims one to one");
  }
  VarianceOrderReport report;
  std::vector<double> combined_ceded;
  std::vector<double> retained_other;
  std::vector<double> retained_combined;
  combined_ceded.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto s = split(xs[i], c);
    combined_ceded.push_back(s.ceded);
    retained_combined.push_back(s.retained);
    retained_other.push_back(xs[i] - other_ceded[i]);
  }

  const double gap = std::fabs(mean_of(other_ceded) - mean_of(combined_ceded));
  report.means_match = gap <= mean_tol;
  if (!report.means_match) {
    report.failures.push_back("mean of competing cession differs by " + text::format_number(gap));
  }

  report.condition_below_cap = true;
  report.condition_above_cap_low = true;
  report.condition_above_cap_high = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double other = other_ceded[i];
    const double mine = combined_ceded[i];
    const double kept = x - other;
    const std::string where = " at claim #" + std::to_string(i) + " (x=" + text::format_number(x) + ")";
    if (x <= c.cap && !leq(mine, other)) {
      if (report.condition_below_cap) report.failures.push_back("condition (i) fails" + where);
      report.condition_below_cap = false;
    }
    if (x >= c.cap && kept <= c.cap && !leq(mine, other)) {
      if (report.condition_above_cap_low) report.failures.push_back("condition (ii) fails" + where);
      report.condition_above_cap_low = false;
    }
    if (x >= c.cap && kept >= c.cap && !leq(other, mine)) {
      if (report.condition_above_cap_high) report.failures.push_back("condition (iii) fails" + where);
      report.condition_above_cap_high = false;
    }
  }

  report.variance_other = variance_of(retained_other);
  report.variance_combined = variance_of(retained_combined);
  if (report.preconditions_hold()) {
    report.inequality_holds = leq(report.variance_combined, report.variance_other);
  }
  return report;
}

}  // namespace pxl
