#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pxl {

/// Y = alpha * min(X, cap): the insurer keeps a share alpha of each claim up to
/// the cap, the reinsurer pays the rest.
struct ContractParams {
  double alpha = 0.0;
  double cap = 0.0;

  /// Validates 0 <= alpha <= 1 and 0 < cap < inf; throws DomainError.
  static ContractParams make(double alpha, double cap);
};

struct LossSplit {
  double retained = 0.0;  // Y, insurer part
  double ceded = 0.0;     // I(X), reinsurer part
  double total = 0.0;     // X
};

LossSplit split(double x, const ContractParams& c);
LossSplit split_proportional(double x, double alpha);
LossSplit split_excess(double x, double cap);

/// Retained amounts alpha*min(x, cap) for every claim.
std::vector<double> retained_losses(std::span<const double> xs, const ContractParams& c);

// -------------------------------------------------------------- dominance

struct DominanceViolation {
  std::size_t index = 0;
  double claim = 0.0;
  double retained = 0.0;
  double retained_excess = 0.0;        // min(x, cap)
  double retained_proportional = 0.0;  // alpha * x
};

struct DominanceReport {
  bool holds = true;
  std::vector<DominanceViolation> counterexamples;
};

/// Checks retained <= min(x, cap) and retained <= alpha*x pointwise.
DominanceReport check_retained_dominance(std::span<const double> xs, const ContractParams& c);

/// Same check against externally supplied retained amounts (one per claim).
DominanceReport check_retained_dominance(std::span<const double> xs,
                                         std::span<const double> retained,
                                         const ContractParams& c);

// ---------------------------------------------------------- variance order

struct VarianceOrderReport {
  bool means_match = false;
  bool condition_below_cap = false;       // x <= cap           => I >= I_N
  bool condition_above_cap_low = false;   // x >= cap, x-I <= cap => I >= I_N
  bool condition_above_cap_high = false;  // x >= cap, x-I >= cap => I <= I_N
  std::vector<std::string> failures;

  double variance_other = 0.0;     // Var(X - I)
  double variance_combined = 0.0;  // Var(X - I_N)

  /// Set only when every precondition holds.
  std::optional<bool> inequality_holds;

  bool preconditions_hold() const noexcept {
    return means_match && condition_below_cap && condition_above_cap_low &&
           condition_above_cap_high;
  }
  bool holds() const noexcept { return inequality_holds.value_or(false); }
};

/// Empirical check of Var(X - I) >= Var(X - I_N) for a competing strategy
/// `other_ceded` (one amount per claim). Preconditions are verified on the
/// sample; `mean_tol` bounds |mean(I) - mean(I_N)|.
VarianceOrderReport check_variance_order(std::span<const double> xs, const ContractParams& c,
                                         std::span<const double> other_ceded,
                                         double mean_tol = 1e-9);

}  // namespace pxl
