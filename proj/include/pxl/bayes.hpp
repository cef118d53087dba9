#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pxl/contract.hpp"
#include "pxl/distributions.hpp"

namespace pxl {

/// Observed reinsurer amounts z_i = I(X_i).
struct CededSample {
  std::vector<double> z;

  /// Throws DomainError on a negative or non-finite value.
  static CededSample make(std::vector<double> z);
  /// z_i = x_i - alpha*min(x_i, M).
  static CededSample from_claims(std::span<const double> claims, const ContractParams& c);
};

struct PriorTriple {
  PriorSpec theta;
  PriorSpec alpha;  // support inside [0,1]
  PriorSpec cap;    // support inside (0, inf)

  /// Checks that each prior's support respects its parameter's domain.
  static PriorTriple make(PriorSpec theta, PriorSpec alpha, PriorSpec cap);
};

/// Weights of the two targets; the posterior mean gets 1 - w1 - w2.
struct BalancedWeights {
  double w1 = 0.0;
  double w2 = 0.0;

  /// Requires w1, w2 in [0,1) and w1 + w2 < 1.
  static BalancedWeights make(double w1, double w2);
  /// Also admits the closed edge w1 + w2 = 1 (posterior weight zero), which
  /// the worked weight tables include.
  static BalancedWeights make_closed(double w1, double w2);
  double residual() const noexcept { return 1.0 - w1 - w2; }
};

/// Tensor midpoint grid over (theta, alpha, M). Continuous priors are covered
/// between their `tail` and `1 - tail` quantiles; point masses use one node.
struct GridSpec {
  std::size_t n_theta = 200;
  std::size_t n_alpha = 200;
  std::size_t n_cap = 200;
  double tail = 1e-4;
};

struct PosteriorSummary {
  double mean_alpha = 0.0;
  double mean_cap = 0.0;
  double mean_theta = 0.0;
  GridSpec grid;
  std::array<std::pair<double, double>, 3> bounds{};  // theta, alpha, M
  double log_normalization = 0.0;     // log of sum(weight * cell volume)
  double normalization_constant = 0.0;
  std::array<double, 3> max_cell{};   // (theta, alpha, M) of the largest cell
};

/// n1: number of observations on the proportional branch z <= (1 - alpha) M.
std::size_t proportional_count(std::span<const double> z, const ContractParams& c);

/// Log of the joint density of z given (theta, alpha, M); `family` supplies the
/// claim family and its shape, theta replaces the rate-like parameter.
/// Returns -inf if a factor vanishes. Throws DomainError for alpha = 1.
double log_likelihood(const CededSample& sample, double theta, const ContractParams& c,
                      const ClaimModel& family);

/// Density of a single ceded amount (the n = 1 case of log_likelihood).
double ceded_density(double z, const ClaimModel& model, const ContractParams& c);

/// Joint posterior on the tensor grid with log-sum-exp normalization; returns
/// the posterior means of alpha, M and theta. Slices along theta may run in
/// parallel; their partial sums are merged in index order, so the result does
/// not depend on the thread count. Throws NumericUnderflow if every cell has
/// zero posterior weight.
PosteriorSummary posterior_summary(const CededSample& sample, const ClaimModel& family,
                                   const PriorTriple& priors, const GridSpec& grid,
                                   unsigned threads = 0);

/// omega1*target0 + omega2*target1 + (1 - omega1 - omega2)*posterior mean, for
/// alpha and M separately. No clipping.
ContractParams balanced_estimate(const BalancedWeights& w, const ContractParams& target0,
                                 const ContractParams& target1, const PosteriorSummary& post);

struct EquivalenceReport {
  double balanced_minimizer = 0.0;  // argmin of the doubly-balanced posterior loss
  double mixture_minimizer = 0.0;   // argmin of squared loss under the mixed posterior
  double formula = 0.0;             // w1 d0 + w2 d1 + (1-w1-w2) E[xi]
  double grid_step = 0.0;
  bool holds = false;
};

/// Brute-force check, for a discrete posterior (support, probabilities), that
/// minimizing the squared doubly-balanced loss equals minimizing squared loss
/// under w1*delta(d0) + w2*delta(d1) + (1-w1-w2)*posterior, and that both
/// equal the closed form. Uses `grid_points` candidate estimates.
EquivalenceReport verify_balanced_bayes_equivalence(std::span<const double> support,
                                                    std::span<const double> probabilities,
                                                    const BalancedWeights& w, double target0,
                                                    double target1,
                                                    std::size_t grid_points = 200001);

}  // namespace pxl
