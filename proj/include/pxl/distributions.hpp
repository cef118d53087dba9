#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pxl {

enum class ClaimFamily { kExponential, kWeibull, kGamma };

/// Parametric claim-size distribution on [0, inf).
///
/// Parameterizations:
///   Exponential(rate)          f(x) = rate e^{-rate x}
///   Weibull(shape k, scale s)  f(x) = (k/s)(x/s)^{k-1} exp(-(x/s)^k)
///   Gamma(shape k, rate r)     f(x) = r^k x^{k-1} e^{-r x} / Gamma(k)
///
/// The "claim parameter" theta is the rate for Exponential and Gamma and the
/// scale for Weibull; with_theta() swaps it while keeping the shape.
class ClaimModel {
 public:
  static ClaimModel exponential(double rate);
  static ClaimModel weibull(double shape, double scale);
  static ClaimModel gamma(double shape, double rate);

  /// Accepts "exponential(1)", "exp(4)", "weibull(2,1)", "gamma(2,2)".
  static ClaimModel parse(std::string_view text);

  ClaimFamily family() const noexcept { return family_; }
  double param1() const noexcept { return p1_; }
  double param2() const noexcept { return p2_; }

  double theta() const noexcept;
  ClaimModel with_theta(double theta) const;

  double pdf(double x) const noexcept;
  double log_pdf(double x) const noexcept;
  double cdf(double x) const noexcept;
  double survival(double x) const noexcept;
  /// Generalized inverse of cdf. Throws DomainError for p outside (0,1).
  double quantile(double p) const;
  double mean() const noexcept;

  /// Supremum of beta for which E[e^{beta X}] is finite (+inf if every
  /// exponential moment exists, 0 if none does).
  double exp_moment_limit() const noexcept;

  /// Tail pieces on [a, inf) computed in closed form or by a dedicated
  /// semi-infinite rule. Throws DivergentMoment when beta is not below
  /// exp_moment_limit().
  double tail_exp_moment(double beta, double a) const;
  double tail_first_moment(double a) const;

  /// Inverse-transform sample; bit-reproducible for a fixed seed.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  std::string to_string() const;

 private:
  ClaimModel(ClaimFamily family, double p1, double p2);

  ClaimFamily family_;
  double p1_;
  double p2_;
  double log_norm_ = 0.0;  // cached normalizer for log_pdf
};

enum class PriorFamily { kBeta, kExponential, kGamma, kUniform, kPointMass };

/// Prior over a scalar parameter. Gamma is (shape, rate), Exponential is rate.
class PriorSpec {
 public:
  static PriorSpec beta(double a, double b);
  static PriorSpec exponential(double rate);
  static PriorSpec gamma(double shape, double rate);
  static PriorSpec uniform(double lo, double hi);
  static PriorSpec point_mass(double atom);

  /// Accepts "beta(2,2)", "exp(2)", "gamma(3,2)", "uniform(0,1)", "point(1)".
  static PriorSpec parse(std::string_view text);

  PriorFamily family() const noexcept { return family_; }
  bool is_point_mass() const noexcept { return family_ == PriorFamily::kPointMass; }
  double param1() const noexcept { return p1_; }
  double param2() const noexcept { return p2_; }

  /// Closed support interval [lo, hi]; hi may be +inf.
  std::pair<double, double> support() const noexcept;

  double pdf(double x) const noexcept;
  double log_pdf(double x) const noexcept;
  double cdf(double x) const noexcept;
  double quantile(double p) const;
  double mean() const noexcept;

  std::string to_string() const;

 private:
  PriorSpec(PriorFamily family, double p1, double p2);

  PriorFamily family_;
  double p1_;
  double p2_;
  double log_norm_ = 0.0;
};

}  // namespace pxl
