#include "pxl/distributions.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pxl/error.hpp"
#include "pxl/rng.hpp"
#include "text.hpp"

namespace pxl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be a positive finite number, got " +
                      text::format_number(v));
  }
}

void require_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("probability must lie in (0,1), got " + text::format_number(p));
  }
}

}  // namespace

// ---------------------------------------------------------------- ClaimModel

ClaimModel::ClaimModel(ClaimFamily family, double p1, double p2)
    : family_(family), p1_(p1), p2_(p2) {
  switch (family_) {
    case ClaimFamily::kExponential:
      require_positive(p1_, "exponential rate");
      log_norm_ = std::log(p1_);
      break;
    case ClaimFamily::kWeibull:
      require_positive(p1_, "weibull shape");
      require_positive(p2_, "weibull scale");
      log_norm_ = std::log(p1_ / p2_);
      break;
    case ClaimFamily::kGamma:
      require_positive(p1_, "gamma shape");
      require_positive(p2_, "gamma rate");
      log_norm_ = p1_ * std::log(p2_) - std::lgamma(p1_);
      break;
  }
}

ClaimModel ClaimModel::exponential(double rate) {
  return ClaimModel(ClaimFamily::kExponential, rate, 0.0);
}
ClaimModel ClaimModel::weibull(double shape, double scale) {
  return ClaimModel(ClaimFamily::kWeibull, shape, scale);
}
ClaimModel ClaimModel::gamma(double shape, double rate) {
  return ClaimModel(ClaimFamily::kGamma, shape, rate);
}

ClaimModel ClaimModel::parse(std::string_view spec) {
  const auto call = text::parse_call(spec);
  const auto want = [&](std::size_t n) {
    if (call.args.size() != n) {
      throw ConfigError("claim model '" + call.name + "' takes " + std::to_string(n) +
                        " parameter(s)");
    }
  };
  if (call.name == "exp" || call.name == "exponential") {
    want(1);
    return exponential(call.args[0]);
  }
  if (call.name == "weibull") {
    want(2);
    return weibull(call.args[0], call.args[1]);
  }
  if (call.name == "gamma") {
    want(2);
    return gamma(call.args[0], call.args[1]);
  }
  throw ConfigError("unknown claim family '" + call.name + "'");
}

double ClaimModel::theta() const noexcept {
  return family_ == ClaimFamily::kExponential ? p1_ : p2_;
}

ClaimModel ClaimModel::with_theta(double theta) const {
  if (family_ == ClaimFamily::kExponential) return exponential(theta);
  return ClaimModel(family_, p1_, theta);
}

double ClaimModel::log_pdf(double x) const noexcept {
  if (x < 0.0) return -kInf;
  switch (family_) {
    case ClaimFamily::kExponential:
      return log_norm_ - p1_ * x;
    case ClaimFamily::kWeibull: {
      const double y = x / p2_;
      if (y == 0.0) {
        if (p1_ == 1.0) return log_norm_;
        return p1_ < 1.0 ? kInf : -kInf;
      }
      return log_norm_ + (p1_ - 1.0) * std::log(y) - std::pow(y, p1_);
    }
    case ClaimFamily::kGamma:
      if (x == 0.0) {
        if (p1_ == 1.0) return log_norm_;
        return p1_ < 1.0 ? kInf : -kInf;
      }
      return log_norm_ + (p1_ - 1.0) * std::log(x) - p2_ * x;
  }
  return -kInf;
}

double ClaimModel::pdf(double x) const noexcept { return std::exp(log_pdf(x)); }

double ClaimModel::cdf(double x) const noexcept {
  if (x <= 0.0) return 0.0;
  switch (family_) {
    case ClaimFamily::kExponential:
      return -std::expm1(-p1_ * x);
    case ClaimFamily::kWeibull:
      return -std::expm1(-std::pow(x / p2_, p1_));
    case ClaimFamily::kGamma:
      return boost::math::gamma_p(p1_, p2_ * x);
  }
  return 0.0;
}

double ClaimModel::survival(double x) const noexcept {
  if (x <= 0.0) return 1.0;
  switch (family_) {
    case ClaimFamily::kExponential:
      return std::exp(-p1_ * x);
    case ClaimFamily::kWeibull:
      return std::exp(-std::pow(x / p2_, p1_));
    case ClaimFamily::kGamma:
      return boost::math::gamma_q(p1_, p2_ * x);
  }
  return 1.0;
}

double ClaimModel::quantile(double p) const {
  require_probability(p);
  switch (family_) {
    case ClaimFamily::kExponential:
      return -std::log1p(-p) / p1_;
    case ClaimFamily::kWeibull:
      return p2_ * std::pow(-std::log1p(-p), 1.0 / p1_);
    case ClaimFamily::kGamma:
      return boost::math::gamma_p_inv(p1_, p) / p2_;
  }
  return 0.0;
}

double ClaimModel::mean() const noexcept {
  switch (family_) {
    case ClaimFamily::kExponential:
      return 1.0 / p1_;
    case ClaimFamily::kWeibull:
      return p2_ * std::tgamma(1.0 + 1.0 / p1_);
    case ClaimFamily::kGamma:
      return p1_ / p2_;
  }
  return 0.0;
}

double ClaimModel::exp_moment_limit() const noexcept {
  switch (family_) {
    case ClaimFamily::kExponential:
      return p1_;
    case ClaimFamily::kGamma:
      return p2_;
    case ClaimFamily::kWeibull:
      if (p1_ > 1.0) return kInf;
      return p1_ == 1.0 ? 1.0 / p2_ : 0.0;
  }
  return 0.0;
}

double ClaimModel::tail_exp_moment(double beta, double a) const {
  a = std::max(a, 0.0);
  if (beta == 0.0) return survival(a);
  if (!(beta < exp_moment_limit())) {
    throw DivergentMoment("E[exp(" + text::format_number(beta) + " X)] does not exist for " +
                          to_string() + " (exponential moments exist only below " +
                          text::format_number(exp_moment_limit()) + ")");
  }
  switch (family_) {
    case ClaimFamily::kExponential: {
      const double slack = p1_ - beta;
      return p1_ / slack * std::exp(-slack * a);
    }
    case ClaimFamily::kGamma: {
      const double slack = p2_ - beta;
      return std::pow(p2_ / slack, p1_) * boost::math::gamma_q(p1_, slack * a);
    }
    case ClaimFamily::kWeibull: {
      if (p1_ == 1.0) {
        const double rate = 1.0 / p2_;
        return rate / (rate - beta) * std::exp(-(rate - beta) * a);
      }
      boost::math::quadrature::exp_sinh<double> rule;
      const auto f = [&](double x) {
        const double lp = log_pdf(x);
        return std::isfinite(lp) ? std::exp(beta * x + lp) : 0.0;
      };
      const double value = rule.integrate(f, a, kInf, 1e-12);
      if (!std::isfinite(value)) throw NumericError("non-finite Weibull exponential tail moment");
      return value;
    }
  }
  return 0.0;
}

double ClaimModel::tail_first_moment(double a) const {
  a = std::max(a, 0.0);
  switch (family_) {
    case ClaimFamily::kExponential:
      return std::exp(-p1_ * a) * (a + 1.0 / p1_);
    case ClaimFamily::kGamma:
      return p1_ / p2_ * boost::math::gamma_q(p1_ + 1.0, p2_ * a);
    case ClaimFamily::kWeibull:
      return p2_ * boost::math::tgamma(1.0 + 1.0 / p1_, std::pow(a / p2_, p1_));
  }
  return 0.0;
}

std::vector<double> ClaimModel::sample(std::size_t n, std::uint64_t seed) const {
  std::vector<double> out;
  out.reserve(n);
  UniformSource source(seed);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(source.next()));
  return out;
}

std::string ClaimModel::to_string() const {
  switch (family_) {
    case ClaimFamily::kExponential:
      return "exponential(" + text::format_number(p1_) + ")";
    case ClaimFamily::kWeibull:
      return "weibull(" + text::format_number(p1_) + "," + text::format_number(p2_) + ")";
    case ClaimFamily::kGamma:
      return "gamma(" + text::format_number(p1_) + "," + text::format_number(p2_) + ")";
  }
  return "?";
}

// ----------------------------------------------------------------- PriorSpec

PriorSpec::PriorSpec(PriorFamily family, double p1, double p2)
    : family_(family), p1_(p1), p2_(p2) {
  switch (family_) {
    case PriorFamily::kBeta:
      require_positive(p1_, "beta a");
      require_positive(p2_, "beta b");
      log_norm_ = -(std::lgamma(p1_) + std::lgamma(p2_) - std::lgamma(p1_ + p2_));
      break;
    case PriorFamily::kExponential:
      require_positive(p1_, "exponential rate");
      log_norm_ = std::log(p1_);
      break;
    case PriorFamily::kGamma:
      require_positive(p1_, "gamma shape");
      require_positive(p2_, "gamma rate");
      log_norm_ = p1_ * std::log(p2_) - std::lgamma(p1_);
      break;
    case PriorFamily::kUniform:
      if (!(std::isfinite(p1_) && std::isfinite(p2_) && p1_ < p2_)) {
        throw DomainError("uniform bounds must be finite and ordered");
      }
      log_norm_ = -std::log(p2_ - p1_);
      break;
    case PriorFamily::kPointMass:
      if (!std::isfinite(p1_)) throw DomainError("point mass atom must be finite");
      break;
  }
}

PriorSpec PriorSpec::beta(double a, double b) { return PriorSpec(PriorFamily::kBeta, a, b); }
PriorSpec PriorSpec::exponential(double rate) {
  return PriorSpec(PriorFamily::kExponential, rate, 0.0);
}
PriorSpec PriorSpec::gamma(double shape, double rate) {
  return PriorSpec(PriorFamily::kGamma, shape, rate);
}
PriorSpec PriorSpec::uniform(double lo, double hi) {
  return PriorSpec(PriorFamily::kUniform, lo, hi);
}
PriorSpec PriorSpec::point_mass(double atom) {
  return PriorSpec(PriorFamily::kPointMass, atom, 0.0);
}

PriorSpec PriorSpec::parse(std::string_view text) {
  const auto call = text::parse_call(text);
  const auto want = [&](std::size_t n) {
    if (call.args.size() != n) {
      throw ConfigError("prior '" + call.name + "' takes " + std::to_string(n) +
                        " parameter(s)");
    }
  };
  if (call.name == "beta") {
    want(2);
    return beta(call.args[0], call.args[1]);
  }
  if (call.name == "exp" || call.name == "exponential") {
    want(1);
    return exponential(call.args[0]);
  }
  if (call.name == "gamma") {
    want(2);
    return gamma(call.args[0], call.args[1]);
  }
  if (call.name == "uniform") {
    want(2);
    return uniform(call.args[0], call.args[1]);
  }
  if (call.name == "point" || call.name == "pointmass" || call.name == "point_mass") {
    want(1);
    return point_mass(call.args[0]);
  }
  throw ConfigError("unknown prior family '" + call.name + "'");
}

std::pair<double, double> PriorSpec::support() const noexcept {
  switch (family_) {
    case PriorFamily::kBeta:
      return {0.0, 1.0};
    case PriorFamily::kExponential:
    case PriorFamily::kGamma:
      return {0.0, kInf};
    case PriorFamily::kUniform:
      return {p1_, p2_};
    case PriorFamily::kPointMass:
      return {p1_, p1_};
  }
  return {0.0, 0.0};
}

double PriorSpec::log_pdf(double x) const noexcept {
  const auto [lo, hi] = support();
  if (family_ == PriorFamily::kPointMass) return x == p1_ ? 0.0 : -kInf;
  if (!(x >= lo && x <= hi)) return -kInf;
  switch (family_) {
    case PriorFamily::kBeta: {
      const double a = (p1_ - 1.0) * (p1_ == 1.0 ? 0.0 : std::log(x));
      const double b = (p2_ - 1.0) * (p2_ == 1.0 ? 0.0 : std::log1p(-x));
      return log_norm_ + a + b;
    }
    case PriorFamily::kExponential:
      return log_norm_ - p1_ * x;
    case PriorFamily::kGamma:
      if (x == 0.0) return p1_ == 1.0 ? log_norm_ : (p1_ < 1.0 ? kInf : -kInf);
      return log_norm_ + (p1_ - 1.0) * std::log(x) - p2_ * x;
    case PriorFamily::kUniform:
      return log_norm_;
    case PriorFamily::kPointMass:
      break;
  }
  return -kInf;
}

double PriorSpec::pdf(double x) const noexcept { return std::exp(log_pdf(x)); }

double PriorSpec::cdf(double x) const noexcept {
  switch (family_) {
    case PriorFamily::kBeta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return boost::math::ibeta(p1_, p2_, x);
    case PriorFamily::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
    case PriorFamily::kGamma:
      return x <= 0.0 ? 0.0 : boost::math::gamma_p(p1_, p2_ * x);
    case PriorFamily::kUniform:
      if (x <= p1_) return 0.0;
      if (x >= p2_) return 1.0;
      return (x - p1_) / (p2_ - p1_);
    case PriorFamily::kPointMass:
      return x >= p1_ ? 1.0 : 0.0;
  }
  return 0.0;
}

double PriorSpec::quantile(double p) const {
  require_probability(p);
  switch (family_) {
    case PriorFamily::kBeta:
      return boost::math::ibeta_inv(p1_, p2_, p);
    case PriorFamily::kExponential:
      return -std::log1p(-p) / p1_;
    case PriorFamily::kGamma:
      return boost::math::gamma_p_inv(p1_, p) / p2_;
    case PriorFamily::kUniform:
      return p1_ + p * (p2_ - p1_);
    case PriorFamily::kPointMass:
      return p1_;
  }
  return 0.0;
}

double PriorSpec::mean() const noexcept {
  switch (family_) {
    case PriorFamily::kBeta:
      return p1_ / (p1_ + p2_);
    case PriorFamily::kExponential:
      return 1.0 / p1_;
    case PriorFamily::kGamma:
      return p1_ / p2_;
    case PriorFamily::kUniform:
      return 0.5 * (p1_ + p2_);
    case PriorFamily::kPointMass:
      return p1_;
  }
  return 0.0;
}

std::string PriorSpec::to_string() const {
  const auto two = [&](const char* name) {
    return std::string(name) + "(" + text::format_number(p1_) + "," + text::format_number(p2_) +
           ")";
  };
  switch (family_) {
    case PriorFamily::kBeta:
      return two("beta");
    case PriorFamily::kExponential:
      return "exponential(" + text::format_number(p1_) + ")";
    case PriorFamily::kGamma:
      return two("gamma");
    case PriorFamily::kUniform:
      return two("uniform");
    case PriorFamily::kPointMass:
      return "point(" + text::format_number(p1_) + ")";
  }
  return "?";
}

}  // namespace pxl
