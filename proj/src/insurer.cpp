#include "pxl/insurer.hpp"

#include <cmath>
#include <vector>

#include "pxl/error.hpp"
#include "pxl/quadrature.hpp"
#include "text.hpp"

namespace pxl {
namespace {

constexpr int kScanPoints = 200;

struct BelowCap {
  double x = 0.0;       // int_0^M x dF
  double exp = 0.0;     // int_0^M e^{a b x} dF
  double x_exp = 0.0;   // int_0^M x e^{a b x} dF
  double x2_exp = 0.0;  // int_0^M x^2 e^{a b x} dF
};

BelowCap below_cap(const ContractParams& c, const ClaimModel& model, double beta, int order) {
  const double k = c.alpha * beta;
  BelowCap out;
  out.x = integrate([&](double x) { return x * model.pdf(x); }, 0.0, c.cap, "int x dF").value;
  out.exp = integrate([&](double x) { return std::exp(k * x) * model.pdf(x); }, 0.0, c.cap,
                      "int e^{alpha beta x} dF")
                .value;
  if (order >= 1) {
    out.x_exp = integrate([&](double x) { return x * std::exp(k * x) * model.pdf(x); }, 0.0,
                          c.cap, "int x e^{alpha beta x} dF")
                    .value;
  }
  if (order >= 2) {
    out.x2_exp = integrate([&](double x) { return x * x * std::exp(k * x) * model.pdf(x); }, 0.0,
                           c.cap, "int x^2 e^{alpha beta x} dF")
                     .value;
  }
  return out;
}

}  // namespace

double insurer_objective(const ContractParams& c, const ClaimModel& model,
                         const UtilityConfig& cfg) {
  const auto b = below_cap(c, model, cfg.beta, 0);
  const double s = model.survival(c.cap);
  const double lt = cfg.exposure();
  const double expected_retained = c.alpha * b.x + c.alpha * c.cap * s;
  const double exp_moment = b.exp + std::exp(c.alpha * cfg.beta * c.cap) * s;
  return -cfg.beta * (1.0 + cfg.loading) * lt * expected_retained + lt * exp_moment;
}

std::array<double, 2> insurer_gradient(const ContractParams& c, const ClaimModel& model,
                                       const UtilityConfig& cfg) {
  const auto b = below_cap(c, model, cfg.beta, 1);
  const double s = model.survival(c.cap);
  const double lt = cfg.exposure();
  const double load = 1.0 + cfg.loading;
  const double e_cap = std::exp(c.alpha * cfg.beta * c.cap);
  const double d_alpha = -cfg.beta * load * lt * (b.x + c.cap * s) +
                         lt * cfg.beta * (b.x_exp + c.cap * e_cap * s);
  const double d_cap = lt * c.alpha * cfg.beta * s * (e_cap - load);
  return {d_alpha, d_cap};
}

Matrix2 insurer_hessian(const ContractParams& c, const ClaimModel& model,
                        const UtilityConfig& cfg) {
  const auto b = below_cap(c, model, cfg.beta, 2);
  const double s = model.survival(c.cap);
  const double lt = cfg.exposure();
  const double b2 = cfg.beta * cfg.beta;
  const double e_cap = std::exp(c.alpha * cfg.beta * c.cap);
  Matrix2 h;
  h.a11 = lt * b2 * b.x2_exp + lt * b2 * c.cap * c.cap * e_cap * s;
  h.a12 = lt * c.alpha * b2 * c.cap * e_cap * s;
  h.a21 = h.a12;
  h.a22 = lt * c.alpha * c.alpha * b2 * e_cap * s;
  return h;
}

double insurer_reduced_residual(double cap, const ClaimModel& model, const UtilityConfig& cfg) {
  const double load = 1.0 + cfg.loading;
  const double rate = std::log(load) / cap;
  return integrate([&](double x) { return x * (std::exp(rate * x) - load) * model.pdf(x); }, 0.0,
                   cap, "reduced insurer residual")
      .value;
}

SolveResult solve_insurer(const ClaimModel& model, const UtilityConfig& cfg) {
  if (!(cfg.loading > 0.0)) {
    throw DegenerateLoading("insurer loading must be positive (got " +
                            text::format_number(cfg.loading) +
                            "); with ln(1+theta) <= 0 the cap condition forces alpha*M <= 0");
  }
  const double log_load = std::log1p(cfg.loading);

  // Log-spaced scan of the reduced residual.
  const double lo = model.quantile(1e-3);
  const double hi = model.quantile(0.9999);
  std::vector<double> caps(kScanPoints);
  std::vector<double> residuals(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    caps[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (kScanPoints - 1));
    residuals[i] = insurer_reduced_residual(caps[i], model, cfg);
    if (!std::isfinite(residuals[i])) {
      throw NumericError("reduced insurer residual is not finite at M=" +
                         text::format_number(caps[i]));
    }
  }

  SolveResult result;
  int bracket = -1;
  for (int i = 0; i + 1 < kScanPoints; ++i) {
    if ((residuals[i] <= 0.0) != (residuals[i + 1] <= 0.0)) {
      bracket = i;
      break;
    }
  }

  double alpha = 1.0;
  double cap = log_load / cfg.beta;
  if (bracket >= 0) {
    double a = caps[bracket];
    double b = caps[bracket + 1];
    double fa = residuals[bracket];
    int iterations = 0;
    while (b - a > 1e-12 * b && iterations < 200) {
      const double m = 0.5 * (a + b);
      const double fm = insurer_reduced_residual(m, model, cfg);
      if ((fm <= 0.0) == (fa <= 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
      ++iterations;
    }
    double root = 0.5 * (a + b);
    // Newton polish inside the final bracket.
    for (int k = 0; k < 3; ++k) {
      const double f = insurer_reduced_residual(root, model, cfg);
      const double h = 1e-6 * root;
      const double df = (insurer_reduced_residual(root + h, model, cfg) -
                         insurer_reduced_residual(root - h, model, cfg)) /
                        (2.0 * h);
      if (!(df != 0.0) || !std::isfinite(df)) break;
      const double next = root - f / df;
      if (!(next > 0.0) || std::fabs(insurer_reduced_residual(next, model, cfg)) >= std::fabs(f)) {
        break;
      }
      root = next;
      ++iterations;
    }
    result.iterations = iterations;
    alpha = log_load / (cfg.beta * root);
    cap = root;
    if (alpha > 1.0) {
      result.projected = true;
      result.note = "root at M=" + text::format_number(root) + " implies alpha=" +
                    text::format_number(alpha) + " > 1; projected to alpha=1";
      alpha = 1.0;
      cap = log_load / cfg.beta;
    }
  } else if (residuals.front() < 0.0) {
    // The residual tends to 0 from below as M -> 0, where alpha -> inf.
    result.projected = true;
    result.note =
        "reduced residual negative on the whole scan [" + text::format_number(lo) + ", " +
        text::format_number(hi) +
        "]: the objective decreases in alpha along alpha*beta*M = ln(1+theta); projected to alpha=1";
  } else {
    throw NoRootFound("reduced insurer residual has no sign change on [" + text::format_number(lo) +
                      ", " + text::format_number(hi) + "] (values from " +
                      text::format_number(residuals.front()) + " to " +
                      text::format_number(residuals.back()) + ")");
  }

  result.params = ContractParams::make(alpha, cap);
  result.objective_value = insurer_objective(result.params, model, cfg);
  result.residual = insurer_gradient(result.params, model, cfg);
  result.hessian = insurer_hessian(result.params, model, cfg);
  result.hessian_det = result.hessian.det();
  result.hessian_ok = result.hessian_det > 0.0 && result.hessian.a11 > 0.0;
  result.converged = true;
  return result;
}

}  // namespace pxl
