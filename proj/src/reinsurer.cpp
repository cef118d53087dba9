#include "pxl/reinsurer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pxl/error.hpp"
#include "pxl/quadrature.hpp"
#include "text.hpp"

namespace pxl {
namespace {

constexpr double kTruncationLevel = 1.0 - 1e-10;
constexpr int kStartGrid = 60;
constexpr int kMaxIterations = 200;
constexpr double kResidualTol = 1e-8;
constexpr double kMinDamping = 0x1p-20;

void require_moment(const ClaimModel& model, double beta) {
  if (!(beta < model.exp_moment_limit())) {
    throw DivergentMoment("reinsurer utility needs E[exp(beta X)] < inf, but beta=" +
                          text::format_number(beta) + " is not below " +
                          text::format_number(model.exp_moment_limit()) + " for " +
                          model.to_string());
  }
}

ReinsurerIntegrals compute(const ContractParams& c, const ClaimModel& model, double beta,
                           int order) {
  require_moment(model, beta);
  const double tilt = beta * (1.0 - c.alpha);
  const double m = c.cap;
  ReinsurerIntegrals r;
  r.below_exp = integrate([&](double x) { return std::exp(tilt * x) * model.pdf(x); }, 0.0, m,
                          "int_0^M e^{beta(1-alpha)x} dF")
                    .value;
  r.below_x = integrate([&](double x) { return x * model.pdf(x); }, 0.0, m, "int_0^M x dF").value;
  if (order >= 1) {
    r.below_x_exp = integrate([&](double x) { return x * std::exp(tilt * x) * model.pdf(x); }, 0.0,
                              m, "int_0^M x e^{beta(1-alpha)x} dF")
                        .value;
  }
  if (order >= 2) {
    r.below_x2_exp =
        integrate([&](double x) { return x * x * std::exp(tilt * x) * model.pdf(x); }, 0.0, m,
                  "int_0^M x^2 e^{beta(1-alpha)x} dF")
            .value;
  }

  const double upper = model.quantile(kTruncationLevel);
  if (m < upper) {
    r.tail_remainder = model.tail_exp_moment(beta, upper);
    r.tail_exp = integrate([&](double x) { return std::exp(beta * x) * model.pdf(x); }, m, upper,
                           "int_M^U e^{beta x} dF")
                     .value +
                 r.tail_remainder;
    r.tail_x = integrate([&](double x) { return x * model.pdf(x); }, m, upper, "int_M^U x dF").value +
               model.tail_first_moment(upper);
  } else {
    r.tail_remainder = model.tail_exp_moment(beta, m);
    r.tail_exp = r.tail_remainder;
    r.tail_x = model.tail_first_moment(m);
  }
  r.survival = model.survival(m);
  r.density = model.pdf(m);
  return r;
}

}  // namespace

ReinsurerIntegrals reinsurer_integrals(const ContractParams& c, const ClaimModel& model,
                                       const UtilityConfig& cfg, bool second_order) {
  return compute(c, model, cfg.beta, second_order ? 2 : 1);
}

double reinsurer_objective(const ContractParams& c, const ClaimModel& model,
                           const UtilityConfig& cfg) {
  const auto r = compute(c, model, cfg.beta, 0);
  const double b = cfg.beta;
  const double shift = std::exp(-b * c.alpha * c.cap);
  const double ceded_mean =
      (1.0 - c.alpha) * r.below_x + r.tail_x - c.alpha * c.cap * r.survival;
  return r.below_exp + shift * r.tail_exp - b * (1.0 + cfg.loading) * ceded_mean;
}

std::array<double, 2> reinsurer_gradient(const ContractParams& c, const ClaimModel& model,
                                         const UtilityConfig& cfg) {
  const auto r = compute(c, model, cfg.beta, 1);
  const double b = cfg.beta;
  const double load = 1.0 + cfg.loading;
  const double shifted_tail = std::exp(-b * c.alpha * c.cap) * r.tail_exp;
  const double d_alpha = -b * r.below_x_exp - b * c.cap * shifted_tail + b * load * r.below_x +
                         b * load * c.cap * r.survival;
  const double d_cap = -b * c.alpha * shifted_tail + b * load * c.alpha * r.survival;
  return {d_alpha, d_cap};
}

Matrix2 reinsurer_hessian(const ContractParams& c, const ClaimModel& model,
                          const UtilityConfig& cfg) {
  const auto r = compute(c, model, cfg.beta, 2);
  const double b = cfg.beta;
  const double load = 1.0 + cfg.loading;
  const double shifted_tail = std::exp(-b * c.alpha * c.cap) * r.tail_exp;
  Matrix2 h;
  h.a11 = b * b * r.below_x2_exp + b * b * c.cap * c.cap * shifted_tail;
  h.a12 = (-1.0 + b * c.alpha * c.cap) * b * shifted_tail + b * load * r.survival;
  h.a21 = h.a12;
  h.a22 = b * b * c.alpha * c.alpha * shifted_tail +
          b * c.alpha * std::exp(b * (1.0 - c.alpha) * c.cap) * r.density -
          b * c.alpha * load * r.density;
  return h;
}

CapRange reinsurer_cap_bounds(const ClaimModel& model) {
  return {model.quantile(1e-3), model.quantile(1.0 - 1e-6)};
}

CapRange reinsurer_start_range(const ClaimModel& model) {
  return {model.quantile(0.5), model.quantile(1.0 - 1e-6)};
}

namespace {

struct Point {
  double alpha;
  double cap;
};

// Free coordinates are those not pinned to a bound by an outward-pointing
// descent direction (-residual).
std::array<bool, 2> free_mask(const Point& p, const std::array<double, 2>& r, const CapRange& box) {
  const bool alpha_pinned = (p.alpha <= 0.0 && r[0] > 0.0) || (p.alpha >= 1.0 && r[0] < 0.0);
  const bool cap_pinned = (p.cap <= box.lo && r[1] > 0.0) || (p.cap >= box.hi && r[1] < 0.0);
  return {!alpha_pinned, !cap_pinned};
}

double free_norm(const std::array<double, 2>& r, const std::array<bool, 2>& mask) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (mask[i]) acc = std::max(acc, std::fabs(r[i]));
  }
  return acc;
}

Point clamp(Point p, const CapRange& box) {
  return {std::clamp(p.alpha, 0.0, 1.0), std::clamp(p.cap, box.lo, box.hi)};
}

}  // namespace

SolveResult solve_reinsurer(const ClaimModel& model, const UtilityConfig& cfg) {
  require_moment(model, cfg.beta);
  const CapRange box = reinsurer_cap_bounds(model);
  const CapRange start = reinsurer_start_range(model);

  // Coarse start.
  Point best{0.0, start.lo};
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kStartGrid; ++i) {
    const double alpha = static_cast<double>(i) / (kStartGrid - 1);
    for (int j = 0; j < kStartGrid; ++j) {
      const double cap = start.lo + (start.hi - start.lo) * j / (kStartGrid - 1);
      const double g = reinsurer_objective({alpha, cap}, model, cfg);
      if (g < best_value) {
        best_value = g;
        best = {alpha, cap};
      }
    }
  }

  const auto residual = [&](const Point& p) {
    return reinsurer_gradient({p.alpha, p.cap}, model, cfg);
  };

  Point x = best;
  auto r = residual(x);
  auto mask = free_mask(x, r, box);
  double norm = free_norm(r, mask);
  int iterations = 0;
  bool converged = norm < kResidualTol;
  while (!converged && iterations < kMaxIterations) {
    ++iterations;
    // Central-difference Jacobian of the residual.
    const double ha = 1e-6;
    const double hm = 1e-6 * std::max(1.0, x.cap);
    const auto ra_p = residual(clamp({x.alpha + ha, x.cap}, box));
    const auto ra_m = residual(clamp({x.alpha - ha, x.cap}, box));
    const auto rm_p = residual(clamp({x.alpha, x.cap + hm}, box));
    const auto rm_m = residual(clamp({x.alpha, x.cap - hm}, box));
    const double da = std::min(x.alpha + ha, 1.0) - std::max(x.alpha - ha, 0.0);
    const double dm = std::min(x.cap + hm, box.hi) - std::max(x.cap - hm, box.lo);
    const double j11 = (ra_p[0] - ra_m[0]) / da;
    const double j21 = (ra_p[1] - ra_m[1]) / da;
    const double j12 = (rm_p[0] - rm_m[0]) / dm;
    const double j22 = (rm_p[1] - rm_m[1]) / dm;

    double step_alpha = 0.0;
    double step_cap = 0.0;
    if (mask[0] && mask[1]) {
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) break;
      step_alpha = -(j22 * r[0] - j12 * r[1]) / det;
      step_cap = -(-j21 * r[0] + j11 * r[1]) / det;
    } else if (mask[0]) {
      if (j11 == 0.0) break;
      step_alpha = -r[0] / j11;
    } else if (mask[1]) {
      if (j22 == 0.0) break;
      step_cap = -r[1] / j22;
    }

    bool accepted = false;
    for (double t = 1.0; t >= kMinDamping; t *= 0.5) {
      const Point trial = clamp({x.alpha + t * step_alpha, x.cap + t * step_cap}, box);
      const auto r_trial = residual(trial);
      const auto m_trial = free_mask(trial, r_trial, box);
      const double n_trial = free_norm(r_trial, m_trial);
      if (n_trial < norm) {
        x = trial;
        r = r_trial;
        mask = m_trial;
        norm = n_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    converged = norm < kResidualTol;
  }

  SolveResult result;
  result.iterations = iterations;
  result.converged = converged;
  if (!converged) {
    x = best;
    result.note = "Newton stalled (free residual " + text::format_number(norm) +
                  "); returning best start-grid point";
  }
  result.params = ContractParams::make(x.alpha, x.cap);
  result.residual = reinsurer_gradient(result.params, model, cfg);
  const auto final_mask = free_mask(x, result.residual, box);
  result.projected = !final_mask[0] || !final_mask[1];
  if (converged && result.projected) {
    result.note = std::string("held on the boundary: ") +
                  (!final_mask[1] ? "g1 still decreases in M at the upper cap bound q(1-1e-6)="
                                  : "alpha at a bound, ") +
                  (!final_mask[1] ? text::format_number(box.hi) : std::string());
  }
  result.objective_value = reinsurer_objective(result.params, model, cfg);
  result.hessian = reinsurer_hessian(result.params, model, cfg);
  result.hessian_det = result.hessian.det();
  result.hessian_ok = result.hessian_det > 0.0 && result.hessian.a11 > 0.0;
  result.tail_remainder = reinsurer_integrals(result.params, model, cfg).tail_remainder;
  return result;
}

}  // namespace pxl
