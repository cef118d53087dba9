#include "pxl/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "pxl/error.hpp"
#include "text.hpp"

namespace pxl {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Axis {
  std::vector<double> nodes;
  double lo = 0.0;
  double hi = 0.0;
  double width = 1.0;  // cell width (1 for a point mass)
};

Axis make_axis(const PriorSpec& prior, std::size_t n, double tail) {
  Axis axis;
  if (prior.is_point_mass()) {
    axis.nodes = {prior.mean()};
    axis.lo = axis.hi = prior.mean();
    return axis;
  }
  if (n == 0) throw DomainError("posterior grid resolution must be positive");
  axis.lo = prior.quantile(tail);
  axis.hi = prior.quantile(1.0 - tail);
  axis.width = (axis.hi - axis.lo) / static_cast<double>(n);
  axis.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    axis.nodes[i] = axis.lo + (static_cast<double>(i) + 0.5) * axis.width;
  }
  return axis;
}

// Running log-sum-exp accumulator with weighted first moments.
struct Accum {
  double max = kNegInf;
  double sum = 0.0;
  double alpha = 0.0;
  double cap = 0.0;
  double theta = 0.0;
  double best = kNegInf;
  std::array<double, 3> best_cell{};

  void add(double lw, double th, double a, double m) {
    if (lw == kNegInf) return;
    if (lw > best) {
      best = lw;
      best_cell = {th, a, m};
    }
    if (lw > max) {
      const double scale = max == kNegInf ? 0.0 : std::exp(max - lw);
      sum *= scale;
      alpha *= scale;
      cap *= scale;
      theta *= scale;
      max = lw;
    }
    const double w = std::exp(lw - max);
    sum += w;
    alpha += w * a;
    cap += w * m;
    theta += w * th;
  }

  void merge(const Accum& o) {
    if (o.max == kNegInf) return;
    if (o.best > best) {
      best = o.best;
      best_cell = o.best_cell;
    }
    if (o.max > max) {
      const double scale = max == kNegInf ? 0.0 : std::exp(max - o.max);
      sum = sum * scale + o.sum;
      alpha = alpha * scale + o.alpha;
      cap = cap * scale + o.cap;
      theta = theta * scale + o.theta;
      max = o.max;
    } else {
      const double scale = std::exp(o.max - max);
      sum += o.sum * scale;
      alpha += o.alpha * scale;
      cap += o.cap * scale;
      theta += o.theta * scale;
    }
  }
};

double log_likelihood_given(std::span<const double> zs, const ClaimModel& model,
                            const ContractParams& c);

}  // namespace

CededSample CededSample::make(std::vector<double> z) {
  for (const double v : z) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("ceded observations must be finite and nonnegative, got " +
                        text::format_number(v));
    }
  }
  return CededSample{std::move(z)};
}

CededSample CededSample::from_claims(std::span<const double> claims, const ContractParams& c) {
  std::vector<double> z;
  z.reserve(claims.size());
  for (const double x : claims) z.push_back(split(x, c).ceded);
  return make(std::move(z));
}

PriorTriple PriorTriple::make(PriorSpec theta, PriorSpec alpha, PriorSpec cap) {
  const auto [tlo, thi] = theta.support();
  if (!(tlo >= 0.0) || (theta.is_point_mass() && !(tlo > 0.0))) {
    throw DomainError("theta prior must live on (0, inf), got " + theta.to_string());
  }
  const auto [alo, ahi] = alpha.support();
  if (!(alo >= 0.0 && ahi <= 1.0)) {
    throw DomainError("alpha prior support must lie in [0,1], got " + alpha.to_string());
  }
  if (alpha.is_point_mass() && !(alo < 1.0)) {
    throw DomainError("alpha prior atom must be below 1 (the ceded density needs alpha < 1)");
  }
  const auto [mlo, mhi] = cap.support();
  if (!(mlo >= 0.0) || (cap.is_point_mass() && !(mlo > 0.0))) {
    throw DomainError("M prior support must lie in (0, inf), got " + cap.to_string());
  }
  (void)thi;
  (void)mhi;
  return PriorTriple{std::move(theta), std::move(alpha), std::move(cap)};
}

BalancedWeights BalancedWeights::make(double w1, double w2) {
  if (!(w1 >= 0.0 && w1 < 1.0) || !(w2 >= 0.0 && w2 < 1.0) || !(w1 + w2 < 1.0)) {
    throw DomainError("balanced weights need w1, w2 in [0,1) with w1 + w2 < 1, got (" +
                      text::format_number(w1) + ", " + text::format_number(w2) + ")");
  }
  return {w1, w2};
}

BalancedWeights BalancedWeights::make_closed(double w1, double w2) {
  if (!(w1 >= 0.0 && w1 < 1.0) || !(w2 >= 0.0 && w2 < 1.0) || !(w1 + w2 <= 1.0)) {
    throw DomainError("balanced weights need w1, w2 in [0,1) with w1 + w2 <= 1, got (" +
                      text::format_number(w1) + ", " + text::format_number(w2) + ")");
  }
  return {w1, w2};
}

std::size_t proportional_count(std::span<const double> z, const ContractParams& c) {
  const double threshold = (1.0 - c.alpha) * c.cap;
  return static_cast<std::size_t>(
      std::count_if(z.begin(), z.end(), [&](double v) { return v <= threshold; }));
}

double ceded_density(double z, const ClaimModel& model, const ContractParams& c) {
  if (!(c.alpha < 1.0)) throw DomainError("ceded density is undefined at alpha = 1");
  if (z < 0.0) return 0.0;
  const double keep = 1.0 - c.alpha;
  if (z <= keep * c.cap) return model.pdf(z / keep) / keep;
  return model.pdf(z + c.alpha * c.cap);
}

double log_likelihood(const CededSample& sample, double theta, const ContractParams& c,
                      const ClaimModel& family) {
  if (!(c.alpha >= 0.0 && c.alpha < 1.0)) {
    throw DomainError("log-likelihood needs alpha in [0,1), got " + text::format_number(c.alpha));
  }
  if (!(c.cap > 0.0)) throw DomainError("log-likelihood needs M > 0");
  return log_likelihood_given(sample.z, family.with_theta(theta), c);
}

namespace {

double log_likelihood_given(std::span<const double> zs, const ClaimModel& model,
                            const ContractParams& c) {
  const double keep = 1.0 - c.alpha;
  const double threshold = keep * c.cap;
  const double shift = c.alpha * c.cap;
  const double log_jacobian = -std::log(keep);
  double acc = 0.0;
  for (const double z : zs) {
    acc += z <= threshold ? log_jacobian + model.log_pdf(z / keep) : model.log_pdf(z + shift);
    if (acc == kNegInf) return acc;
  }
  return acc;
}

}  // namespace

PosteriorSummary posterior_summary(const CededSample& sample, const ClaimModel& family,
                                   const PriorTriple& priors, const GridSpec& grid,
                                   unsigned threads) {
  const Axis theta_axis = make_axis(priors.theta, grid.n_theta, grid.tail);
  const Axis alpha_axis = make_axis(priors.alpha, grid.n_alpha, grid.tail);
  const Axis cap_axis = make_axis(priors.cap, grid.n_cap, grid.tail);

  // Prior log-densities per node; point masses contribute 0.
  const auto prior_logs = [](const PriorSpec& prior, const Axis& axis) {
    std::vector<double> out(axis.nodes.size(), 0.0);
    if (!prior.is_point_mass()) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = prior.log_pdf(axis.nodes[i]);
    }
    return out;
  };
  const auto theta_prior = prior_logs(priors.theta, theta_axis);
  const auto alpha_prior = prior_logs(priors.alpha, alpha_axis);
  const auto cap_prior = prior_logs(priors.cap, cap_axis);

  const std::size_t slices = theta_axis.nodes.size();
  std::vector<Accum> partial(slices);
  const auto run_slice = [&](std::size_t t) {
    Accum acc;
    const double th = theta_axis.nodes[t];
    const ClaimModel model = family.with_theta(th);
    for (std::size_t i = 0; i < alpha_axis.nodes.size(); ++i) {
      const double a = alpha_axis.nodes[i];
      for (std::size_t j = 0; j < cap_axis.nodes.size(); ++j) {
        const double m = cap_axis.nodes[j];
        const double lp = theta_prior[t] + alpha_prior[i] + cap_prior[j];
        if (lp == kNegInf) continue;
        acc.add(lp + log_likelihood_given(sample.z, model, {a, m}), th, a, m);
      }
    }
    partial[t] = acc;
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, slices));
  if (workers <= 1) {
    for (std::size_t t = 0; t < slices; ++t) run_slice(t);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < slices; t += workers) run_slice(t);
      });
    }
  }

  Accum total;
  for (const auto& p : partial) total.merge(p);
  if (total.max == kNegInf || !(total.sum > 0.0)) {
    throw NumericUnderflow("every posterior grid cell has zero weight; check that the data are "
                           "compatible with the prior supports");
  }

  PosteriorSummary out;
  out.grid = grid;
  out.bounds = {std::pair{theta_axis.lo, theta_axis.hi}, std::pair{alpha_axis.lo, alpha_axis.hi},
                std::pair{cap_axis.lo, cap_axis.hi}};
  out.mean_alpha = total.alpha / total.sum;
  out.mean_cap = total.cap / total.sum;
  out.mean_theta = total.theta / total.sum;
  const double log_volume =
      std::log(theta_axis.width) + std::log(alpha_axis.width) + std::log(cap_axis.width);
  out.log_normalization = total.max + std::log(total.sum) + log_volume;
  out.normalization_constant = std::exp(out.log_normalization);
  out.max_cell = total.best_cell;
  return out;
}

ContractParams balanced_estimate(const BalancedWeights& w, const ContractParams& target0,
                                 const ContractParams& target1, const PosteriorSummary& post) {
  const double rest = w.residual();
  return {w.w1 * target0.alpha + w.w2 * target1.alpha + rest * post.mean_alpha,
          w.w1 * target0.cap + w.w2 * target1.cap + rest * post.mean_cap};
}

namespace {

// Minimizes f over [lo, hi] on `points` nodes, then twice more on a window of
// +-2 steps around the best node. Returns (argmin, first-pass step); the
// refinement sharpens the estimate but the coarse step bounds its error.
template <class F>
std::pair<double, double> grid_argmin(F&& f, double lo, double hi, std::size_t points) {
  double best = lo;
  const double coarse = (hi - lo) / static_cast<double>(points - 1);
  for (int pass = 0; pass < 3; ++pass) {
    const double step = (hi - lo) / static_cast<double>(points - 1);
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < points; ++k) {
      const double d = lo + step * static_cast<double>(k);
      const double v = f(d);
      if (v < best_value) {
        best_value = v;
        best = d;
      }
    }
    lo = best - 2.0 * step;
    hi = best + 2.0 * step;
  }
  return {best, coarse};
}

}  // namespace

EquivalenceReport verify_balanced_bayes_equivalence(std::span<const double> support,
                                                    std::span<const double> probabilities,
                                                    const BalancedWeights& w, double target0,
                                                    double target1, std::size_t grid_points) {
  if (support.empty() || support.size() != probabilities.size()) {
    throw DomainError("discrete posterior needs matching, nonempty support and probabilities");
  }
  double lo = std::min(target0, target1);
  double hi = std::max(target0, target1);
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    lo = std::min(lo, support[j]);
    hi = std::max(hi, support[j]);
    total += probabilities[j];
    mean += probabilities[j] * support[j];
  }
  mean /= total;
  if (hi == lo) hi = lo + 1.0;
  const std::size_t points = std::max<std::size_t>(grid_points / 3, 11);

  const double rest = w.residual();
  const auto balanced_loss = [&](double d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      const double loss = w.w1 * (target0 - d) * (target0 - d) +
                          w.w2 * (target1 - d) * (target1 - d) +
                          rest * (support[j] - d) * (support[j] - d);
      acc += probabilities[j] / total * loss;
    }
    return acc;
  };
  // Mixed posterior: atoms at the targets plus the rescaled posterior.
  const auto mixture_loss = [&](double d) {
    double acc = w.w1 * (target0 - d) * (target0 - d) + w.w2 * (target1 - d) * (target1 - d);
    for (std::size_t j = 0; j < support.size(); ++j) {
      acc += rest * probabilities[j] / total * (support[j] - d) * (support[j] - d);
    }
    return acc;
  };

  EquivalenceReport report;
  const auto [b, step] = grid_argmin(balanced_loss, lo, hi, points);
  report.balanced_minimizer = b;
  report.mixture_minimizer = grid_argmin(mixture_loss, lo, hi, points).first;
  report.formula = w.w1 * target0 + w.w2 * target1 + rest * mean;
  report.grid_step = step;
  const double tol = 2.0 * step + 1e-12;
  report.holds = std::fabs(report.balanced_minimizer - report.formula) <= tol &&
                 std::fabs(report.mixture_minimizer - report.formula) <= tol;
  return report;
}

}  // namespace pxl
