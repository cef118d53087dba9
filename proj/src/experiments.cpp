#include <cmath>
#include <string>

#include "pxl/error.hpp"
#include "pxl/harness.hpp"
#include "pxl/insurer.hpp"
#include "pxl/reinsurer.hpp"
#include "pxl/rng.hpp"

namespace pxl {
namespace {

// Runs one pipeline step, prefixing any library error with the step name.
template <class F>
auto step(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.what());
  }
}

SolveResult given(const ContractParams& c) {
  SolveResult r;
  r.params = c;
  r.converged = true;
  r.note = "given in configuration";
  return r;
}

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<TableRow> balanced_table(const std::vector<BalancedWeights>& weights,
                                     const ContractParams& target0,
                                     const ContractParams& target1, double mean_alpha,
                                     double mean_cap) {
  PosteriorSummary post;
  post.mean_alpha = mean_alpha;
  post.mean_cap = mean_cap;
  std::vector<TableRow> rows;
  rows.reserve(weights.size());
  for (const auto& w : weights) {
    const ContractParams est = balanced_estimate(w, target0, target1, post);
    rows.push_back({w.w1, w.w2, w.residual(), est.alpha, est.cap});
  }
  return rows;
}

PipelineReport run_pipeline(const ExperimentConfig& cfg) {
  PipelineReport report;
  report.insurer = cfg.target0 ? given(*cfg.target0) : step("insurer optimum", [&] {
    return solve_insurer(cfg.claim_model, cfg.insurer);
  });
  report.reinsurer = cfg.target1 ? given(*cfg.target1) : step("reinsurer optimum", [&] {
    return solve_reinsurer(cfg.claim_model, cfg.reinsurer);
  });
  if (cfg.posterior_mean) {
    report.posterior.mean_alpha = cfg.posterior_mean->first;
    report.posterior.mean_cap = cfg.posterior_mean->second;
    report.posterior.mean_theta = cfg.claim_model.theta();
  } else {
    report.data = cfg.ceded_sample();
    report.posterior = step("posterior", [&] {
      return posterior_summary(report.data, cfg.claim_model, cfg.priors(), cfg.grid, cfg.threads);
    });
    report.proportional_count = proportional_count(report.data.z, report.insurer.params);
  }
  report.rows = balanced_table(cfg.weight_list(), report.insurer.params, report.reinsurer.params,
                               report.posterior.mean_alpha, report.posterior.mean_cap);
  return report;
}

Table2Result run_table2_row(const Table2Row& row, std::size_t row_index,
                            const ExperimentConfig& cfg) {
  const PriorTriple priors = PriorTriple::make(
      row.theta_prior.value_or(PriorSpec::point_mass(row.claims.theta())), row.alpha_prior,
      row.cap_prior);
  const std::uint64_t row_seed = derive_seed(cfg.seed, row_index);
  std::vector<double> alphas;
  std::vector<double> caps;
  alphas.reserve(cfg.replications);
  caps.reserve(cfg.replications);
  for (std::size_t r = 0; r < cfg.replications; ++r) {
    const auto sample =
        CededSample::make(row.claims.sample(cfg.table2_sample_size, derive_seed(row_seed, r)));
    const auto post = posterior_summary(sample, row.claims, priors, cfg.grid, cfg.threads);
    alphas.push_back(post.mean_alpha);
    caps.push_back(post.mean_cap);
  }
  Table2Result out;
  out.row = row;
  out.replications = cfg.replications;
  for (std::size_t r = 0; r < alphas.size(); ++r) {
    out.mean_alpha += alphas[r];
    out.mean_cap += caps[r];
  }
  out.mean_alpha /= static_cast<double>(alphas.size());
  out.mean_cap /= static_cast<double>(caps.size());
  out.sd_alpha = sample_sd(alphas, out.mean_alpha);
  out.sd_cap = sample_sd(caps, out.mean_cap);
  return out;
}

std::vector<Table2Result> run_table2(const ExperimentConfig& cfg) {
  const auto rows = cfg.table2_rows.empty() ? default_table2_rows() : cfg.table2_rows;
  std::vector<Table2Result> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.push_back(step(("table2 row " + std::to_string(k + 1)).c_str(),
                       [&] { return run_table2_row(rows[k], k, cfg); }));
  }
  return out;
}

}  // namespace pxl
