#include <cstring>
#include <new>
#include <string>

#include "pxl/contract.hpp"
#include "pxl/error.hpp"
#include "pxl/harness.hpp"
#include "pxl/insurer.hpp"
#include "pxl/pxl.h"
#include "pxl/reinsurer.hpp"

struct pxl_model {
  pxl::ClaimModel model;
};

struct pxl_config {
  pxl::ExperimentConfig cfg;
};

struct pxl_report {
  pxl::CommandOutput output;
};

namespace {

thread_local std::string last_error;

pxl_status fail(pxl_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
pxl_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return PXL_OK;
  } catch (const pxl::Error& e) {
    return fail(static_cast<pxl_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PXL_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(PXL_INTERNAL, e.what());
  }
}

pxl_status null_arg() { return fail(PXL_INVALID_ARGUMENT, "null argument"); }

void fill(const pxl::SolveResult& r, pxl_solution* out) {
  out->alpha = r.params.alpha;
  out->cap = r.params.cap;
  out->objective = r.objective_value;
  out->hessian[0] = r.hessian.a11;
  out->hessian[1] = r.hessian.a12;
  out->hessian[2] = r.hessian.a21;
  out->hessian[3] = r.hessian.a22;
  out->hessian_det = r.hessian_det;
  out->residual[0] = r.residual[0];
  out->residual[1] = r.residual[1];
  out->tail_remainder = r.tail_remainder;
  out->hessian_ok = r.hessian_ok;
  out->projected = r.projected;
  out->converged = r.converged;
  out->iterations = r.iterations;
}

pxl::UtilityConfig utility(const pxl_utility* u) {
  return pxl::UtilityConfig::make(u->beta, u->loading, u->lambda, u->horizon,
                                  u->initial_wealth);
}

}  // namespace

extern "C" {

const char* pxl_last_error(void) { return last_error.c_str(); }

const char* pxl_status_name(pxl_status status) {
  switch (status) {
    case PXL_OK: return "ok";
    case PXL_INVALID_ARGUMENT: return "invalid argument";
    case PXL_OUT_OF_MEMORY: return "out of memory";
    case PXL_DOMAIN: return "domain error";
    case PXL_DEGENERATE_LOADING: return "degenerate loading";
    case PXL_NO_ROOT: return "no root found";
    case PXL_DIVERGENT_MOMENT: return "divergent moment";
    case PXL_NUMERIC: return "numeric error";
    case PXL_NUMERIC_UNDERFLOW: return "numeric underflow";
    case PXL_CONFIG: return "configuration error";
    case PXL_INTERNAL: return "internal error";
  }
  return "unknown status";
}

pxl_status pxl_model_parse(const char* text, pxl_model** out) {
  if (!text || !out) return null_arg();
  return guarded([&] { *out = new pxl_model{pxl::ClaimModel::parse(text)}; });
}

void pxl_model_destroy(pxl_model* model) { delete model; }

pxl_status pxl_model_pdf(const pxl_model* model, double x, double* out) {
  if (!model || !out) return null_arg();
  return guarded([&] { *out = model->model.pdf(x); });
}

pxl_status pxl_model_cdf(const pxl_model* model, double x, double* out) {
  if (!model || !out) return null_arg();
  return guarded([&] { *out = model->model.cdf(x); });
}

pxl_status pxl_model_quantile(const pxl_model* model, double p, double* out) {
  if (!model || !out) return null_arg();
  return guarded([&] { *out = model->model.quantile(p); });
}

pxl_status pxl_model_sample(const pxl_model* model, size_t n, uint64_t seed, double* out) {
  if (!model || (!out && n)) return null_arg();
  return guarded([&] {
    const auto xs = model->model.sample(n, seed);
    if (n) std::memcpy(out, xs.data(), n * sizeof(double));
  });
}

pxl_status pxl_split_loss(double x, double alpha, double cap, pxl_split* out) {
  if (!out) return null_arg();
  return guarded([&] {
    const auto s = pxl::split(x, pxl::ContractParams::make(alpha, cap));
    *out = {s.retained, s.ceded};
  });
}

pxl_status pxl_solve_insurer(const pxl_model* model, const pxl_utility* cfg, pxl_solution* out) {
  if (!model || !cfg || !out) return null_arg();
  return guarded([&] { fill(pxl::solve_insurer(model->model, utility(cfg)), out); });
}

pxl_status pxl_solve_reinsurer(const pxl_model* model, const pxl_utility* cfg,
                               pxl_solution* out) {
  if (!model || !cfg || !out) return null_arg();
  return guarded([&] { fill(pxl::solve_reinsurer(model->model, utility(cfg)), out); });
}

pxl_status pxl_balanced_estimate(double w1, double w2, const double target0[2],
                                 const double target1[2], const double posterior[2],
                                 double out[2]) {
  if (!target0 || !target1 || !posterior || !out) return null_arg();
  return guarded([&] {
    const auto w = pxl::BalancedWeights::make_closed(w1, w2);
    pxl::PosteriorSummary post;
    post.mean_alpha = posterior[0];
    post.mean_cap = posterior[1];
    const auto est = pxl::balanced_estimate(w, {target0[0], target0[1]},
                                            {target1[0], target1[1]}, post);
    out[0] = est.alpha;
    out[1] = est.cap;
  });
}

pxl_status pxl_config_create(pxl_config** out) {
  if (!out) return null_arg();
  return guarded([&] { *out = new pxl_config{}; });
}

pxl_status pxl_config_load(const char* path, pxl_config** out) {
  if (!path || !out) return null_arg();
  return guarded([&] { *out = new pxl_config{pxl::ExperimentConfig::load(path)}; });
}

pxl_status pxl_config_parse(const char* text, pxl_config** out) {
  if (!text || !out) return null_arg();
  return guarded([&] { *out = new pxl_config{pxl::ExperimentConfig::parse(text)}; });
}

pxl_status pxl_config_set(pxl_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return null_arg();
  return guarded([&] {
    pxl::ExperimentConfig next = cfg->cfg;
    next.set(key, value);
    cfg->cfg = std::move(next);
  });
}

void pxl_config_destroy(pxl_config* cfg) { delete cfg; }

const char* pxl_config_output(const pxl_config* cfg) {
  return cfg ? cfg->cfg.output_path.c_str() : "";
}

pxl_status pxl_run(const pxl_config* cfg, const char* command, pxl_report** out) {
  if (!cfg || !command || !out) return null_arg();
  return guarded([&] { *out = new pxl_report{pxl::run_command(command, cfg->cfg)}; });
}

const char* pxl_report_summary(const pxl_report* report) {
  return report ? report->output.summary.c_str() : "";
}

const char* pxl_report_csv(const pxl_report* report) {
  return report ? report->output.csv.c_str() : "";
}

void pxl_report_destroy(pxl_report* report) { delete report; }

}  // extern "C"
