#ifndef PXL_PXL_H
#define PXL_PXL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PXL_API __declspec(dllexport)
#else
#define PXL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pxl_status {
  PXL_OK = 0,
  PXL_INVALID_ARGUMENT = 1,
  PXL_OUT_OF_MEMORY = 2,
  PXL_DOMAIN = 3,
  PXL_DEGENERATE_LOADING = 4,
  PXL_NO_ROOT = 5,
  PXL_DIVERGENT_MOMENT = 6,
  PXL_NUMERIC = 7,
  PXL_NUMERIC_UNDERFLOW = 8,
  PXL_CONFIG = 9,
  PXL_INTERNAL = 10
} pxl_status;

typedef struct pxl_model pxl_model;
typedef struct pxl_config pxl_config;
typedef struct pxl_report pxl_report;

typedef struct pxl_utility {
  double beta;
  double loading;
  double lambda;
  double horizon;
  double initial_wealth;
} pxl_utility;

typedef struct pxl_solution {
  double alpha;
  double cap;
  double objective;
  double hessian[4]; /* a11, a12, a21, a22 */
  double hessian_det;
  double residual[2];
  double tail_remainder;
  int hessian_ok;
  int projected;
  int converged;
  int iterations;
} pxl_solution;

typedef struct pxl_split {
  double retained;
  double ceded;
} pxl_split;

/* Message of the last failed call on this thread; never NULL. */
PXL_API const char* pxl_last_error(void);
PXL_API const char* pxl_status_name(pxl_status status);

/* Claim models: "exp(1)", "weibull(2,1)" (shape, scale), "gamma(2,2)" (shape, rate). */
PXL_API pxl_status pxl_model_parse(const char* text, pxl_model** out);
PXL_API void pxl_model_destroy(pxl_model* model);
PXL_API pxl_status pxl_model_pdf(const pxl_model* model, double x, double* out);
PXL_API pxl_status pxl_model_cdf(const pxl_model* model, double x, double* out);
PXL_API pxl_status pxl_model_quantile(const pxl_model* model, double p, double* out);
PXL_API pxl_status pxl_model_sample(const pxl_model* model, size_t n, uint64_t seed, double* out);

PXL_API pxl_status pxl_split_loss(double x, double alpha, double cap, pxl_split* out);

PXL_API pxl_status pxl_solve_insurer(const pxl_model* model, const pxl_utility* cfg,
                                     pxl_solution* out);
PXL_API pxl_status pxl_solve_reinsurer(const pxl_model* model, const pxl_utility* cfg,
                                       pxl_solution* out);

/* w1*target0 + w2*target1 + (1-w1-w2)*posterior mean; w1 + w2 <= 1. */
PXL_API pxl_status pxl_balanced_estimate(double w1, double w2, const double target0[2],
                                         const double target1[2], const double posterior[2],
                                         double out[2]);

PXL_API pxl_status pxl_config_create(pxl_config** out);
PXL_API pxl_status pxl_config_load(const char* path, pxl_config** out);
PXL_API pxl_status pxl_config_parse(const char* text, pxl_config** out);
PXL_API pxl_status pxl_config_set(pxl_config* cfg, const char* key, const char* value);
PXL_API void pxl_config_destroy(pxl_config* cfg);

/* Runs a command (solve-insurer, solve-reinsurer, posterior, combine, pipeline,
   table1, table2, simulate) and returns its report. */
PXL_API pxl_status pxl_run(const pxl_config* cfg, const char* command, pxl_report** out);
PXL_API const char* pxl_report_summary(const pxl_report* report);
PXL_API const char* pxl_report_csv(const pxl_report* report);
/* Output path from the configuration, or "" if none. */
PXL_API const char* pxl_config_output(const pxl_config* cfg);
PXL_API void pxl_report_destroy(pxl_report* report);

#ifdef __cplusplus
}
#endif

#endif
