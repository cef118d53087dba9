#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "pxl/pxl.h"

TEST_CASE("model handle") {
  pxl_model* m = nullptr;
  REQUIRE(pxl_model_parse("exp(1)", &m) == PXL_OK);
  double v = 0;
  CHECK(pxl_model_pdf(m, 0.0, &v) == PXL_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(pxl_model_quantile(m, 0.95, &v) == PXL_OK);
  CHECK(v == doctest::Approx(std::log(20.0)));
  CHECK(pxl_model_quantile(m, 1.5, &v) == PXL_DOMAIN);
  CHECK(std::string(pxl_last_error()).size() > 0);
  std::vector<double> xs(5);
  CHECK(pxl_model_sample(m, xs.size(), 3, xs.data()) == PXL_OK);
  CHECK(xs[0] > 0);
  pxl_model_destroy(m);
  pxl_model* bad = nullptr;
  CHECK(pxl_model_parse("pareto(1)", &bad) == PXL_CONFIG);
  CHECK(bad == nullptr);
  CHECK(pxl_model_parse(nullptr, &bad) == PXL_INVALID_ARGUMENT);
}

TEST_CASE("split and balanced estimate") {
  pxl_split s;
  REQUIRE(pxl_split_loss(4.117, 0.27, 1.08, &s) == PXL_OK);
  CHECK(s.retained == doctest::Approx(0.2916));
  CHECK(pxl_split_loss(-1, 0.27, 1.08, &s) == PXL_DOMAIN);
  const double t0[2] = {0.27, 1.08}, t1[2] = {0.38, 37.001}, post[2] = {0.6, 0.78};
  double out[2];
  REQUIRE(pxl_balanced_estimate(0.1, 0.1, t0, t1, post, out) == PXL_OK);
  CHECK(out[0] == doctest::Approx(0.545));
  CHECK(out[1] == doctest::Approx(4.4321));
  CHECK(pxl_balanced_estimate(0.8, 0.8, t0, t1, post, out) == PXL_DOMAIN);
}

TEST_CASE("solvers through the C interface") {
  pxl_model* m = nullptr;
  REQUIRE(pxl_model_parse("exp(1)", &m) == PXL_OK);
  pxl_utility ins{2.0, 0.8, 1.0, 1.0, 0.0};
  pxl_solution r{};
  REQUIRE(pxl_solve_insurer(m, &ins, &r) == PXL_OK);
  CHECK(r.alpha == 1.0);
  CHECK(r.projected == 1);
  CHECK(r.hessian[1] == r.hessian[2]);
  pxl_utility re{0.2, 0.3, 1.0, 1.0, 0.0};
  REQUIRE(pxl_solve_reinsurer(m, &re, &r) == PXL_OK);
  CHECK(r.alpha == doctest::Approx(0.385).epsilon(0.01));
  pxl_utility zero{2.0, 0.0, 1.0, 1.0, 0.0};
  CHECK(pxl_solve_insurer(m, &zero, &r) == PXL_DEGENERATE_LOADING);
  pxl_utility diverge{1.0, 0.3, 1.0, 1.0, 0.0};
  CHECK(pxl_solve_reinsurer(m, &diverge, &r) == PXL_DIVERGENT_MOMENT);
  pxl_utility invalid{-1.0, 0.3, 1.0, 1.0, 0.0};
  CHECK(pxl_solve_reinsurer(m, &invalid, &r) == PXL_DOMAIN);
  pxl_model_destroy(m);
}

TEST_CASE("config and run") {
  pxl_config* cfg = nullptr;
  REQUIRE(pxl_config_parse("target0 = 0.27, 1.08\ntarget1 = 0.38, 37.001\n"
                           "posterior_mean = 0.6, 0.78\n",
                           &cfg) == PXL_OK);
  CHECK(pxl_config_set(cfg, "nope", "1") == PXL_CONFIG);
  CHECK(pxl_config_set(cfg, "seed", "12") == PXL_OK);
  CHECK(std::string(pxl_config_output(cfg)).empty());
  pxl_report* rep = nullptr;
  REQUIRE(pxl_run(cfg, "table1", &rep) == PXL_OK);
  const std::string csv = pxl_report_csv(rep);
  CHECK(csv.find("0.10000,0.10000,0.80000,0.54500,4.43210") != std::string::npos);
  CHECK(std::string(pxl_report_summary(rep)).size() > 0);
  pxl_report_destroy(rep);
  CHECK(pxl_run(cfg, "posterior", &rep) == PXL_CONFIG);
  CHECK(pxl_run(cfg, "unknown", &rep) == PXL_CONFIG);
  pxl_config_destroy(cfg);
  CHECK(pxl_config_load("/nonexistent/x.conf", &cfg) == PXL_CONFIG);
  CHECK(std::string(pxl_status_name(PXL_NO_ROOT)) == "no root found");
}
