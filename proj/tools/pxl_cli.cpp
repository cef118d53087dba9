#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pxl/pxl.h"

namespace {

int exit_code(pxl_status s) {
  if (s == PXL_OK) return 0;
  if (s == PXL_CONFIG || s == PXL_INVALID_ARGUMENT) return 1;
  return 2;
}

int report_failure(pxl_status s, const char* context) {
  std::fprintf(stderr, "pxl: %s: %s: %s\n", context, pxl_status_name(s), pxl_last_error());
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proportional excess-of-loss reinsurance: optimal contracts and Bayesian estimates"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "experiment configuration (key = value)")
      ->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "master seed for data and simulation");
  app.add_option("--out", out_path, "write the CSV here instead of stdout");

  const char* verbs[][2] = {
      {"solve-insurer", "insurer's optimal (alpha, M)"},
      {"solve-reinsurer", "reinsurer's optimal (alpha, M)"},
      {"posterior", "posterior means of (alpha, M, theta) from the ceded data"},
      {"combine", "balanced estimates from given or solved targets and posterior"},
      {"pipeline", "both optima, the posterior and the balanced estimates"},
      {"table1", "balanced estimates over the weight grid"},
      {"table2", "repeated posterior estimation for each claim family"},
      {"simulate", "surplus Monte Carlo at a contract and its neighbors"},
  };
  for (const auto& v : verbs) app.add_subcommand(v[0], v[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  pxl_config* cfg = nullptr;
  pxl_status s = config_path.empty() ? pxl_config_create(&cfg)
                                     : pxl_config_load(config_path.c_str(), &cfg);
  if (s != PXL_OK) return report_failure(s, "config");
  if (seed_opt->count() > 0) {
    s = pxl_config_set(cfg, "seed", std::to_string(seed).c_str());
    if (s != PXL_OK) {
      pxl_config_destroy(cfg);
      return report_failure(s, "--seed");
    }
  }
  if (out_path.empty()) out_path = pxl_config_output(cfg);

  pxl_report* report = nullptr;
  s = pxl_run(cfg, command.c_str(), &report);
  pxl_config_destroy(cfg);
  if (s != PXL_OK) return report_failure(s, command.c_str());

  int rc = 0;
  if (out_path.empty()) {
    std::cerr << pxl_report_summary(report);
    std::cout << pxl_report_csv(report);
  } else {
    std::cout << pxl_report_summary(report);
    std::ofstream out(out_path);
    out << pxl_report_csv(report);
    if (!out) {
      std::fprintf(stderr, "pxl: cannot write '%s'\n", out_path.c_str());
      rc = 1;
    }
  }
  pxl_report_destroy(report);
  return rc;
}
