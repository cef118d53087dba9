#include <cstdio>
#include <sstream>

#include "pxl/error.hpp"
#include "pxl/harness.hpp"
#include "pxl/insurer.hpp"
#include "pxl/reinsurer.hpp"

namespace pxl {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

std::string solve_csv(const char* party, const SolveResult& r) {
  std::ostringstream out;
  out << "party,alpha,m,objective,hessian_det,hessian_ok,projected,converged\n"
      << party << ',' << fixed5(r.params.alpha) << ',' << fixed5(r.params.cap) << ','
      << fixed5(r.objective_value) << ',' << sci(r.hessian_det) << ',' << r.hessian_ok << ','
      << r.projected << ',' << r.converged << '\n';
  return out.str();
}

std::string describe(const char* party, const SolveResult& r) {
  std::ostringstream out;
  out.precision(6);
  out << party << " optimum: alpha = " << r.params.alpha << ", M = " << r.params.cap << '\n'
      << "  objective " << r.objective_value << ", hessian det " << r.hessian_det
      << (r.hessian_ok ? " (positive definite)" : " (not positive definite)") << '\n'
      << "  residuals (" << r.residual[0] << ", " << r.residual[1] << "), iterations "
      << r.iterations << (r.converged ? "" : ", not converged")
      << (r.projected ? ", projected onto the boundary" : "") << '\n';
  if (r.tail_remainder > 0.0) out << "  truncated tail mass " << r.tail_remainder << '\n';
  if (!r.note.empty()) out << "  note: " << r.note << '\n';
  return out.str();
}

std::string describe(const PosteriorSummary& p, std::size_t n) {
  std::ostringstream out;
  out.precision(6);
  out << "posterior from " << n << " ceded amounts on a " << p.grid.n_theta << 'x'
      << p.grid.n_alpha << 'x' << p.grid.n_cap << " grid\n"
      << "  E[alpha] = " << p.mean_alpha << ", E[M] = " << p.mean_cap
      << ", E[theta] = " << p.mean_theta << '\n'
      << "  log normalization " << p.log_normalization << ", mode cell (" << p.max_cell[0]
      << ", " << p.max_cell[1] << ", " << p.max_cell[2] << ")\n";
  return out.str();
}

std::string table_text(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "  w1       w2       1-w1-w2  alpha    M\n";
  for (const auto& r : rows) {
    out << "  " << fixed5(r.w1) << "  " << fixed5(r.w2) << "  " << fixed5(r.one_minus) << "  "
        << fixed5(r.alpha_hat) << "  " << fixed5(r.m_hat) << '\n';
  }
  return out.str();
}

SolveResult solve_for(const ExperimentConfig& cfg, Party party) {
  return party == Party::kInsurer ? solve_insurer(cfg.claim_model, cfg.insurer)
                                  : solve_reinsurer(cfg.claim_model, cfg.reinsurer);
}

CommandOutput simulate(const ExperimentConfig& cfg) {
  const Party party = cfg.simulate_party;
  const UtilityConfig& u = party == Party::kInsurer ? cfg.insurer : cfg.reinsurer;
  const ContractParams best = cfg.simulate_contract ? *cfg.simulate_contract
                                                    : solve_for(cfg, party).params;
  const auto stats =
      simulate_surplus(best, cfg.claim_model, u, party, cfg.simulate_reps, cfg.seed, cfg.threads);
  const double exact = analytic_expected_utility(best, cfg.claim_model, u, party);
  const auto checks =
      check_neighbors(best, cfg.claim_model, u, party, cfg.simulate_reps, cfg.seed);

  CommandOutput out;
  std::ostringstream s;
  s.precision(6);
  s << (party == Party::kInsurer ? "insurer" : "reinsurer") << " surplus at alpha = "
    << best.alpha << ", M = " << best.cap << " over " << stats.replications
    << " paths\n  premium " << stats.premium << ", expected utility " << stats.expected_utility
    << " +- " << stats.std_error << " (exact " << exact << "), ruin frequency "
    << stats.ruin_frequency << '\n';
  std::ostringstream c;
  c << "alpha,m,expected_utility,std_error,margin,margin_se,status\n"
    << fixed5(best.alpha) << ',' << fixed5(best.cap) << ',' << sci(stats.expected_utility)
    << ',' << sci(stats.std_error) << ",,,best\n";
  for (const auto& n : checks) {
    const char* status = !n.feasible ? "infeasible" : n.beaten ? "beaten" : "not_beaten";
    s << "  neighbor (" << n.neighbor.alpha << ", " << n.neighbor.cap << "): " << status;
    if (n.feasible) s << ", margin " << n.margin << " +- " << n.std_error;
    s << '\n';
    c << fixed5(n.neighbor.alpha) << ',' << fixed5(n.neighbor.cap) << ",,,";
    if (n.feasible) c << sci(n.margin) << ',' << sci(n.std_error);
    else c << ',';
    c << ',' << status << '\n';
  }
  out.summary = s.str();
  out.csv = c.str();
  return out;
}

}  // namespace

std::string fixed5(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  if (std::string_view(buf) == "-0.00000") return "0.00000";
  return buf;
}

std::string table1_csv(const std::vector<TableRow>& rows) {
  std::string out = "w1,w2,residual_weight,alpha_hat,m_hat\n";
  for (const auto& r : rows) {
    out += fixed5(r.w1) + ',' + fixed5(r.w2) + ',' + fixed5(r.one_minus) + ',' +
           fixed5(r.alpha_hat) + ',' + fixed5(r.m_hat) + '\n';
  }
  return out;
}

std::string table2_csv(const std::vector<Table2Result>& results) {
  std::string out;
  bool point_theta = false;
  for (const auto& r : results) point_theta |= !r.row.theta_prior.has_value();
  if (point_theta) out += "# theta prior: point mass at the generating parameter\n";
  out += "family,prior_alpha,prior_m,mean_alpha,sd_alpha,mean_m,sd_m\n";
  for (const auto& r : results) {
    out += csv_field(r.row.claims.to_string()) + ',' + csv_field(r.row.alpha_prior.to_string()) +
           ',' + csv_field(r.row.cap_prior.to_string()) + ',' + fixed5(r.mean_alpha) + ',' +
           fixed5(r.sd_alpha) + ',' + fixed5(r.mean_cap) + ',' + fixed5(r.sd_cap) + '\n';
  }
  return out;
}

CommandOutput run_command(std::string_view command, const ExperimentConfig& cfg) {
  CommandOutput out;
  if (command == "solve-insurer") {
    const auto r = solve_insurer(cfg.claim_model, cfg.insurer);
    out.summary = describe("insurer", r);
    out.csv = solve_csv("insurer", r);
  } else if (command == "solve-reinsurer") {
    const auto r = solve_reinsurer(cfg.claim_model, cfg.reinsurer);
    out.summary = describe("reinsurer", r);
    out.csv = solve_csv("reinsurer", r);
  } else if (command == "posterior") {
    const auto data = cfg.ceded_sample();
    const auto p = posterior_summary(data, cfg.claim_model, cfg.priors(), cfg.grid, cfg.threads);
    out.summary = describe(p, data.z.size());
    out.csv = "mean_theta,mean_alpha,mean_m,log_normalization\n" + fixed5(p.mean_theta) + ',' +
              fixed5(p.mean_alpha) + ',' + fixed5(p.mean_cap) + ',' +
              fixed5(p.log_normalization) + '\n';
  } else if (command == "combine" || command == "pipeline" || command == "table1") {
    const auto r = run_pipeline(cfg);
    std::ostringstream s;
    if (command != "table1") {
      s << describe("insurer", r.insurer) << describe("reinsurer", r.reinsurer);
      if (!cfg.posterior_mean) {
        s << describe(r.posterior, r.data.z.size()) << "  " << r.proportional_count
          << " observations on the proportional branch of the insurer's contract\n";
      }
    }
    s << "balanced estimates\n" << table_text(r.rows);
    out.summary = s.str();
    out.csv = table1_csv(r.rows);
  } else if (command == "table2") {
    const auto results = run_table2(cfg);
    std::ostringstream s;
    s << "posterior means over " << cfg.replications << " samples of size "
      << cfg.table2_sample_size << " (theta prior defaults to a point mass at the generating "
      << "parameter)\n";
    s.precision(5);
    s << std::fixed;
    for (const auto& r : results) {
      s << "  " << r.row.claims.to_string() << "  alpha " << r.mean_alpha << " (" << r.sd_alpha
        << ")  M " << r.mean_cap << " (" << r.sd_cap << ")\n";
    }
    out.summary = s.str();
    out.csv = table2_csv(results);
  } else if (command == "simulate") {
    out = simulate(cfg);
  } else {
    throw ConfigError("unknown command '" + std::string(command) + "'");
  }
  return out;
}

}  // namespace pxl
