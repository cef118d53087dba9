#include <cmath>
#include <fstream>
#include <sstream>

#include "pxl/error.hpp"
#include "pxl/harness.hpp"
#include "text.hpp"

namespace pxl {
namespace {

std::pair<double, double> real_pair(std::string_view value, std::string_view key) {
  const auto parts = text::split(value, ',');
  if (parts.size() != 2) throw ConfigError(std::string(key) + " expects two comma-separated numbers");
  return {text::to_real(parts[0], key), text::to_real(parts[1], key)};
}

std::vector<double> real_list(std::string_view value, std::string_view key) {
  std::vector<double> out;
  for (const auto& piece : text::split(value, ',')) {
    if (!piece.empty()) out.push_back(text::to_real(piece, key));
  }
  return out;
}

std::size_t count(std::string_view value, std::string_view key) {
  const double v = text::to_real(value, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e12) {
    throw ConfigError(std::string(key) + " must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file '" + path.string() + "'");
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = text::trim(line.substr(0, hash));
    if (body.empty()) continue;
    const double v = text::to_real(body, "data file line " + std::to_string(lineno));
    if (!(v >= 0.0)) {
      throw ConfigError("data file line " + std::to_string(lineno) + " is negative");
    }
    out.push_back(v);
  }
  return out;
}

// Wraps construction errors of validated types as configuration errors.
template <class F>
auto as_config(std::string_view key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

Party parse_party(std::string_view value) {
  const auto v = text::lower(text::trim(value));
  if (v == "insurer") return Party::kInsurer;
  if (v == "reinsurer") return Party::kReinsurer;
  throw ConfigError("simulate.party must be 'insurer' or 'reinsurer'");
}

}  // namespace

std::vector<Table2Row> default_table2_rows() {
  return {
      {ClaimModel::exponential(1.0), PriorSpec::beta(2, 2), PriorSpec::exponential(2), {}},
      {ClaimModel::exponential(4.0), PriorSpec::beta(2, 2), PriorSpec::exponential(2), {}},
      {ClaimModel::exponential(8.0), PriorSpec::beta(3, 2), PriorSpec::gamma(2, 2), {}},
      {ClaimModel::weibull(2.0, 1.0), PriorSpec::beta(2, 4), PriorSpec::gamma(3, 2), {}},
      {ClaimModel::weibull(4.0, 1.0), PriorSpec::beta(5, 2), PriorSpec::gamma(2, 4), {}},
      {ClaimModel::weibull(2.0, 4.0), PriorSpec::uniform(0, 1), PriorSpec::gamma(3, 4), {}},
  };
}

std::vector<BalancedWeights> default_weight_grid() {
  std::vector<BalancedWeights> out;
  for (int k = 1; k <= 9; ++k) out.push_back(BalancedWeights::make_closed(0.1, 0.1 * k));
  for (int k = 1; k <= 9; ++k) out.push_back(BalancedWeights::make_closed(0.1 * k, 0.1));
  return out;
}

void ExperimentConfig::set(std::string_view raw_key, std::string_view raw_value,
                           const std::filesystem::path& base_dir) {
  const std::string key = text::lower(text::trim(raw_key));
  const std::string value = text::trim(raw_value);
  const auto utility_field = [&](UtilityConfig& u, std::string_view field) {
    const double v = text::to_real(value, key);
    UtilityConfig next = u;
    if (field == "beta") next.beta = v;
    else if (field == "loading") next.loading = v;
    else if (field == "lambda") next.lambda = v;
    else if (field == "horizon") next.horizon = v;
    else if (field == "wealth") next.initial_wealth = v;
    else throw ConfigError("unknown key '" + key + "'");
    u = as_config(key, [&] {
      return UtilityConfig::make(next.beta, next.loading, next.lambda, next.horizon,
                                 next.initial_wealth);
    });
  };
  const auto contract = [&] {
    const auto [a, m] = real_pair(value, key);
    return as_config(key, [&] { return ContractParams::make(a, m); });
  };

  if (key == "claims") {
    claim_model = as_config(key, [&] { return ClaimModel::parse(value); });
  } else if (key.rfind("insurer.", 0) == 0) {
    utility_field(insurer, std::string_view(key).substr(8));
  } else if (key.rfind("reinsurer.", 0) == 0) {
    utility_field(reinsurer, std::string_view(key).substr(10));
  } else if (key == "prior.theta") {
    theta_prior = as_config(key, [&] { return PriorSpec::parse(value); });
  } else if (key == "prior.alpha") {
    alpha_prior = as_config(key, [&] { return PriorSpec::parse(value); });
  } else if (key == "prior.m") {
    cap_prior = as_config(key, [&] { return PriorSpec::parse(value); });
  } else if (key == "weight") {
    const auto [w1, w2] = real_pair(value, key);
    weights.push_back(as_config(key, [&] { return BalancedWeights::make_closed(w1, w2); }));
  } else if (key == "data") {
    if (sample_n) throw ConfigError("give either inline data or sample_n, not both");
    data = real_list(value, key);
    as_config(key, [&] { return CededSample::make(*data); });
  } else if (key == "data_file") {
    if (sample_n) throw ConfigError("give either data_file or sample_n, not both");
    const std::filesystem::path p = value;
    data = read_data_file(p.is_absolute() || base_dir.empty() ? p : base_dir / p);
  } else if (key == "data_kind") {
    const auto v = text::lower(value);
    if (v == "ceded") data_kind = DataKind::kCeded;
    else if (v == "claims") data_kind = DataKind::kClaims;
    else throw ConfigError("data_kind must be 'ceded' or 'claims'");
  } else if (key == "data_contract") {
    data_contract = contract();
  } else if (key == "sample_n") {
    if (data) throw ConfigError("give either inline data or sample_n, not both");
    sample_n = count(value, key);
  } else if (key == "seed") {
    const double v = text::to_real(value, key);
    if (!(v >= 0.0) || v != std::floor(v) || v >= 0x1p64) {
      throw ConfigError("seed must be a nonnegative integer");
    }
    seed = static_cast<std::uint64_t>(v);
  } else if (key == "replications") {
    replications = count(value, key);
    if (replications < 1) throw ConfigError("replications must be at least 1");
  } else if (key == "sample_size") {
    table2_sample_size = count(value, key);
    if (table2_sample_size < 1) throw ConfigError("sample_size must be at least 1");
  } else if (key == "grid") {
    const auto parts = text::split(value, ',');
    if (parts.size() != 3) throw ConfigError("grid expects n_theta, n_alpha, n_m");
    grid.n_theta = count(parts[0], key);
    grid.n_alpha = count(parts[1], key);
    grid.n_cap = count(parts[2], key);
    if (grid.n_theta == 0 || grid.n_alpha == 0 || grid.n_cap == 0) {
      throw ConfigError("grid resolutions must be positive");
    }
  } else if (key == "grid_tail") {
    grid.tail = text::to_real(value, key);
    if (!(grid.tail > 0.0 && grid.tail < 0.5)) throw ConfigError("grid_tail must lie in (0, 0.5)");
  } else if (key == "table2_row") {
    const auto parts = text::split(value, '|');
    if (parts.size() != 3 && parts.size() != 4) {
      throw ConfigError("table2_row expects claims | alpha prior | M prior [| theta prior]");
    }
    Table2Row row = as_config(key, [&] {
      return Table2Row{ClaimModel::parse(parts[0]), PriorSpec::parse(parts[1]),
                       PriorSpec::parse(parts[2]), std::nullopt};
    });
    if (parts.size() == 4) row.theta_prior = as_config(key, [&] { return PriorSpec::parse(parts[3]); });
    table2_rows.push_back(row);
  } else if (key == "output") {
    output_path = value;
  } else if (key == "target0") {
    target0 = contract();
  } else if (key == "target1") {
    target1 = contract();
  } else if (key == "posterior_mean") {
    posterior_mean = real_pair(value, key);
  } else if (key == "simulate.party") {
    simulate_party = parse_party(value);
  } else if (key == "simulate.contract") {
    simulate_contract = contract();
  } else if (key == "simulate.reps") {
    simulate_reps = count(value, key);
    if (simulate_reps < 1000) throw ConfigError("simulate.reps must be at least 1000");
  } else if (key == "threads") {
    threads = static_cast<unsigned>(count(value, key));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::parse(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = text::trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      cfg.set(body.substr(0, eq), body.substr(eq + 1), base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.parent_path());
}

PriorTriple ExperimentConfig::priors() const {
  return as_config("priors", [&] {
    return PriorTriple::make(theta_prior.value_or(PriorSpec::point_mass(claim_model.theta())),
                             alpha_prior, cap_prior);
  });
}

std::vector<BalancedWeights> ExperimentConfig::weight_list() const {
  return weights.empty() ? default_weight_grid() : weights;
}

CededSample ExperimentConfig::ceded_sample() const {
  if (data.has_value() == sample_n.has_value()) {
    throw ConfigError("exactly one of inline data (data, data_file) or a generator (sample_n) "
                      "must be given");
  }
  std::vector<double> values = data ? *data : claim_model.sample(*sample_n, seed);
  if (data_kind == DataKind::kClaims) {
    if (!data_contract) throw ConfigError("data_kind = claims needs data_contract = alpha, M");
    return as_config("data", [&] { return CededSample::from_claims(values, *data_contract); });
  }
  return as_config("data", [&] { return CededSample::make(std::move(values)); });
}

}  // namespace pxl
