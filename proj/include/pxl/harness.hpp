#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pxl/bayes.hpp"
#include "pxl/contract.hpp"
#include "pxl/distributions.hpp"
#include "pxl/utility.hpp"

namespace pxl {

enum class Party { kInsurer, kReinsurer };
enum class DataKind { kCeded, kClaims };

/// One row of the multi-family experiment: claim law plus priors for alpha and M.
/// Without a theta prior, theta is a point mass at the generating value.
struct Table2Row {
  ClaimModel claims = ClaimModel::exponential(1.0);
  PriorSpec alpha_prior = PriorSpec::beta(2.0, 2.0);
  PriorSpec cap_prior = PriorSpec::exponential(2.0);
  std::optional<PriorSpec> theta_prior;
};

/// The six built-in rows of the multi-family experiment.
std::vector<Table2Row> default_table2_rows();
/// The eighteen (w1, w2) pairs of the reference weight table.
std::vector<BalancedWeights> default_weight_grid();

/// Flat `key = value` experiment description; see README for the key list.
struct ExperimentConfig {
  ClaimModel claim_model = ClaimModel::exponential(1.0);
  UtilityConfig insurer = UtilityConfig::make(2.0, 0.8);
  UtilityConfig reinsurer = UtilityConfig::make(0.2, 0.3);
  std::optional<PriorSpec> theta_prior;
  PriorSpec alpha_prior = PriorSpec::beta(2.0, 2.0);
  PriorSpec cap_prior = PriorSpec::exponential(2.0);
  std::vector<BalancedWeights> weights;

  // Data: inline values (or a data file) XOR a generator (sample_n with seed).
  std::optional<std::vector<double>> data;
  std::optional<std::size_t> sample_n;
  std::uint64_t seed = 20240101;
  DataKind data_kind = DataKind::kCeded;
  std::optional<ContractParams> data_contract;

  std::size_t replications = 100;
  std::size_t table2_sample_size = 100;
  GridSpec grid;
  std::vector<Table2Row> table2_rows;
  std::string output_path;

  // Optional fixed inputs for the combination step.
  std::optional<ContractParams> target0;
  std::optional<ContractParams> target1;
  std::optional<std::pair<double, double>> posterior_mean;

  Party simulate_party = Party::kInsurer;
  std::optional<ContractParams> simulate_contract;
  std::size_t simulate_reps = 100000;

  unsigned threads = 0;

  /// Throws ConfigError on unknown keys, malformed values, or conflicts.
  static ExperimentConfig parse(std::string_view text,
                                const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Applies one `key = value` assignment.
  void set(std::string_view key, std::string_view value,
           const std::filesystem::path& base_dir = {});

  PriorTriple priors() const;
  /// Weight pairs to tabulate: the configured list or the default grid.
  std::vector<BalancedWeights> weight_list() const;
  /// Resolves the observed ceded amounts (inline, file, or generated).
  CededSample ceded_sample() const;
};

struct TableRow {
  double w1 = 0.0;
  double w2 = 0.0;
  double one_minus = 1.0;
  double alpha_hat = 0.0;
  double m_hat = 0.0;
};

std::vector<TableRow> balanced_table(const std::vector<BalancedWeights>& weights,
                                     const ContractParams& target0,
                                     const ContractParams& target1, double mean_alpha,
                                     double mean_cap);

struct PipelineReport {
  SolveResult insurer;
  SolveResult reinsurer;
  PosteriorSummary posterior;
  CededSample data;
  std::size_t proportional_count = 0;  // n1 at the insurer target
  std::vector<TableRow> rows;
};

/// Insurer solve, reinsurer solve, posterior, then one balanced estimate per
/// weight pair. Errors propagate as pxl::Error with the failing step prefixed.
PipelineReport run_pipeline(const ExperimentConfig& cfg);

struct Table2Result {
  Table2Row row;
  std::size_t replications = 0;
  double mean_alpha = 0.0;
  double sd_alpha = 0.0;
  double mean_cap = 0.0;
  double sd_cap = 0.0;
};

/// Replication r of row k draws its sample from derive_seed(derive_seed(seed, k), r).
Table2Result run_table2_row(const Table2Row& row, std::size_t row_index,
                            const ExperimentConfig& cfg);
std::vector<Table2Result> run_table2(const ExperimentConfig& cfg);

// ---------------------------------------------------------------- surplus

struct SurplusStats {
  double premium = 0.0;
  double expected_utility = 0.0;
  double std_error = 0.0;
  double ruin_frequency = 0.0;  // share of paths ending with negative surplus
  std::size_t replications = 0;
};

/// Expected-value premium (1 + loading) lambda t E[retained or ceded part].
double party_premium(const ContractParams& c, const ClaimModel& model, const UtilityConfig& cfg,
                     Party party);

/// -exp(-beta (u0 + premium)) * exp(lambda t (E[e^{beta part}] - 1)).
double analytic_expected_utility(const ContractParams& c, const ClaimModel& model,
                                 const UtilityConfig& cfg, Party party);

/// Terminal utility of each replication. Replications are simulated in
/// batches of 1000 seeded by derive_seed(seed, batch), so the same seed gives
/// the same claims for any contract (common random numbers).
std::vector<double> simulate_utilities(const ContractParams& c, const ClaimModel& model,
                                       const UtilityConfig& cfg, Party party,
                                       std::size_t reps, std::uint64_t seed,
                                       std::vector<char>* ruined = nullptr, unsigned threads = 0);

SurplusStats simulate_surplus(const ContractParams& c, const ClaimModel& model,
                              const UtilityConfig& cfg, Party party, std::size_t reps,
                              std::uint64_t seed, unsigned threads = 0);

struct NeighborCheck {
  ContractParams neighbor;
  bool feasible = true;  // alpha inside [0,1]
  double margin = 0.0;   // mean utility(best) - utility(neighbor), paired
  double std_error = 0.0;
  bool beaten = false;   // margin > 2 std_error
};

/// Compares `best` with its eight neighbors (alpha +- d_alpha, M * (1 +- rel_cap))
/// using common random numbers. Neighbors with alpha outside [0,1] are
/// reported as infeasible and not simulated.
std::vector<NeighborCheck> check_neighbors(const ContractParams& best, const ClaimModel& model,
                                           const UtilityConfig& cfg, Party party,
                                           std::size_t reps, std::uint64_t seed,
                                           double d_alpha = 0.05, double rel_cap = 0.10);

// -------------------------------------------------------------------- CSV

std::string fixed5(double v);
std::string table1_csv(const std::vector<TableRow>& rows);
std::string table2_csv(const std::vector<Table2Result>& results);

struct CommandOutput {
  std::string summary;
  std::string csv;
};

/// Runs one CLI verb: solve-insurer, solve-reinsurer, posterior, combine,
/// pipeline, table1, table2, simulate. Throws ConfigError for an unknown verb.
CommandOutput run_command(std::string_view command, const ExperimentConfig& cfg);

}  // namespace pxl
