#include <algorithm>
#include <cmath>
#include <thread>

#include "pxl/error.hpp"
#include "pxl/harness.hpp"
#include "pxl/quadrature.hpp"
#include "pxl/rng.hpp"

namespace pxl {
namespace {

constexpr std::size_t kBatch = 1000;

double part(double x, const ContractParams& c, Party party) {
  const LossSplit s = split(x, c);
  return party == Party::kInsurer ? s.retained : s.ceded;
}

// Terminal utilities for several contracts on shared claim paths.
// out[k][r] is replication r under contracts[k].
void simulate_many(const std::vector<ContractParams>& contracts, const ClaimModel& model,
                   const UtilityConfig& cfg, Party party, std::size_t reps, std::uint64_t seed,
                   std::vector<std::vector<double>>& out, std::vector<std::vector<char>>* ruined,
                   unsigned threads) {
  std::vector<double> premium;
  for (const auto& c : contracts) premium.push_back(party_premium(c, model, cfg, party));
  out.assign(contracts.size(), std::vector<double>(reps));
  if (ruined) ruined->assign(contracts.size(), std::vector<char>(reps));

  const std::size_t batches = (reps + kBatch - 1) / kBatch;
  const auto run_batch = [&](std::size_t b) {
    UniformSource rng(derive_seed(seed, b));
    std::vector<double> claims;
    const std::size_t end = std::min(reps, (b + 1) * kBatch);
    for (std::size_t r = b * kBatch; r < end; ++r) {
      const auto n = rng.poisson(cfg.exposure());
      claims.resize(n);
      for (auto& x : claims) x = model.quantile(rng.next());
      for (std::size_t k = 0; k < contracts.size(); ++k) {
        double total = 0.0;
        for (double x : claims) total += part(x, contracts[k], party);
        const double wealth = cfg.initial_wealth + premium[k] - total;
        out[k][r] = -std::exp(-cfg.beta * wealth);
        if (ruined) (*ruined)[k][r] = wealth < 0.0;
      }
    }
  };

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, batches));
  if (workers <= 1) {
    for (std::size_t b = 0; b < batches; ++b) run_batch(b);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < batches; b += workers) run_batch(b);
    });
  }
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  MeanSe m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  if (v.size() > 1) m.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / v.size());
  return m;
}

}  // namespace

double party_premium(const ContractParams& c, const ClaimModel& model, const UtilityConfig& cfg,
                     Party party) {
  const double below_x = model.mean() - model.tail_first_moment(c.cap);
  const double tail_x = model.tail_first_moment(c.cap);
  const double s = model.survival(c.cap);
  const double expected = party == Party::kInsurer
                              ? c.alpha * (below_x + c.cap * s)
                              : (1.0 - c.alpha) * below_x + tail_x - c.alpha * c.cap * s;
  return (1.0 + cfg.loading) * cfg.exposure() * expected;
}

double analytic_expected_utility(const ContractParams& c, const ClaimModel& model,
                                 const UtilityConfig& cfg, Party party) {
  const double b = cfg.beta;
  const double k = party == Party::kInsurer ? c.alpha * b : (1.0 - c.alpha) * b;
  const double below =
      integrate([&](double x) { return std::exp(k * x) * model.pdf(x); }, 0.0, c.cap,
                "E[exp(beta part)] below the cap")
          .value;
  const double above = party == Party::kInsurer
                           ? std::exp(k * c.cap) * model.survival(c.cap)
                           : std::exp(-b * c.alpha * c.cap) * model.tail_exp_moment(b, c.cap);
  const double mgf = below + above;
  const double premium = party_premium(c, model, cfg, party);
  return -std::exp(-b * (cfg.initial_wealth + premium) + cfg.exposure() * (mgf - 1.0));
}

std::vector<double> simulate_utilities(const ContractParams& c, const ClaimModel& model,
                                       const UtilityConfig& cfg, Party party, std::size_t reps,
                                       std::uint64_t seed, std::vector<char>* ruined,
                                       unsigned threads) {
  std::vector<std::vector<double>> out;
  std::vector<std::vector<char>> ruin;
  simulate_many({c}, model, cfg, party, reps, seed, out, ruined ? &ruin : nullptr, threads);
  if (ruined) *ruined = std::move(ruin.front());
  return std::move(out.front());
}

SurplusStats simulate_surplus(const ContractParams& c, const ClaimModel& model,
                              const UtilityConfig& cfg, Party party, std::size_t reps,
                              std::uint64_t seed, unsigned threads) {
  if (reps < 2) throw DomainError("surplus simulation needs at least two replications");
  std::vector<char> ruined;
  const auto u = simulate_utilities(c, model, cfg, party, reps, seed, &ruined, threads);
  const MeanSe m = mean_se(u);
  SurplusStats s;
  s.premium = party_premium(c, model, cfg, party);
  s.expected_utility = m.mean;
  s.std_error = m.se;
  s.ruin_frequency =
      static_cast<double>(std::count(ruined.begin(), ruined.end(), char{1})) / reps;
  s.replications = reps;
  return s;
}

std::vector<NeighborCheck> check_neighbors(const ContractParams& best, const ClaimModel& model,
                                           const UtilityConfig& cfg, Party party,
                                           std::size_t reps, std::uint64_t seed, double d_alpha,
                                           double rel_cap) {
  if (reps < 2) throw DomainError("neighbor check needs at least two replications");
  std::vector<NeighborCheck> checks;
  std::vector<ContractParams> contracts{best};
  for (int da = -1; da <= 1; ++da) {
    for (int dm = -1; dm <= 1; ++dm) {
      if (da == 0 && dm == 0) continue;
      NeighborCheck n;
      n.neighbor.alpha = best.alpha + da * d_alpha;
      n.neighbor.cap = best.cap * (1.0 + dm * rel_cap);
      n.feasible = n.neighbor.alpha >= 0.0 && n.neighbor.alpha <= 1.0;
      if (n.feasible) contracts.push_back(n.neighbor);
      checks.push_back(n);
    }
  }
  std::vector<std::vector<double>> u;
  simulate_many(contracts, model, cfg, party, reps, seed, u, nullptr, 0);
  std::size_t k = 1;
  std::vector<double> diff(reps);
  for (auto& n : checks) {
    if (!n.feasible) continue;
    for (std::size_t r = 0; r < reps; ++r) diff[r] = u[0][r] - u[k][r];
    const MeanSe m = mean_se(diff);
    n.margin = m.mean;
    n.std_error = m.se;
    n.beaten = m.mean > 2.0 * m.se;
    ++k;
  }
  return checks;
}

}  // namespace pxl
