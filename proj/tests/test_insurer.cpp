#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "pxl/error.hpp"
#include "pxl/insurer.hpp"

using namespace pxl;

namespace {

const ClaimModel kExp1 = ClaimModel::exponential(1.0);
const UtilityConfig kCfg = UtilityConfig::make(2.0, 0.8);

}  // namespace

TEST_CASE("objective against the closed form") {
  const oracle::ExpClaims f{1.0};
  for (auto [a, m] : {std::pair{0.27, 1.08}, {1.0, 0.3}, {0.5, 4.0}, {0.05, 0.01}}) {
    const double want = oracle::g0(a, m, f, {2.0, 0.8});
    CHECK(insurer_objective({a, m}, kExp1, kCfg) == doctest::Approx(want).epsilon(1e-10));
  }
  const oracle::ExpClaims f3{3.0};
  CHECK(insurer_objective({0.4, 0.7}, ClaimModel::exponential(3.0), kCfg) ==
        doctest::Approx(oracle::g0(0.4, 0.7, f3, {2.0, 0.8})).epsilon(1e-10));
}

TEST_CASE("objective at alpha zero and exposure scaling") {
  CHECK(insurer_objective({0.0, 1.3}, kExp1, kCfg) == doctest::Approx(1.0).epsilon(1e-12));
  const auto twice = UtilityConfig::make(2.0, 0.8, 2.0, 1.0);
  for (auto [a, m] : {std::pair{0.27, 1.08}, {0.9, 0.2}}) {
    CHECK(insurer_objective({a, m}, kExp1, twice) ==
          doctest::Approx(2.0 * insurer_objective({a, m}, kExp1, kCfg)).epsilon(1e-13));
  }
}

TEST_CASE("gradient matches central differences") {
  for (const auto& model : {kExp1, ClaimModel::weibull(2.0, 1.0), ClaimModel::gamma(2.0, 2.0)}) {
    for (auto [a, m] : {std::pair{0.27, 1.08}, {0.8, 0.4}, {0.5, 2.5}}) {
      const double h = 1e-5;
      const auto g = insurer_gradient({a, m}, model, kCfg);
      const double da = (insurer_objective({a + h, m}, model, kCfg) -
                         insurer_objective({a - h, m}, model, kCfg)) / (2 * h);
      const double dm = (insurer_objective({a, m + h}, model, kCfg) -
                         insurer_objective({a, m - h}, model, kCfg)) / (2 * h);
      CHECK(g[0] == doctest::Approx(da).epsilon(1e-6));
      CHECK(g[1] == doctest::Approx(dm).epsilon(1e-6));
    }
  }
}

TEST_CASE("hessian properties") {
  const auto h = insurer_hessian({0.27, 1.08}, kExp1, kCfg);
  CHECK(h.a12 == h.a21);
  CHECK(h.a11 > 0.0);
  CHECK(h.det() > 0.0);
  for (auto [a, m] : {std::pair{0.1, 0.5}, {0.9, 3.0}, {1.0, 0.29}}) {
    CHECK(insurer_hessian({a, m}, kExp1, kCfg).a11 > 0.0);
  }
}

TEST_CASE("reduced residual is negative for exponential claims") {
  for (double m : {0.01, 0.1, 0.5, 1.08, 3.0, 9.0}) {
    CHECK(insurer_reduced_residual(m, kExp1, kCfg) < 0.0);
  }
}

TEST_CASE("solver: exponential claims project onto alpha = 1") {
  const auto r = solve_insurer(kExp1, kCfg);
  CHECK(r.projected);
  CHECK(r.params.alpha == 1.0);
  CHECK(r.params.cap == doctest::Approx(std::log(1.8) / 2.0).epsilon(1e-12));
  CHECK(r.params.alpha * 2.0 * r.params.cap == doctest::Approx(std::log(1.8)).epsilon(1e-12));
  CHECK(std::abs(r.residual[1]) < 1e-8);
  CHECK(r.residual[0] < 0.0);  // objective still falls as alpha grows past the bound
  CHECK(r.hessian_ok);

  // Brute-force lattice over [0.01, 1] x [0.01, q(0.999)].
  const oracle::ExpClaims f{1.0};
  const auto grid = oracle::grid_min(
      [&](double a, double m) { return oracle::g0(a, m, f, {2.0, 0.8}); }, 0.01, 1.0, 0.01,
      f.quantile(0.999), 400);
  CHECK(std::abs(grid.a - r.params.alpha) <= grid.step_a);
  CHECK(std::abs(grid.m - r.params.cap) <= grid.step_m);
  CHECK(r.objective_value <= grid.value + 1e-12);
}

TEST_CASE("solver invariance to exposure and wealth") {
  const auto base = solve_insurer(kExp1, kCfg);
  for (const auto& cfg : {UtilityConfig::make(2.0, 0.8, 3.0, 1.0),
                          UtilityConfig::make(2.0, 0.8, 1.0, 0.25),
                          UtilityConfig::make(2.0, 0.8, 1.0, 1.0, 50.0)}) {
    const auto r = solve_insurer(kExp1, cfg);
    CHECK(std::abs(r.params.alpha - base.params.alpha) < 1e-6);
    CHECK(std::abs(r.params.cap - base.params.cap) < 1e-6);
  }
}

TEST_CASE("solver errors") {
  CHECK_THROWS_AS(solve_insurer(kExp1, UtilityConfig::make(2.0, 0.0)), DegenerateLoading);
  CHECK_THROWS_AS(solve_insurer(kExp1, UtilityConfig::make(2.0, -0.5)), DegenerateLoading);
  CHECK_THROWS_AS(UtilityConfig::make(0.0, 0.8), DomainError);
  CHECK_THROWS_AS(UtilityConfig::make(1.0, -1.0), DomainError);
}

TEST_CASE("solver on other families satisfies the cap condition") {
  for (const auto& model : {ClaimModel::weibull(2.0, 1.0), ClaimModel::gamma(2.0, 2.0),
                            ClaimModel::weibull(0.8, 1.0)}) {
    const auto r = solve_insurer(model, kCfg);
    CHECK(r.params.alpha >= 0.0);
    CHECK(r.params.alpha <= 1.0);
    CHECK(r.params.alpha * 2.0 * r.params.cap == doctest::Approx(std::log(1.8)).epsilon(1e-8));
    if (!r.projected) {
      CHECK(std::abs(r.residual[0]) < 1e-8);
      CHECK(std::abs(r.residual[1]) < 1e-8);
    }
    // No feasible lattice point does better.
    const double lo = model.quantile(1e-3);
    const double hi = model.quantile(0.999);
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const ContractParams c{0.01 + 0.99 * i / 40.0, lo + (hi - lo) * j / 40.0};
        CHECK(insurer_objective(c, model, kCfg) >= r.objective_value - 1e-10);
      }
    }
  }
}
