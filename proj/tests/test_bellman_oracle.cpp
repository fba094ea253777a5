#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "infoacq/bellman.hpp"
#include "infoacq/kernels/dispatch.hpp"
#include "infoacq/steady_state.hpp"
#include "support/test_util.hpp"

using namespace infoacq;

TEST_CASE("grid config validation") {
  const ModelParams a = test_util::params_a();
  GridConfig cfg = GridConfig::defaults(a);
  CHECK(cfg.p_min == a.sigma_sq);
  CHECK(cfg.p_max == doctest::Approx(1.05 * 4.0 / 3.0).epsilon(1e-14));
  cfg.n_points = 63;
  CHECK_THROWS_AS(cfg.validate(a), std::domain_error);
  cfg = GridConfig::defaults(a);
  cfg.p_min = 0.5;
  CHECK_THROWS_AS(cfg.validate(a), std::domain_error);
  cfg = GridConfig::defaults(a);
  cfg.p_max = cfg.p_min;
  CHECK_THROWS_AS(cfg.validate(a), std::domain_error);
  cfg = GridConfig::defaults(a);
  cfg.sweep_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(a), std::domain_error);
}

TEST_CASE("undiscounted value function equals the one-shot cost") {
  const ModelParams a = test_util::params_a();
  const ValueFunctionGrid grid =
      value_iteration(a, GridConfig::defaults(a, 512));
  const double sqrt_c = std::sqrt(a.c);
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double p = grid.nodes[i];
    const double v = std::min(p, sqrt_c);
    const double expected = v + a.c * (1.0 / v - 1.0 / p);
    CHECK(std::fabs(grid.psi[i] - expected) <= 1e-10);
  }
  // Known node value at P = 1.25.
  CHECK(psi_value(grid, 1.25) == doctest::Approx(1.2).epsilon(1e-6));
  CHECK(bellman_residual(a, grid) <= 1e-10);
}

TEST_CASE("greedy policy tracks min(P, target)") {
  const ModelParams a = test_util::params_a();
  const ValueFunctionGrid ga =
      value_iteration(a, GridConfig::defaults(a, 512));
  CHECK(greedy_policy(ga, 1.25) == doctest::Approx(1.0).epsilon(1e-4));

  const ModelParams b(0.9, 0, 1, 4, 0);
  const ValueFunctionGrid gb =
      value_iteration(b, GridConfig::defaults(b, 1024));
  CHECK(greedy_policy(gb, 2.4661) == doctest::Approx(2.0).epsilon(1e-4));
  // Below the target the corner binds.
  CHECK(greedy_policy(gb, 1.5) == doctest::Approx(1.5).epsilon(1e-4));

  CHECK_THROWS_AS(greedy_policy(gb, 0.5), std::out_of_range);
  CHECK_THROWS_AS(greedy_policy(gb, 100.0), std::out_of_range);
}

TEST_CASE("greedy values stay inside (0, P]") {
  std::mt19937_64 rng(401);
  for (int rep = 0; rep < 5; ++rep) {
    const ModelParams p = test_util::random_interior_params(rng, 0.0, 0.8);
    const ValueFunctionGrid grid =
        value_iteration(p, GridConfig::defaults(p, 256, 1e-8));
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
      CHECK(grid.greedy_v[i] > 0.0);
      CHECK(grid.greedy_v[i] <= grid.nodes[i]);
      CHECK(grid.psi[i] > 0.0);
      CHECK(std::isfinite(grid.psi[i]));
    }
  }
}

TEST_CASE("oracle policy agrees with the closed form at probe points") {
  std::mt19937_64 rng(402);
  for (int rep = 0; rep < 5; ++rep) {
    const ModelParams p = test_util::random_interior_params(rng, 0.0, 0.8);
    const GridConfig cfg = GridConfig::defaults(p, 256, 1e-8);
    const ValueFunctionGrid grid = value_iteration(p, cfg);
    const double v_star = solve_v_star(p);
    std::uniform_real_distribution<double> u(cfg.p_min, cfg.p_max);
    for (int k = 0; k < 20; ++k) {
      const double probe = u(rng);
      CHECK(std::fabs(greedy_policy(grid, probe) - std::min(probe, v_star)) <=
            5.0 * grid.step());
    }
  }
}

TEST_CASE("policy agreement does not depend on the warm-start hint") {
  // Drive the sweep kernel directly with a useless warm-start candidate; the
  // golden-section search alone must still locate the optimal policy.
  const ModelParams p(0.7, 0, 1, 2, 0.6);
  const int n = 512;
  const double p_min = p.sigma_sq;
  const double p_max = 1.05 * p.sigma_sq / (1.0 - p.rho * p.rho);
  std::vector<double> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    nodes[static_cast<std::size_t>(i)] =
        p_min + (p_max - p_min) * static_cast<double>(i) /
                    static_cast<double>(n - 1);
  const double sqrt_c = std::sqrt(p.c);
  std::vector<double> psi(nodes.size()), next(nodes.size()),
      greedy(nodes.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double v = std::min(nodes[i], sqrt_c);
    psi[i] = v + p.c * (1.0 / v - 1.0 / nodes[i]);
  }
  kernels::SweepPlan plan;
  plan.rho_sq = p.rho * p.rho;
  plan.sigma_sq = p.sigma_sq;
  plan.c = p.c;
  plan.delta = p.delta;
  plan.p_min = p_min;
  plan.inv_step = static_cast<double>(n - 1) / (p_max - p_min);
  plan.node_top = nodes.back();
  plan.top_slope = p.c / (p_max * p_max);
  plan.v_warm = p_max;  // never the minimizer in the acquisition region
  plan.n = n;
  for (int sweep = 0; sweep < 400; ++sweep) {
    kernels::scalar_kernels().bellman_sweep(plan, nodes.data(), psi.data(),
                                            next.data(), greedy.data());
    psi.swap(next);
  }
  const double v_star = solve_v_star(p);
  const double h = nodes[1] - nodes[0];
  for (std::size_t i = 0; i < nodes.size(); ++i)
    CHECK(std::fabs(greedy[i] - std::min(nodes[i], v_star)) <= 5.0 * h);
}

TEST_CASE("discounted value matches the steady-state identity") {
  const ModelParams p(0.8, 0, 1, 4, 0.99);
  const ValueFunctionGrid grid =
      value_iteration(p, GridConfig::defaults(p, 2048));
  const SteadyStateReport rep = steady_report(p);
  const double psi_star = psi_value(grid, rep.p_star);
  const double expected = rep.c_star / (1.0 - p.delta);
  CHECK(std::fabs(psi_star - expected) / psi_star <= 1e-3);
}

TEST_CASE("envelope slope approaches c/P^2 under refinement") {
  const ModelParams a = test_util::params_a();
  const double err_fine =
      envelope_check(a, value_iteration(a, GridConfig::defaults(a, 4096)));
  CHECK(err_fine < 1e-3);

  const ModelParams p(0.8, 0, 1, 4, 0.99);
  const double e4096 =
      envelope_check(p, value_iteration(p, GridConfig::defaults(p, 4096)));
  CHECK(e4096 < 1e-3);
  const double e64 =
      envelope_check(p, value_iteration(p, GridConfig::defaults(p, 64)));
  CHECK(e64 > e4096);
}

TEST_CASE("residual stays within the fixed-point stopping bound") {
  std::mt19937_64 rng(403);
  for (int rep = 0; rep < 3; ++rep) {
    const ModelParams p = test_util::random_interior_params(rng, 0.2, 0.8);
    const GridConfig cfg = GridConfig::defaults(p, 256, 1e-8);
    const ValueFunctionGrid grid = value_iteration(p, cfg);
    CHECK(grid.final_sweep_delta <= cfg.sweep_tol);
    CHECK(bellman_residual(p, grid) <=
          cfg.sweep_tol * (1.0 + p.delta / (1.0 - p.delta)) + 1e-12);
  }
}

TEST_CASE("residual detects a deliberately perturbed value function") {
  const ModelParams a = test_util::params_a();
  ValueFunctionGrid grid = value_iteration(a, GridConfig::defaults(a, 256));
  grid.psi[grid.psi.size() / 2] += 0.1;
  CHECK(bellman_residual(a, grid) >= 0.099);
}

TEST_CASE("psi is nondecreasing in the prediction variance") {
  std::mt19937_64 rng(404);
  for (int rep = 0; rep < 5; ++rep) {
    const ModelParams p = test_util::random_interior_params(rng, 0.0, 0.9);
    const ValueFunctionGrid grid =
        value_iteration(p, GridConfig::defaults(p, 256, 1e-8));
    for (std::size_t i = 0; i + 1 < grid.psi.size(); ++i)
      CHECK(grid.psi[i + 1] >= grid.psi[i] - 1e-12);
  }
}

TEST_CASE("sweep deltas contract at rate delta") {
  for (const double delta : {0.5, 0.9}) {
    const ModelParams p(0.6, 0, 1, 2, delta);
    const GridConfig cfg = GridConfig::defaults(p, 256, 1e-8);
    const ValueFunctionGrid grid = value_iteration(p, cfg);
    const std::size_t n = grid.sweep_deltas.size();
    REQUIRE(n >= 12);
    for (std::size_t i = n - 10; i < n; ++i)
      CHECK(grid.sweep_deltas[i] <=
            (delta + 1e-3) * grid.sweep_deltas[i - 1]);
  }
}

TEST_CASE("non-convergence reports iterations and the last delta") {
  const ModelParams p(0.6, 0, 1, 2, 0.9);
  GridConfig cfg = GridConfig::defaults(p, 128, 1e-14);
  cfg.max_iters = 3;
  try {
    value_iteration(p, cfg);
    FAIL("expected runtime_error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("3 sweeps") != std::string::npos);
    CHECK(msg.find("sweep_tol") != std::string::npos);
  }
}
