#pragma once

#include <cstdint>
#include <vector>

#include "infoacq/model.hpp"

namespace infoacq {

struct SimConfig {
  int horizon = 20;
  std::int64_t n_paths = 10000;
  std::uint64_t seed = 1;
};

// Per-period ensemble summary. Analytic columns come straight from the
// policy trace; empirical columns are Monte Carlo means with standard
// errors (NaN when n_paths < 2).
struct PeriodStats {
  int t;
  double p_t, v_t, x_t, cost_t;  // analytic
  double err_mean;               // mean of a_t - theta_t across paths
  double err_se;
  double mse_emp;                // mean of (a_t - theta_t)^2
  double mse_se;
  double cost_emp;               // mse_emp + c x_t
  double cost_se;
};

struct EnsembleStats {
  SimConfig cfg;
  std::vector<PeriodStats> per_period;
};

// Seeded ensemble under the closed-form policy: states evolve by the AR(1)
// recursion, signals are drawn at the policy precisions, and the action is
// the Kalman posterior mean. Deterministic given (params, cfg); draws are
// keyed per (seed, path, period, kind), so the first k paths are identical
// for any n_paths >= k.
EnsembleStats simulate_paths(const ModelParams& params, const SimConfig& cfg);

struct CostStat {
  int t;
  double mean;  // mean realized cost (a_t - theta_t)^2 + c x_t
  double se;
};

std::vector<CostStat> realized_cost_stats(const ModelParams& params,
                                          const SimConfig& cfg);

// Order-insensitive (compensated) sum; shared by the aggregation code and
// used by tests.
double neumaier_sum(const double* values, std::size_t n);

}  // namespace infoacq
