#include "infoacq/simulate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "infoacq/kernels/dispatch.hpp"
#include "infoacq/steady_state.hpp"

namespace infoacq {

double neumaier_sum(const double* values, std::size_t n) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = values[i];
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

namespace {

void check_config(const SimConfig& cfg) {
  if (cfg.horizon < 1)
    throw std::domain_error("SimConfig: horizon must be >= 1");
  if (cfg.n_paths < 1)
    throw std::domain_error("SimConfig: n_paths must be >= 1");
}

}  // namespace

EnsembleStats simulate_paths(const ModelParams& params, const SimConfig& cfg) {
  check_config(cfg);
  const PolicyTrace trace = trace_policy(params, cfg.horizon);
  const std::size_t horizon = static_cast<std::size_t>(cfg.horizon);
  const std::size_t n = static_cast<std::size_t>(cfg.n_paths);

  std::vector<double> precision(horizon), inv_pred(horizon),
      post_var(horizon), noise_sd(horizon);
  for (std::size_t j = 0; j < horizon; ++j) {
    const PolicyRow& row = trace.rows[j];
    precision[j] = row.x_t;
    inv_pred[j] = 1.0 / row.p_t;
    post_var[j] = row.v_t;
    noise_sd[j] = row.x_t > 0.0 ? std::sqrt(1.0 / row.x_t) : 0.0;
  }

  kernels::SimPlan plan;
  plan.rho = params.rho;
  plan.sigma0 = std::sqrt(params.sigma0_sq);
  plan.sigma = std::sqrt(params.sigma_sq);
  plan.horizon = cfg.horizon;
  plan.precision = precision.data();
  plan.inv_pred = inv_pred.data();
  plan.post_var = post_var.data();
  plan.noise_sd = noise_sd.data();
  plan.seed = cfg.seed;

  std::vector<double> err(horizon * n);
  kernels::active_kernels().simulate_paths(plan, 0, n, err.data());

  const double nan = std::numeric_limits<double>::quiet_NaN();
  EnsembleStats stats;
  stats.cfg = cfg;
  stats.per_period.resize(horizon);
  std::vector<double> scratch(n);
  for (std::size_t j = 0; j < horizon; ++j) {
    const double* row = err.data() + j * n;
    PeriodStats& ps = stats.per_period[j];
    ps.t = static_cast<int>(j) + 1;
    ps.p_t = trace.rows[j].p_t;
    ps.v_t = trace.rows[j].v_t;
    ps.x_t = trace.rows[j].x_t;
    ps.cost_t = trace.rows[j].cost_t;

    ps.err_mean = neumaier_sum(row, n) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = row[i] * row[i];
    ps.mse_emp = neumaier_sum(scratch.data(), n) / static_cast<double>(n);

    if (n >= 2) {
      for (std::size_t i = 0; i < n; ++i) {
        const double d = row[i] - ps.err_mean;
        scratch[i] = d * d;
      }
      const double var_err =
          neumaier_sum(scratch.data(), n) / static_cast<double>(n - 1);
      ps.err_se = std::sqrt(var_err / static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const double d = row[i] * row[i] - ps.mse_emp;
        scratch[i] = d * d;
      }
      const double var_sq =
          neumaier_sum(scratch.data(), n) / static_cast<double>(n - 1);
      ps.mse_se = std::sqrt(var_sq / static_cast<double>(n));
    } else {
      ps.err_se = nan;
      ps.mse_se = nan;
    }
    // The information component c x_t is deterministic, so the realized cost
    // mean is the MSE shifted by it and shares its standard error.
    ps.cost_emp = ps.mse_emp + params.c * ps.x_t;
    ps.cost_se = ps.mse_se;
  }
  return stats;
}

std::vector<CostStat> realized_cost_stats(const ModelParams& params,
                                          const SimConfig& cfg) {
  const EnsembleStats stats = simulate_paths(params, cfg);
  std::vector<CostStat> out;
  out.reserve(stats.per_period.size());
  for (const PeriodStats& ps : stats.per_period)
    out.push_back({ps.t, ps.cost_emp, ps.cost_se});
  return out;
}

}  // namespace infoacq
