#include "infoacq/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "infoacq/kernels/dispatch.hpp"
#include "infoacq/steady_state.hpp"

namespace infoacq {

GridConfig GridConfig::defaults(const ModelParams& params, int n_points,
                                double sweep_tol) {
  GridConfig cfg;
  cfg.n_points = n_points;
  cfg.p_min = params.sigma_sq;
  const double v_zero = params.sigma_sq / (1.0 - params.rho * params.rho);
  const double p_first =
      params.rho * params.rho * params.sigma0_sq + params.sigma_sq;
  cfg.p_max = 1.05 * std::max(v_zero, p_first);
  cfg.sweep_tol = sweep_tol;
  return cfg;
}

void GridConfig::validate(const ModelParams& params) const {
  if (n_points < 64)
    throw std::domain_error("GridConfig: n_points must be >= 64");
  if (!(p_min >= params.sigma_sq * (1.0 - 1e-12)))
    throw std::domain_error("GridConfig: p_min must not fall below sigma_sq");
  if (!(p_max > p_min))
    throw std::domain_error("GridConfig: p_max must exceed p_min");
  if (!(sweep_tol > 0.0))
    throw std::domain_error("GridConfig: sweep_tol must be > 0");
  if (max_iters < 1)
    throw std::domain_error("GridConfig: max_iters must be >= 1");
}

namespace {

kernels::SweepPlan make_plan(const ModelParams& params, const GridConfig& cfg,
                             const std::vector<double>& nodes, double v_warm) {
  kernels::SweepPlan plan;
  plan.rho_sq = params.rho * params.rho;
  plan.sigma_sq = params.sigma_sq;
  plan.c = params.c;
  plan.delta = params.delta;
  plan.p_min = cfg.p_min;
  plan.inv_step = static_cast<double>(cfg.n_points - 1) / (cfg.p_max - cfg.p_min);
  plan.node_top = nodes.back();
  plan.top_slope = params.c / (cfg.p_max * cfg.p_max);
  plan.v_warm = v_warm;
  plan.n = cfg.n_points;
  return plan;
}

}  // namespace

ValueFunctionGrid value_iteration(const ModelParams& params,
                                  const GridConfig& cfg) {
  cfg.validate(params);
  const int n = cfg.n_points;
  ValueFunctionGrid grid;
  grid.cfg = cfg;
  grid.nodes.resize(n);
  const double h = (cfg.p_max - cfg.p_min) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i)
    grid.nodes[i] = cfg.p_min + h * static_cast<double>(i);

  grid.v_star_hint = solve_v_star(params, kDefaultSolveTol);

  // One-shot cost as the starting guess.
  const double sqrt_c = std::sqrt(params.c);
  grid.psi.resize(n);
  for (int i = 0; i < n; ++i) {
    const double p = grid.nodes[i];
    const double v = std::min(p, sqrt_c);
    grid.psi[i] = v + params.c * (1.0 / v - 1.0 / p);
  }
  grid.greedy_v.assign(n, 0.0);

  const kernels::SweepPlan plan =
      make_plan(params, cfg, grid.nodes, grid.v_star_hint);
  const kernels::KernelTable& k = kernels::active_kernels();

  std::vector<double> next(n);
  for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
    k.bellman_sweep(plan, grid.nodes.data(), grid.psi.data(), next.data(),
                    grid.greedy_v.data());
    double delta = 0.0;
    for (int i = 0; i < n; ++i)
      delta = std::max(delta, std::fabs(next[i] - grid.psi[i]));
    grid.psi.swap(next);
    grid.iterations_used = sweep;
    grid.final_sweep_delta = delta;
    grid.sweep_deltas.push_back(delta);
    if (delta <= cfg.sweep_tol) return grid;
  }
  std::ostringstream msg;
  msg << "value_iteration: no convergence after " << grid.iterations_used
      << " sweeps (last sweep delta " << grid.final_sweep_delta
      << " > sweep_tol " << cfg.sweep_tol << ")";
  throw std::runtime_error(msg.str());
}

namespace {

double interp_column(const ValueFunctionGrid& grid,
                     const std::vector<double>& column, double pred_var,
                     const char* who) {
  const double lo = grid.nodes.front();
  const double hi = grid.nodes.back();
  if (!(pred_var >= lo && pred_var <= hi))
    throw std::out_of_range(std::string(who) +
                            ": prediction variance outside grid");
  const double t = (pred_var - lo) / grid.step();
  const int n = static_cast<int>(grid.nodes.size());
  const int k = std::min(static_cast<int>(t), n - 2);
  const double w = t - static_cast<double>(k);
  return column[k] + w * (column[k + 1] - column[k]);
}

}  // namespace

double greedy_policy(const ValueFunctionGrid& grid, double pred_var) {
  return interp_column(grid, grid.greedy_v, pred_var, "greedy_policy");
}

double psi_value(const ValueFunctionGrid& grid, double pred_var) {
  return interp_column(grid, grid.psi, pred_var, "psi_value");
}

double envelope_check(const ModelParams& params,
                      const ValueFunctionGrid& grid) {
  const double v_star = grid.v_star_hint > 0.0
                            ? grid.v_star_hint
                            : solve_v_star(params, kDefaultSolveTol);
  const double cutoff = v_star * 1.05;
  const double h = grid.step();
  const int n = static_cast<int>(grid.nodes.size());
  double worst = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double p = grid.nodes[i];
    if (!(p > cutoff)) continue;
    const double slope = (grid.psi[i + 1] - grid.psi[i - 1]) / (2.0 * h);
    const double ref = params.c / (p * p);
    worst = std::max(worst, std::fabs(slope - ref) / ref);
  }
  return worst;
}

double bellman_residual(const ModelParams& params,
                        const ValueFunctionGrid& grid) {
  const int n = static_cast<int>(grid.nodes.size());
  const kernels::SweepPlan plan =
      make_plan(params, grid.cfg, grid.nodes, grid.v_star_hint);
  std::vector<double> rhs(n), greedy(n);
  kernels::active_kernels().bellman_sweep(plan, grid.nodes.data(),
                                          grid.psi.data(), rhs.data(),
                                          greedy.data());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, std::fabs(rhs[i] - grid.psi[i]));
  return worst;
}

}  // namespace infoacq
