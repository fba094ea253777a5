#pragma once

#include <vector>

#include "infoacq/model.hpp"

namespace infoacq {

// Discretization for brute-force value iteration on the prediction-variance
// line. The recursion keeps P_t in [sigma_sq, max{sigma_sq/(1-rho^2), P_1}],
// which the default bounds cover with 5% headroom.
struct GridConfig {
  int n_points = 2048;
  double p_min = 0.0;
  double p_max = 0.0;
  double sweep_tol = 1e-9;  // sup-norm change that counts as converged
  int max_iters = 50000;

  static GridConfig defaults(const ModelParams& params, int n_points = 2048,
                             double sweep_tol = 1e-9);
  void validate(const ModelParams& params) const;
};

struct ValueFunctionGrid {
  std::vector<double> nodes;     // ascending, uniformly spaced
  std::vector<double> psi;       // minimized present-value cost at each node
  std::vector<double> greedy_v;  // minimizing posterior variance at each node
  int iterations_used = 0;
  double final_sweep_delta = 0.0;
  std::vector<double> sweep_deltas;  // sup-norm change per sweep
  GridConfig cfg;
  double v_star_hint = 0.0;  // warm-start target used by the inner search

  double step() const { return nodes[1] - nodes[0]; }
};

// Successive approximation of Psi(P) = min_{V in (0,P]} C(V,P)
// + delta Psi(rho^2 V + sigma^2), seeded with the one-shot cost
// C(min{P, sqrt(c)}, P) (exact at delta = 0). Throws on non-convergence,
// reporting iterations and the last sweep delta.
ValueFunctionGrid value_iteration(const ModelParams& params,
                                  const GridConfig& cfg);

// Minimizing V at an off-node P by interpolating greedy_v. Range error
// outside [p_min, p_max].
double greedy_policy(const ValueFunctionGrid& grid, double pred_var);

// Interpolated psi at an off-node P; same range requirement.
double psi_value(const ValueFunctionGrid& grid, double pred_var);

// Max relative error of the central-difference slope of psi against c/P^2,
// over interior nodes with P > v_star * 1.05 (the slope identity assumes an
// interior minimizer, so the kink neighborhood is excluded).
double envelope_check(const ModelParams& params, const ValueFunctionGrid& grid);

// Re-applies the Bellman operator to the stored psi and returns the max
// absolute discrepancy.
double bellman_residual(const ModelParams& params,
                        const ValueFunctionGrid& grid);

}  // namespace infoacq
