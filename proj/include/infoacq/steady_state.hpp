#pragma once

#include <optional>
#include <vector>

#include "infoacq/model.hpp"

namespace infoacq {

inline constexpr double kDefaultSolveTol = 1e-12;

// Everything the fixed point determines. rho_star may exceed one and is
// reported as-is; t_star exists only when the cost bound holds.
struct SteadyStateReport {
  double v_star;    // target posterior variance, root of f(V) = 1/c
  double p_star;    // rho^2 v_star + sigma_sq
  double x_star;    // steady-state signal precision (0 when bound fails)
  double c_star;    // v_star + c x_star
  double rho_star;  // persistence threshold where dV*/drho changes sign
  std::optional<int> t_star;  // first period with P_t >= v_star
  double v_zero;    // no-learning variance limit sigma_sq/(1-rho^2)
  double cost_bound;
  bool assumption_holds;
};

struct PolicyRow {
  double p_t;     // prediction variance entering the period
  double v_t;     // chosen posterior variance, min{p_t, v_star}
  double x_t;     // purchased signal precision
  double cost_t;  // v_t + c x_t
};

struct PolicyTrace {
  std::vector<PolicyRow> rows;  // rows[t-1] describes period t
};

// f(V) = 1/V^2 - delta rho^2 / (rho^2 V + sigma^2)^2. The target variance is
// the unique positive root of f(V) = 1/c; f decreases wherever it is
// positive and f(sqrt(c)) <= 1/c with equality iff delta = 0.
double f_objective(const ModelParams& params, double v);

// f'(V) = -2 (1/V^3 - delta rho^4 / (rho^2 V + sigma^2)^3); strictly
// negative at the root.
double f_derivative(const ModelParams& params, double v);

// Bracketed bisection/secant on (0, sqrt(c)]. tol is relative on the f
// residual: |f(V) - 1/c| <= tol / c. Requires tol in (0, 1e-6].
double solve_v_star(const ModelParams& params, double tol = kDefaultSolveTol);

SteadyStateReport steady_report(const ModelParams& params,
                                double tol = kDefaultSolveTol);

// Smallest t >= 1 with P_t >= v_star along the no-acquisition path
// P_t = rho^{2t} sigma0_sq + ((1 - rho^{2t})/(1 - rho^2)) sigma_sq.
// Requires the cost bound to hold (otherwise the target is never reached).
int time_to_steady_state(const ModelParams& params, double v_star);

struct PolicyDecision {
  double v;  // min{P, v_star}
  double x;  // precision purchased to reach it
};

PolicyDecision policy_step(const ModelParams& params, double v_star,
                           double pred_var);

// Deterministic forward iteration of the optimal policy from t = 1.
PolicyTrace trace_policy(const ModelParams& params, int horizon,
                         double tol = kDefaultSolveTol);

namespace detail {
// Root solve on a caller-supplied bracket with f(lo) > 1/c >= f(hi).
double solve_v_star_bracketed(const ModelParams& params, double lo, double hi,
                              double tol);
}  // namespace detail

}  // namespace infoacq
