#include "infoacq/steady_state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace infoacq {

double f_objective(const ModelParams& params, double v) {
  if (!(v > 0.0))
    throw std::domain_error("f_objective: variance must be > 0");
  const double rho_sq = params.rho * params.rho;
  const double denom = rho_sq * v + params.sigma_sq;
  return 1.0 / (v * v) - params.delta * rho_sq / (denom * denom);
}

double f_derivative(const ModelParams& params, double v) {
  if (!(v > 0.0))
    throw std::domain_error("f_derivative: variance must be > 0");
  const double rho_sq = params.rho * params.rho;
  const double denom = rho_sq * v + params.sigma_sq;
  return -2.0 * (1.0 / (v * v * v) -
                 params.delta * rho_sq * rho_sq / (denom * denom * denom));
}

namespace {

void check_tol(double tol) {
  if (!(tol > 0.0 && tol <= 1e-6))
    throw std::domain_error("solve_v_star: tol must lie in (0, 1e-6]");
}

}  // namespace

namespace detail {

double solve_v_star_bracketed(const ModelParams& params, double lo, double hi,
                              double tol) {
  check_tol(tol);
  const double target = 1.0 / params.c;
  double glo = f_objective(params, lo) - target;
  double ghi = f_objective(params, hi) - target;
  if (!(glo > 0.0) || ghi > 0.0)
    throw std::invalid_argument(
        "solve_v_star_bracketed: bracket must satisfy f(lo) > 1/c >= f(hi)");
  if (ghi == 0.0) return hi;

  // Secant steps on the two most recent iterates, falling back to bisection
  // whenever the secant point leaves the bracket.
  double a = lo, b = hi, ga = glo, gb = ghi;
  double x_prev = a, g_prev = ga;
  double x_cur = b, g_cur = gb;
  for (int it = 0; it < 200; ++it) {
    double x_next;
    const double dg = g_cur - g_prev;
    if (dg != 0.0) {
      x_next = x_cur - g_cur * (x_cur - x_prev) / dg;
      if (!(x_next > a && x_next < b)) x_next = 0.5 * (a + b);
    } else {
      x_next = 0.5 * (a + b);
    }
    const double g_next = f_objective(params, x_next) - target;
    if (std::fabs(g_next) <= tol * target) return x_next;
    if (g_next > 0.0) {
      a = x_next;
      ga = g_next;
    } else {
      b = x_next;
      gb = g_next;
    }
    x_prev = x_cur;
    g_prev = g_cur;
    x_cur = x_next;
    g_cur = g_next;
    if (b - a <= 4.0 * 2.220446049250313e-16 * b) {
      // Bracket exhausted at machine resolution; return the better endpoint.
      return std::fabs(ga) < std::fabs(gb) ? a : b;
    }
  }
  throw std::runtime_error("solve_v_star: no convergence after 200 iterations");
}

}  // namespace detail

double solve_v_star(const ModelParams& params, double tol) {
  check_tol(tol);
  const double target = 1.0 / params.c;
  const double hi = std::sqrt(params.c);
  if (f_objective(params, hi) - target >= 0.0) {
    // The root sits at sqrt(c) to rounding accuracy (exactly so at delta=0).
    return hi;
  }
  double lo = hi;
  for (int halvings = 0;; ++halvings) {
    if (halvings >= 1024)
      throw std::runtime_error(
          "solve_v_star: no lower bracket after 1024 halvings from sqrt(c); "
          "inputs are likely non-finite");
    lo *= 0.5;
    if (f_objective(params, lo) > target) break;
  }
  return detail::solve_v_star_bracketed(params, lo, hi, tol);
}

SteadyStateReport steady_report(const ModelParams& params, double tol) {
  SteadyStateReport rep;
  rep.v_star = solve_v_star(params, tol);
  const double rho_sq = params.rho * params.rho;
  rep.p_star = rho_sq * rep.v_star + params.sigma_sq;
  rep.v_zero = params.sigma_sq / (1.0 - rho_sq);
  const CostAssumption ca = cost_assumption(params);
  rep.cost_bound = ca.bound;
  rep.assumption_holds = ca.holds;
  rep.x_star = ca.holds ? precision_for(rep.p_star, rep.v_star) : 0.0;
  rep.c_star = rep.v_star + params.c * rep.x_star;
  const double s4_over_c = params.sigma_sq * params.sigma_sq / params.c;
  rep.rho_star = std::sqrt(
      params.delta / 8.0 +
      std::sqrt(params.delta * params.delta / 64.0 + s4_over_c));
  if (ca.holds) rep.t_star = time_to_steady_state(params, rep.v_star);
  return rep;
}

int time_to_steady_state(const ModelParams& params, double v_star) {
  if (!cost_assumption(params).holds)
    throw std::domain_error(
        "time_to_steady_state: the prediction variance never reaches the "
        "target when the cost bound fails");
  const double rho_sq = params.rho * params.rho;
  double rho_2t = 1.0;
  for (int t = 1; t <= 100000000; ++t) {
    rho_2t *= rho_sq;
    const double p_t = rho_2t * params.sigma0_sq +
                       ((1.0 - rho_2t) / (1.0 - rho_sq)) * params.sigma_sq;
    if (p_t >= v_star) return t;
  }
  throw std::runtime_error("time_to_steady_state: no finite arrival time found");
}

PolicyDecision policy_step(const ModelParams& params, double v_star,
                           double pred_var) {
  (void)params;
  return {pred_var < v_star ? pred_var : v_star,
          precision_for(pred_var, v_star)};
}

PolicyTrace trace_policy(const ModelParams& params, int horizon, double tol) {
  if (horizon < 1)
    throw std::domain_error("trace_policy: horizon must be >= 1");
  const double v_star = solve_v_star(params, tol);
  PolicyTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(horizon));
  double p_t = params.rho * params.rho * params.sigma0_sq + params.sigma_sq;
  for (int t = 1; t <= horizon; ++t) {
    const PolicyDecision d = policy_step(params, v_star, p_t);
    trace.rows.push_back({p_t, d.v, d.x, d.v + params.c * d.x});
    p_t = predict_variance(params, d.v);
  }
  return trace;
}

}  // namespace infoacq
