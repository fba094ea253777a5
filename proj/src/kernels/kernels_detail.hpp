#pragma once

#include <cmath>

#include "infoacq/kernels/dispatch.hpp"
#include "infoacq/kernels/scalar_math.hpp"

// Scalar range cores shared by the scalar kernel table and the AVX2 tails.
// Branchless select form throughout: the AVX2 code replaces each sel() with a
// blend and must keep the same operand order.

namespace infoacq::kernels::detail {

inline double sel(bool cond, double a, double b) { return cond ? a : b; }

inline void simulate_paths_range(const SimPlan& plan, std::uint64_t path_begin,
                                 std::size_t i_begin, std::size_t i_end,
                                 std::size_t stride, double* err) {
  for (std::size_t i = i_begin; i < i_end; ++i) {
    const std::uint64_t path = path_begin + i;
    double theta = plan.sigma0 * normal_draw(plan.seed, path, 0, kDrawInit);
    double mean = 0.0;
    for (int t = 1; t <= plan.horizon; ++t) {
      const std::size_t j = static_cast<std::size_t>(t - 1);
      const double shock =
          plan.sigma *
          normal_draw(plan.seed, path, static_cast<std::uint32_t>(t), kDrawShock);
      theta = plan.rho * theta + shock;
      const double prior_mean = plan.rho * mean;
      if (plan.precision[j] > 0.0) {
        const double noise =
            plan.noise_sd[j] * normal_draw(plan.seed, path,
                                           static_cast<std::uint32_t>(t),
                                           kDrawSignal);
        const double signal = theta + noise;
        const double a = prior_mean * plan.inv_pred[j];
        const double b = plan.precision[j] * signal;
        mean = plan.post_var[j] * (a + b);
      } else {
        mean = prior_mean;
      }
      err[j * stride + i] = mean - theta;
    }
  }
}

inline constexpr double kInvPhi = 0.6180339887498949;
inline constexpr double kInvPhi2 = 0.3819660112501051;
// 48 shrinks take the bracket width from P to below 1e-10 P.
inline constexpr int kGoldenIters = 48;

inline double continuation(const SweepPlan& g, const double* psi, double arg) {
  const double extrap = psi[g.n - 1] + (arg - g.node_top) * g.top_slope;
  double t = (arg - g.p_min) * g.inv_step;
  t = sel(t > 0.0, t, 0.0);
  double kf = std::trunc(t);
  const double kmax = static_cast<double>(g.n - 2);
  kf = sel(kf < kmax, kf, kmax);
  const int k = static_cast<int>(kf);
  const double w = t - kf;
  const double lo = psi[k];
  const double hi = psi[k + 1];
  const double in_range = lo + w * (hi - lo);
  return sel(arg >= g.node_top, extrap, in_range);
}

inline double minimand(const SweepPlan& g, const double* psi, double v,
                       double inv_p) {
  const double info = 1.0 / v - inv_p;
  const double arg = g.rho_sq * v + g.sigma_sq;
  const double cont = continuation(g, psi, arg);
  double r = g.c * info;
  r = v + r;
  const double d = g.delta * cont;
  return r + d;
}

inline void bellman_sweep_range(const SweepPlan& g, const double* nodes,
                                const double* psi_in, double* psi_out,
                                double* greedy_v, int i_begin, int i_end) {
  for (int i = i_begin; i < i_end; ++i) {
    const double p = nodes[i];
    const double inv_p = 1.0 / p;
    const double eps_v = 1e-9 * p;
    double a = eps_v;
    double b = p;
    double w = b - a;
    double x1 = a + kInvPhi2 * w;
    double x2 = a + kInvPhi * w;
    double g1 = minimand(g, psi_in, x1, inv_p);
    double g2 = minimand(g, psi_in, x2, inv_p);
    for (int it = 0; it < kGoldenIters; ++it) {
      const bool low = g1 < g2;
      b = sel(low, x2, b);
      a = sel(low, a, x1);
      const double x_keep = sel(low, x1, x2);
      const double g_keep = sel(low, g1, g2);
      w = b - a;
      const double x_lo = a + kInvPhi2 * w;
      const double x_hi = a + kInvPhi * w;
      const double x_new = sel(low, x_lo, x_hi);
      const double g_new = minimand(g, psi_in, x_new, inv_p);
      x1 = sel(low, x_new, x_keep);
      g1 = sel(low, g_new, g_keep);
      x2 = sel(low, x_keep, x_new);
      g2 = sel(low, g_keep, g_new);
    }
    const bool left = g1 < g2;
    double v = sel(left, x1, x2);
    double gv = sel(left, g1, g2);
    const double g_corner = minimand(g, psi_in, p, inv_p);
    bool better = g_corner < gv;
    v = sel(better, p, v);
    gv = sel(better, g_corner, gv);
    double vw = g.v_warm;
    vw = sel(vw < p, vw, p);
    vw = sel(vw > eps_v, vw, eps_v);
    const double g_warm = minimand(g, psi_in, vw, inv_p);
    better = g_warm < gv;
    v = sel(better, vw, v);
    gv = sel(better, g_warm, gv);
    psi_out[i] = gv;
    greedy_v[i] = v;
  }
}

}  // namespace infoacq::kernels::detail
