#pragma once

#include <cstddef>
#include <cstdint>

// Runtime-dispatched compute kernels. Two inner loops carry essentially all
// of the arithmetic work: the Monte Carlo path ensemble and the Bellman
// value-iteration sweep. Each exists as a scalar reference and an AVX2
// variant; the contract is that both produce bit-identical outputs, which
// the kernel test suite enforces on random inputs.

namespace infoacq::kernels {

// Inputs for one ensemble pass under the closed-form policy. All per-period
// arrays are indexed t-1 for t = 1..horizon and describe deterministic
// quantities shared by every path.
struct SimPlan {
  double rho;
  double sigma0;  // sqrt of the initial state variance
  double sigma;   // sqrt of the shock variance
  int horizon;
  const double* precision;  // x_t
  const double* inv_pred;   // 1/P_t
  const double* post_var;   // V_t
  const double* noise_sd;   // 1/sqrt(x_t) where x_t > 0, else 0
  std::uint64_t seed;
};

// Fills err[(t-1)*n_paths + i] = a_t - theta_t for path (path_begin + i),
// i in [0, n_paths).
using SimPathsFn = void (*)(const SimPlan& plan, std::uint64_t path_begin,
                            std::size_t n_paths, double* err);

// One application of the Bellman operator on a uniform prediction-variance
// grid. Continuation values interpolate psi_in linearly, clamped at the
// bottom node and extrapolated with top_slope above the top node. The inner
// minimization is a fixed-iteration golden-section search on
// [1e-9 P, P] plus the corner candidate V = P and the warm-start candidate
// min{P, v_warm}.
struct SweepPlan {
  double rho_sq;
  double sigma_sq;
  double c;
  double delta;
  double p_min;
  double inv_step;   // (n-1) / (p_max - p_min)
  double node_top;   // last grid node
  double top_slope;  // continuation slope above node_top
  double v_warm;     // warm-start posterior variance candidate
  int n;
};

using BellmanSweepFn = void (*)(const SweepPlan& plan, const double* nodes,
                                const double* psi_in, double* psi_out,
                                double* greedy_v);

struct KernelTable {
  SimPathsFn simulate_paths;
  BellmanSweepFn bellman_sweep;
  const char* isa;
};

const KernelTable& scalar_kernels();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_kernels_or_null();

bool avx2_supported();

// Best available table, honoring force_scalar_kernels (a test hook).
const KernelTable& active_kernels();
void force_scalar_kernels(bool force);

}  // namespace infoacq::kernels
