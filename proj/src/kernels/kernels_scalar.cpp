#include "kernels_detail.hpp"

namespace infoacq::kernels {

namespace {

void simulate_paths_scalar(const SimPlan& plan, std::uint64_t path_begin,
                           std::size_t n_paths, double* err) {
  detail::simulate_paths_range(plan, path_begin, 0, n_paths, n_paths, err);
}

void bellman_sweep_scalar(const SweepPlan& plan, const double* nodes,
                          const double* psi_in, double* psi_out,
                          double* greedy_v) {
  detail::bellman_sweep_range(plan, nodes, psi_in, psi_out, greedy_v, 0,
                              plan.n);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{simulate_paths_scalar, bellman_sweep_scalar,
                                 "scalar"};
  return table;
}

}  // namespace infoacq::kernels
