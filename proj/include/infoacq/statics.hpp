#pragma once

#include <array>
#include <string>
#include <vector>

#include "infoacq/model.hpp"

namespace infoacq {

// Row/column order of the derivative tables.
enum class Quantity { v_star = 0, x_star = 1, p_star = 2, c_star = 3 };
enum class Primitive { rho = 0, delta = 1, c = 2, sigma_sq = 3 };

inline constexpr const char* kQuantityNames[4] = {"v_star", "x_star", "p_star",
                                                  "c_star"};
inline constexpr const char* kPrimitiveNames[4] = {"rho", "delta", "c",
                                                   "sigma_sq"};

// d quantity / d primitive, 16 entries.
struct DerivTable {
  std::array<std::array<double, 4>, 4> d{};

  double& at(Quantity q, Primitive p) {
    return d[static_cast<int>(q)][static_cast<int>(p)];
  }
  double at(Quantity q, Primitive p) const {
    return d[static_cast<int>(q)][static_cast<int>(p)];
  }
};

struct SignClause {
  std::string name;   // e.g. "dv_star/ddelta < 0"
  double value;       // the evaluated derivative
  bool pass;
};

struct StaticsReport {
  DerivTable analytic;
  DerivTable finite_diff;
  double fd_step = 0.0;
  double max_rel_discrepancy = 0.0;
  std::vector<SignClause> sign_audit;
};

// The implicit-differentiation table: dV*/d{rho,delta,c,sigma_sq} from the
// first-order condition, dP* and dx* by the chain rule, dC* from the
// simplified closed forms. Requires the cost bound to hold strictly (the
// steady-state precision has a kink at the boundary).
DerivTable analytic_statics(const ModelParams& params);

// Central differences of the steady-state report, multiplicative steps
// theta(1 +/- step) except for delta near 0 which uses an additive one-sided
// second-order stencil. Throws if any perturbed point leaves the valid
// region or crosses the cost bound.
DerivTable finite_difference_statics(const ModelParams& params,
                                     double step = 1e-6);

// The nine monotonicity clauses; requires the cost bound to hold.
std::vector<SignClause> sign_audit(const ModelParams& params,
                                   const DerivTable& analytic);

// Full report: analytic + FD tables, worst relative discrepancy, sign audit.
StaticsReport statics_report(const ModelParams& params, double step = 1e-6);

// Relative discrepancy with an absolute floor for near-zero entries.
double rel_discrepancy(double a, double b);

}  // namespace infoacq
