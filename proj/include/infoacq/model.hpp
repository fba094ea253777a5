#pragma once

#include <stdexcept>

namespace infoacq {

// The five model primitives. Construction checks every bound and reports all
// violations at once; everything downstream relies on the invariants holding
// and never re-validates inside inner loops.
struct ModelParams {
  double rho;        // state autocorrelation, in (0,1)
  double sigma0_sq;  // initial state variance, >= 0
  double sigma_sq;   // per-period shock variance, > 0
  double c;          // marginal cost of signal precision, > 0
  double delta;      // discount factor, in [0,1)

  ModelParams(double rho, double sigma0_sq, double sigma_sq, double c,
              double delta);
};

// Named constructor; throws std::domain_error listing each violated bound.
ModelParams validate_params(double rho, double sigma0_sq, double sigma_sq,
                            double c, double delta);

// One period's cost C(V,P) = V + c(1/V - 1/P) split into its components.
// total == posterior_variance + c * signal_precision by construction.
struct PeriodCostBreakdown {
  double posterior_variance;
  double signal_precision;
  double action_cost;       // expected squared action error, equals V
  double information_cost;  // c * precision
  double total;
};

struct CostAssumption {
  double bound;  // sigma^4 / ((1 - delta rho^2)(1 - rho^2)^2)
  bool holds;    // c < bound, strict
};

// V = (1/P + x)^-1. Requires P > 0, x >= 0.
double posterior_variance(double prediction_variance, double precision);

// x = max{1/V_target - 1/P, 0}. Requires P > 0, V_target > 0.
double precision_for(double prediction_variance, double target_variance);

// P' = rho^2 V + sigma^2. Requires V >= 0.
double predict_variance(const ModelParams& params, double post_var);

// Requires 0 < V <= P.
PeriodCostBreakdown period_cost(const ModelParams& params, double post_var,
                                double pred_var);

CostAssumption cost_assumption(const ModelParams& params);

}  // namespace infoacq
