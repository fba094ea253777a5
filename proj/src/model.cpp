#include "infoacq/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace infoacq {

namespace {

std::string bound_report(double rho, double sigma0_sq, double sigma_sq,
                         double c, double delta) {
  std::ostringstream msg;
  auto complain = [&](const char* what, double value) {
    if (msg.tellp() > 0) msg << "; ";
    msg << what << " (got " << value << ")";
  };
  if (!(rho > 0.0 && rho < 1.0)) complain("rho must lie in (0,1)", rho);
  if (!(sigma0_sq >= 0.0)) complain("sigma0_sq must be >= 0", sigma0_sq);
  if (!(sigma_sq > 0.0)) complain("sigma_sq must be > 0", sigma_sq);
  if (!(c > 0.0)) complain("c must be > 0", c);
  if (!(delta >= 0.0 && delta < 1.0)) complain("delta must lie in [0,1)", delta);
  return msg.str();
}

}  // namespace

ModelParams::ModelParams(double rho_, double sigma0_sq_, double sigma_sq_,
                         double c_, double delta_)
    : rho(rho_), sigma0_sq(sigma0_sq_), sigma_sq(sigma_sq_), c(c_),
      delta(delta_) {
  const std::string violations =
      bound_report(rho_, sigma0_sq_, sigma_sq_, c_, delta_);
  if (!violations.empty())
    throw std::domain_error("invalid model parameters: " + violations);
}

ModelParams validate_params(double rho, double sigma0_sq, double sigma_sq,
                            double c, double delta) {
  return ModelParams(rho, sigma0_sq, sigma_sq, c, delta);
}

double posterior_variance(double prediction_variance, double precision) {
  if (!(prediction_variance > 0.0))
    throw std::domain_error("posterior_variance: prediction variance must be > 0");
  if (!(precision >= 0.0))
    throw std::domain_error("posterior_variance: precision must be >= 0");
  // Zero precision must leave the prior exactly unchanged, and 1/(1/P) can
  // be off by one ulp.
  if (precision == 0.0) return prediction_variance;
  return 1.0 / (1.0 / prediction_variance + precision);
}

double precision_for(double prediction_variance, double target_variance) {
  if (!(prediction_variance > 0.0))
    throw std::domain_error("precision_for: prediction variance must be > 0");
  if (!(target_variance > 0.0))
    throw std::domain_error("precision_for: target variance must be > 0");
  const double x = 1.0 / target_variance - 1.0 / prediction_variance;
  return x > 0.0 ? x : 0.0;
}

double predict_variance(const ModelParams& params, double post_var) {
  if (!(post_var >= 0.0))
    throw std::domain_error("predict_variance: posterior variance must be >= 0");
  return params.rho * params.rho * post_var + params.sigma_sq;
}

PeriodCostBreakdown period_cost(const ModelParams& params, double post_var,
                                double pred_var) {
  if (!(post_var > 0.0))
    throw std::domain_error("period_cost: posterior variance must be > 0");
  if (post_var > pred_var)
    throw std::domain_error(
        "period_cost: posterior variance exceeds prediction variance "
        "(implied signal precision would be negative)");
  const double x = 1.0 / post_var - 1.0 / pred_var;
  PeriodCostBreakdown out;
  out.posterior_variance = post_var;
  out.signal_precision = x;
  out.action_cost = post_var;
  out.information_cost = params.c * x;
  out.total = out.action_cost + out.information_cost;
  return out;
}

CostAssumption cost_assumption(const ModelParams& params) {
  const double rho_sq = params.rho * params.rho;
  const double one_minus_rho_sq = 1.0 - rho_sq;
  const double bound = params.sigma_sq * params.sigma_sq /
                       ((1.0 - params.delta * rho_sq) *
                        (one_minus_rho_sq * one_minus_rho_sq));
  return {bound, params.c < bound};
}

}  // namespace infoacq
