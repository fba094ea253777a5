#include "infoacq/statics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "infoacq/steady_state.hpp"

namespace infoacq {

double rel_discrepancy(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-6});
  return std::fabs(a - b) / scale;
}

namespace {

void require_interior(const ModelParams& params, const char* who) {
  if (!cost_assumption(params).holds)
    throw std::domain_error(std::string(who) +
                            ": the cost bound fails, the steady-state "
                            "precision sits at the zero corner and the map "
                            "is not differentiable there");
}

struct Quantities {
  double v, x, p, c;
};

Quantities quantities_at(const ModelParams& params) {
  const SteadyStateReport rep = steady_report(params);
  if (!rep.assumption_holds)
    throw std::domain_error(
        "finite_difference_statics: a perturbed point crossed the cost "
        "bound; shrink the step or move the base point");
  return {rep.v_star, rep.x_star, rep.p_star, rep.c_star};
}

ModelParams with(const ModelParams& base, Primitive which, double value) {
  double rho = base.rho, s0 = base.sigma0_sq, s = base.sigma_sq, c = base.c,
         d = base.delta;
  switch (which) {
    case Primitive::rho: rho = value; break;
    case Primitive::delta: d = value; break;
    case Primitive::c: c = value; break;
    case Primitive::sigma_sq: s = value; break;
  }
  return validate_params(rho, s0, s, c, d);
}

double primitive_value(const ModelParams& p, Primitive which) {
  switch (which) {
    case Primitive::rho: return p.rho;
    case Primitive::delta: return p.delta;
    case Primitive::c: return p.c;
    case Primitive::sigma_sq: return p.sigma_sq;
  }
  return 0.0;
}

}  // namespace

DerivTable analytic_statics(const ModelParams& params) {
  require_interior(params, "analytic_statics");
  const double v = solve_v_star(params);
  const double rho = params.rho;
  const double rho_sq = rho * rho;
  const double p = rho_sq * v + params.sigma_sq;
  const double x = 1.0 / v - 1.0 / p;
  const double fp = f_derivative(params, v);  // strictly negative at the root
  const double c = params.c;
  const double delta = params.delta;
  const double p_sq = p * p;
  const double v_sq = v * v;

  DerivTable t;
  // dV* from implicit differentiation of the first-order condition.
  const double dv_ddelta = rho_sq / (p_sq * fp);
  const double dv_dc = -1.0 / (c * c * fp);
  const double dp_drho = -(2.0 * rho / fp) * (1.0 / v_sq + 1.0 / c);
  const double dv_drho = (dp_drho - 2.0 * rho * v) / rho_sq;
  const double dv_dsigma = -2.0 * delta * rho_sq / (p_sq * p * fp);

  // dP* by the chain rule through P* = rho^2 V* + sigma^2.
  const double dp_ddelta = rho_sq * dv_ddelta;
  const double dp_dc = rho_sq * dv_dc;
  const double dp_dsigma = rho_sq * dv_dsigma + 1.0;

  // dx* through x* = 1/V* - 1/P*.
  auto dx = [&](double dv, double dp) { return -dv / v_sq + dp / p_sq; };

  // dC* from the simplified closed forms.
  const double shrink = c * (1.0 - delta) * rho_sq / p_sq;
  const double dc_drho =
      (c / p_sq) * ((1.0 - delta) * dp_drho + 2.0 * rho * delta * v);
  const double dc_ddelta = shrink * dv_ddelta;
  const double dc_dc = shrink * dv_dc + x;
  const double dc_dsigma = (c / p_sq) * ((1.0 - delta) * rho_sq * dv_dsigma + 1.0);

  t.at(Quantity::v_star, Primitive::rho) = dv_drho;
  t.at(Quantity::v_star, Primitive::delta) = dv_ddelta;
  t.at(Quantity::v_star, Primitive::c) = dv_dc;
  t.at(Quantity::v_star, Primitive::sigma_sq) = dv_dsigma;
  t.at(Quantity::p_star, Primitive::rho) = dp_drho;
  t.at(Quantity::p_star, Primitive::delta) = dp_ddelta;
  t.at(Quantity::p_star, Primitive::c) = dp_dc;
  t.at(Quantity::p_star, Primitive::sigma_sq) = dp_dsigma;
  t.at(Quantity::x_star, Primitive::rho) = dx(dv_drho, dp_drho);
  t.at(Quantity::x_star, Primitive::delta) = dx(dv_ddelta, dp_ddelta);
  t.at(Quantity::x_star, Primitive::c) = dx(dv_dc, dp_dc);
  t.at(Quantity::x_star, Primitive::sigma_sq) = dx(dv_dsigma, dp_dsigma);
  t.at(Quantity::c_star, Primitive::rho) = dc_drho;
  t.at(Quantity::c_star, Primitive::delta) = dc_ddelta;
  t.at(Quantity::c_star, Primitive::c) = dc_dc;
  t.at(Quantity::c_star, Primitive::sigma_sq) = dc_dsigma;
  return t;
}

DerivTable finite_difference_statics(const ModelParams& params, double step) {
  if (!(step > 0.0 && step < 1e-2))
    throw std::domain_error("finite_difference_statics: step must lie in (0, 1e-2)");
  require_interior(params, "finite_difference_statics");

  DerivTable t;
  for (int pi = 0; pi < 4; ++pi) {
    const Primitive which = static_cast<Primitive>(pi);
    const double theta = primitive_value(params, which);
    Quantities hi, lo;
    double denom;
    if (which == Primitive::delta && theta < 2.0 * step) {
      // Additive one-sided second-order stencil at the delta = 0 edge.
      const Quantities q0 = quantities_at(params);
      const Quantities q1 = quantities_at(with(params, which, theta + step));
      const Quantities q2 =
          quantities_at(with(params, which, theta + 2.0 * step));
      const double inv = 1.0 / (2.0 * step);
      t.at(Quantity::v_star, which) = (-3.0 * q0.v + 4.0 * q1.v - q2.v) * inv;
      t.at(Quantity::x_star, which) = (-3.0 * q0.x + 4.0 * q1.x - q2.x) * inv;
      t.at(Quantity::p_star, which) = (-3.0 * q0.p + 4.0 * q1.p - q2.p) * inv;
      t.at(Quantity::c_star, which) = (-3.0 * q0.c + 4.0 * q1.c - q2.c) * inv;
      continue;
    }
    if (which == Primitive::delta) {
      // Additive central step; the primitive lives on an absolute scale.
      hi = quantities_at(with(params, which, theta + step));
      lo = quantities_at(with(params, which, theta - step));
      denom = 2.0 * step;
    } else {
      hi = quantities_at(with(params, which, theta * (1.0 + step)));
      lo = quantities_at(with(params, which, theta * (1.0 - step)));
      denom = 2.0 * theta * step;
    }
    t.at(Quantity::v_star, which) = (hi.v - lo.v) / denom;
    t.at(Quantity::x_star, which) = (hi.x - lo.x) / denom;
    t.at(Quantity::p_star, which) = (hi.p - lo.p) / denom;
    t.at(Quantity::c_star, which) = (hi.c - lo.c) / denom;
  }
  return t;
}

std::vector<SignClause> sign_audit(const ModelParams& params,
                                   const DerivTable& a) {
  require_interior(params, "sign_audit");
  std::vector<SignClause> out;
  auto clause = [&](const char* name, double value, bool pass) {
    out.push_back({name, value, pass});
  };
  const double dv_dd = a.at(Quantity::v_star, Primitive::delta);
  const double dx_dd = a.at(Quantity::x_star, Primitive::delta);
  const double dv_dc = a.at(Quantity::v_star, Primitive::c);
  const double dx_dc = a.at(Quantity::x_star, Primitive::c);
  const double dc_dr = a.at(Quantity::c_star, Primitive::rho);
  const double dc_dd = a.at(Quantity::c_star, Primitive::delta);
  const double dc_dc = a.at(Quantity::c_star, Primitive::c);
  const double dc_ds = a.at(Quantity::c_star, Primitive::sigma_sq);
  clause("dv_star/ddelta < 0", dv_dd, dv_dd < 0.0);
  clause("dx_star/ddelta > 0", dx_dd, dx_dd > 0.0);
  clause("dv_star/dc > 0", dv_dc, dv_dc > 0.0);
  clause("dx_star/dc < 0", dx_dc, dx_dc < 0.0);
  clause("dc_star/drho > 0", dc_dr, dc_dr > 0.0);
  clause("dc_star/ddelta < 0", dc_dd, dc_dd < 0.0);
  clause("dc_star/dc > 0", dc_dc, dc_dc > 0.0);
  clause("dc_star/dsigma_sq > 0", dc_ds, dc_ds > 0.0);

  const double dv_dr = a.at(Quantity::v_star, Primitive::rho);
  if (params.delta == 0.0) {
    // With no discounting the target is sqrt(c), constant in rho.
    clause("dv_star/drho = 0 at delta = 0", dv_dr,
           std::fabs(dv_dr) <= 1e-10 * std::max(1.0, std::sqrt(params.c)));
  } else {
    const double rho_star = steady_report(params).rho_star;
    const bool pass =
        params.rho < rho_star ? dv_dr < 0.0 : dv_dr > 0.0;
    clause("sign(dv_star/drho) = sign(rho - rho_star)", dv_dr, pass);
  }
  return out;
}

StaticsReport statics_report(const ModelParams& params, double step) {
  StaticsReport rep;
  rep.analytic = analytic_statics(params);
  rep.finite_diff = finite_difference_statics(params, step);
  rep.fd_step = step;
  rep.max_rel_discrepancy = 0.0;
  for (int q = 0; q < 4; ++q)
    for (int p = 0; p < 4; ++p)
      rep.max_rel_discrepancy =
          std::max(rep.max_rel_discrepancy,
                   rel_discrepancy(rep.analytic.d[q][p], rep.finite_diff.d[q][p]));
  rep.sign_audit = sign_audit(params, rep.analytic);
  return rep;
}

}  // namespace infoacq
