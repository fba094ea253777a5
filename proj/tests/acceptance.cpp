// Acceptance suite: each criterion prints exactly one PASS/FAIL line; the
// exit code is the number of failures. Seeds are pinned so the run is
// reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "infoacq/bellman.hpp"
#include "infoacq/io/cli.hpp"
#include "infoacq/simulate.hpp"
#include "infoacq/statics.hpp"
#include "infoacq/steady_state.hpp"
#include "support/test_util.hpp"

using namespace infoacq;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

const std::vector<std::string> kFlagsA = {"--rho", "0.5", "--sigma0-sq", "0",
                                          "--sigma-sq", "1", "--c", "1",
                                          "--delta", "0"};

Outcome criterion1_worked_example() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<std::string> solve_args = {"solve"};
  solve_args.insert(solve_args.end(), kFlagsA.begin(), kFlagsA.end());
  const auto solve_res = test_util::run_cli(solve_args);
  std::vector<std::string> trace_args = {"trace", "--horizon", "6"};
  trace_args.insert(trace_args.end(), kFlagsA.begin(), kFlagsA.end());
  const auto trace_res = test_util::run_cli(trace_args);
  const double elapsed = seconds_since(t0);

  out.require(solve_res.code == 0, "solve exit code");
  out.require(trace_res.code == 0, "trace exit code");
  if (!out.pass) return out;

  const json j = json::parse(solve_res.out);
  auto close = [&](double got, double want, const char* name) {
    out.require(std::fabs(got - want) <= 1e-10,
                std::string(name) + "=" + fmt(got));
  };
  close(j["v_star"].get<double>(), 1.0, "v_star");
  close(j["c_star"].get<double>(), 1.2, "c_star");

  const auto rows = test_util::parse_csv_strict(trace_res.out);
  close(std::stod(rows[1][1]), 1.0, "p_1");
  close(std::stod(rows[1][3]), 0.0, "x_1");
  close(std::stod(rows[2][1]), 1.25, "p_2");
  close(std::stod(rows[2][3]), 0.2, "x_2");
  for (std::size_t r = 2; r < rows.size(); ++r)
    close(std::stod(rows[r][2]), 1.0, "v_t");
  out.require(elapsed < 0.1, "runtime " + fmt(elapsed) + "s");
  return out;
}

Outcome criterion2_threshold() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const SteadyStateReport rep = steady_report({0.5, 0, 1, 4, 0.99});
  out.require(std::fabs(rep.rho_star - 0.8) <= 1e-3,
              "rho_star=" + fmt(rep.rho_star));

  const std::string svg_path = "acceptance_rho_sweep.svg";
  const auto res = test_util::run_cli(
      {"sweep", "--rho", "0.5", "--sigma0-sq", "0", "--sigma-sq", "1", "--c",
       "4", "--delta", "0.99", "--axis", "rho", "--from", "0.05", "--to",
       "0.99", "--steps", "200", "--svg", svg_path});
  out.require(res.code == 0, "sweep exit code");
  if (res.code == 0) {
    std::ifstream svg(svg_path);
    const std::string doc{std::istreambuf_iterator<char>(svg),
                          std::istreambuf_iterator<char>()};
    bool svg_ok = true;
    try {
      test_util::check_xml_wellformed(doc);
    } catch (const std::exception&) {
      svg_ok = false;
    }
    out.require(svg_ok && doc.find("<svg") != std::string::npos,
                "sweep chart not well-formed");
    std::remove(svg_path.c_str());
    const auto rows = test_util::parse_csv_strict(res.out);
    double best_axis = 0.0, best_v = 1e300;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const double v = std::stod(rows[r][1]);
      if (v < best_v) {
        best_v = v;
        best_axis = std::stod(rows[r][0]);
      }
    }
    const double step = (0.99 - 0.05) / 199.0;
    out.require(std::fabs(best_axis - rep.rho_star) <= step + 1e-12,
                "sweep argmin=" + fmt(best_axis));
  }
  out.require(seconds_since(t0) < 2.0, "runtime");
  return out;
}

Outcome criterion3_sqrt_c() {
  Outcome out;
  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double rho = 0.05 + 0.9 * u(rng);
    const double sigma_sq = 0.2 + 3.0 * u(rng);
    const double c = 0.02 + 12.0 * u(rng);
    const double v = solve_v_star({rho, 0.0, sigma_sq, c, 0.0});
    out.require(std::fabs(v - std::sqrt(c)) <= 1e-12 * std::sqrt(c),
                "v_star off sqrt(c) at c=" + fmt(c));
  }
  return out;
}

Outcome criterion4_bellman_oracle() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(40);

  for (int set = 0; set < 50; ++set) {
    const ModelParams p = test_util::random_interior_params(rng, 0.0, 0.9);
    const GridConfig cfg = GridConfig::defaults(p, 512, 1e-8);
    const ValueFunctionGrid grid = value_iteration(p, cfg);
    const double v_star = solve_v_star(p);
    std::uniform_real_distribution<double> probe(cfg.p_min, cfg.p_max);
    for (int k = 0; k < 20; ++k) {
      const double pv = probe(rng);
      const double dev = std::fabs(greedy_policy(grid, pv) -
                                   std::min(pv, v_star));
      out.require(dev <= 5.0 * grid.step(),
                  "policy dev=" + fmt(dev) + " at set " + fmt(set));
    }
  }

  const std::vector<ModelParams> named = {{0.8, 0, 1, 4, 0.99},
                                          {0.5, 0, 1, 1, 0.5},
                                          {0.7, 0, 2, 3, 0.9}};
  for (const ModelParams& p : named) {
    const ValueFunctionGrid grid =
        value_iteration(p, GridConfig::defaults(p, 2048));
    const SteadyStateReport rep = steady_report(p);
    const double psi_star = psi_value(grid, rep.p_star);
    const double identity =
        std::fabs(psi_star - rep.c_star / (1.0 - p.delta)) / psi_star;
    out.require(identity <= 1e-3, "value identity err=" + fmt(identity));
    const double env = envelope_check(p, grid);
    out.require(env < 1e-3, "envelope err=" + fmt(env));
  }

  const double elapsed = seconds_since(t0);
  out.require(elapsed < 60.0, "runtime " + fmt(elapsed) + "s");
  return out;
}

Outcome criterion5_derivative_algebra() {
  Outcome out;
  const DerivTable a = analytic_statics(test_util::params_a());
  auto spot = [&](double got, double want, const char* name) {
    out.require(std::fabs(got - want) <= 1e-5,
                std::string(name) + "=" + fmt(got));
  };
  spot(a.at(Quantity::v_star, Primitive::delta), -0.08, "dv/ddelta");
  spot(a.at(Quantity::v_star, Primitive::c), 0.5, "dv/dc");
  spot(a.at(Quantity::p_star, Primitive::rho), 1.0, "dp/drho");
  spot(a.at(Quantity::c_star, Primitive::rho), 0.64, "dc/drho");
  spot(a.at(Quantity::c_star, Primitive::c), 0.28, "dc/dc");

  std::mt19937_64 rng(50);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = test_util::random_interior_params(rng, 0.01, 0.95);
    const StaticsReport rep = statics_report(p, 1e-6);
    out.require(rep.max_rel_discrepancy <= 1e-4,
                "set " + fmt(i) + " discrepancy=" +
                    fmt(rep.max_rel_discrepancy));
  }
  return out;
}

Outcome criterion6_sign_suite() {
  Outcome out;
  std::mt19937_64 rng(50);  // same draws as criterion 5
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = test_util::random_interior_params(rng, 0.01, 0.95);
    for (const SignClause& cl : sign_audit(p, analytic_statics(p)))
      out.require(cl.pass, cl.name + " value=" + fmt(cl.value) + " at set " +
                               fmt(i));
  }
  const DerivTable below = analytic_statics({0.7, 0, 1, 4, 0.99});
  const DerivTable above = analytic_statics({0.9, 0, 1, 4, 0.99});
  out.require(below.at(Quantity::v_star, Primitive::rho) < 0.0,
              "no decline below the threshold");
  out.require(above.at(Quantity::v_star, Primitive::rho) > 0.0,
              "no rise above the threshold");
  return out;
}

Outcome criterion7_monte_carlo() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(70);
  for (int set = 0; set < 10; ++set) {
    const ModelParams p = test_util::random_params(rng);
    const EnsembleStats stats =
        simulate_paths(p, {20, 100000, 7700 + static_cast<std::uint64_t>(set)});
    for (const PeriodStats& ps : stats.per_period) {
      out.require(std::fabs(ps.mse_emp - ps.v_t) <= 3.5 * ps.mse_se,
                  "mse off at set " + fmt(set) + " t=" + fmt(ps.t));
      out.require(std::fabs(ps.cost_emp - ps.cost_t) <= 3.5 * ps.cost_se,
                  "cost off at set " + fmt(set) + " t=" + fmt(ps.t));
    }
  }
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 60.0, "runtime " + fmt(elapsed) + "s");
  return out;
}

Outcome criterion8_precision_boundary() {
  Outcome out;
  std::mt19937_64 rng(80);
  for (int i = 0; i < 10; ++i) {
    const ModelParams base = test_util::random_params(rng);
    const double bound = cost_assumption(base).bound;
    const SteadyStateReport below = steady_report(
        {base.rho, base.sigma0_sq, base.sigma_sq, 0.99 * bound, base.delta});
    const SteadyStateReport above = steady_report(
        {base.rho, base.sigma0_sq, base.sigma_sq, 1.01 * bound, base.delta});
    out.require(below.x_star > 0.0, "x_star not positive below the bound");
    out.require(below.assumption_holds, "verdict below the bound");
    out.require(above.x_star == 0.0, "x_star nonzero above the bound");
    out.require(!above.assumption_holds, "verdict above the bound");
  }
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"1. worked-example reproduction (solve/trace)", criterion1_worked_example},
      {"2. persistence-threshold reproduction and sweep minimum", criterion2_threshold},
      {"3. undiscounted closed form V* = sqrt(c)", criterion3_sqrt_c},
      {"4. value-iteration oracle equivalence", criterion4_bellman_oracle},
      {"5. derivative algebra vs finite differences", criterion5_derivative_algebra},
      {"6. monotonicity sign suite", criterion6_sign_suite},
      {"7. Monte Carlo calibration", criterion7_monte_carlo},
      {"8. precision boundary straddle", criterion8_precision_boundary},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome out;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail << "exception: " << ex.what();
    }
    if (!out.pass) ++failures;
    std::cout << (out.pass ? "PASS " : "FAIL ") << e.name;
    const std::string detail = out.detail.str();
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
