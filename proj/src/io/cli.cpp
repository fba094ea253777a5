#include "infoacq/io/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoacq/bellman.hpp"
#include "infoacq/io/csv.hpp"
#include "infoacq/io/json_writer.hpp"
#include "infoacq/io/svg.hpp"
#include "infoacq/simulate.hpp"
#include "infoacq/statics.hpp"
#include "infoacq/steady_state.hpp"

namespace infoacq::io {

namespace {

struct HelpRequested {
  std::string text;
};

using nlohmann::json;

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    if (!j.is_object())
      throw UsageError("--config: top level of '" + path + "' must be an object");
    return j;
  } catch (const json::exception& e) {
    throw UsageError("--config: failed to parse '" + path + "': " + e.what());
  }
}

// Looks up `key` at the top level, falling back to an embedded "params"
// object so a solve report can be fed back as a config file.
const json* config_find(const json& cfg, const std::string& key) {
  if (auto it = cfg.find(key); it != cfg.end()) return &*it;
  if (auto pit = cfg.find("params"); pit != cfg.end() && pit->is_object())
    if (auto it = pit->find(key); it != pit->end()) return &*it;
  return nullptr;
}

double config_number(const json& cfg, const std::string& key, bool* found) {
  const json* v = config_find(cfg, key);
  if (!v) {
    *found = false;
    return 0.0;
  }
  if (!v->is_number())
    throw UsageError("--config: '" + key + "' must be a number");
  *found = true;
  return v->get<double>();
}

// Seeds and path counts are integers; going through a double would corrupt
// values above 2^53.
std::uint64_t config_uint(const json& cfg, const std::string& key,
                          bool* found) {
  const json* v = config_find(cfg, key);
  if (!v) {
    *found = false;
    return 0;
  }
  if (!v->is_number_integer() && !v->is_number_unsigned())
    throw UsageError("--config: '" + key + "' must be an integer");
  *found = true;
  return v->get<std::uint64_t>();
}

std::string config_string(const json& cfg, const std::string& key,
                          bool* found) {
  const json* v = config_find(cfg, key);
  if (!v) {
    *found = false;
    return {};
  }
  if (!v->is_string())
    throw UsageError("--config: '" + key + "' must be a string");
  *found = true;
  return v->get<std::string>();
}

Command command_from(const std::string& name) {
  static const std::map<std::string, Command> table = {
      {"solve", Command::solve},       {"trace", Command::trace},
      {"simulate", Command::simulate}, {"statics", Command::statics},
      {"verify", Command::verify},     {"sweep", Command::sweep}};
  return table.at(name);
}

}  // namespace

RunConfig parse_cli(const std::vector<std::string>& args) {
  CLI::App app{"Optimal signal-precision planning for tracking an AR(1) state"};
  app.require_subcommand(1);

  double rho = 0, sigma0_sq = 0, sigma_sq = 0, c = 0, delta = 0;
  double tol = 0, from = 0, to = 0;
  int horizon = 0, grid = 0, steps = 0;
  std::uint64_t paths = 0, seed = 0;
  std::string config, axis, out, format, svg;

  auto* o_rho = app.add_option("--rho", rho, "state autocorrelation, in (0,1)");
  auto* o_s0 = app.add_option("--sigma0-sq", sigma0_sq,
                              "initial state variance, >= 0");
  auto* o_s = app.add_option("--sigma-sq", sigma_sq, "shock variance, > 0");
  auto* o_c = app.add_option("--c", c, "marginal precision cost, > 0");
  auto* o_d = app.add_option("--delta", delta, "discount factor, in [0,1)");
  auto* o_cfg = app.add_option("--config", config,
                               "JSON file supplying defaults; flags override");
  auto* o_hor = app.add_option("--horizon", horizon, "trace/simulate periods");
  auto* o_paths = app.add_option("--paths", paths, "Monte Carlo replications");
  auto* o_seed = app.add_option("--seed", seed, "64-bit RNG seed");
  auto* o_grid = app.add_option("--grid", grid, "value-iteration grid size");
  auto* o_tol = app.add_option(
      "--tol", tol,
      "solver residual tolerance (verify: sweep tolerance)");
  auto* o_axis =
      app.add_option("--axis", axis, "sweep axis: rho|delta|c|sigma_sq");
  auto* o_from = app.add_option("--from", from, "sweep range start");
  auto* o_to = app.add_option("--to", to, "sweep range end");
  auto* o_steps = app.add_option("--steps", steps, "sweep grid points, >= 2");
  auto* o_out = app.add_option("--out", out, "output file (default: stdout)");
  auto* o_fmt = app.add_option("--format", format, "json|csv");
  auto* o_svg = app.add_option("--svg", svg, "also render charts (sweep)");

  const char* names[] = {"solve", "trace", "simulate", "statics", "verify",
                         "sweep"};
  const char* descs[] = {
      "steady-state report as JSON",
      "optimal-policy variance/precision/cost path",
      "seeded Monte Carlo ensemble under the optimal policy",
      "analytic vs finite-difference derivative table with sign audit",
      "brute-force value-iteration cross-check of the closed-form policy",
      "steady-state quantities along one parameter axis"};
  for (int i = 0; i < 6; ++i)
    app.add_subcommand(names[i], descs[i])->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("infoacq");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const Command cmd = command_from(app.get_subcommands().front()->get_name());

  json cfg = json::object();
  if (o_cfg->count() > 0) cfg = load_config(config);

  bool found = false;
  auto merge_num = [&](CLI::Option* opt, double& slot, const char* key) {
    if (opt->count() > 0) return true;
    const double v = config_number(cfg, key, &found);
    if (found) slot = v;
    return found;
  };
  auto merge_int = [&](CLI::Option* opt, int& slot, const char* key) {
    if (opt->count() > 0) return true;
    const double v = config_number(cfg, key, &found);
    if (found) slot = static_cast<int>(v);
    return found;
  };
  auto merge_u64 = [&](CLI::Option* opt, std::uint64_t& slot, const char* key) {
    if (opt->count() > 0) return true;
    const std::uint64_t v = config_uint(cfg, key, &found);
    if (found) slot = v;
    return found;
  };
  auto merge_str = [&](CLI::Option* opt, std::string& slot, const char* key) {
    if (opt->count() > 0) return true;
    const std::string v = config_string(cfg, key, &found);
    if (found) slot = v;
    return found;
  };

  const bool has_rho = merge_num(o_rho, rho, "rho");
  const bool has_s0 = merge_num(o_s0, sigma0_sq, "sigma0_sq");
  const bool has_s = merge_num(o_s, sigma_sq, "sigma_sq");
  const bool has_c = merge_num(o_c, c, "c");
  const bool has_d = merge_num(o_d, delta, "delta");
  {
    std::string missing;
    auto need = [&](bool have, const char* flag) {
      if (!have) missing += missing.empty() ? flag : std::string(", ") + flag;
    };
    need(has_rho, "--rho");
    need(has_s0, "--sigma0-sq");
    need(has_s, "--sigma-sq");
    need(has_c, "--c");
    need(has_d, "--delta");
    if (!missing.empty())
      throw UsageError("missing required model parameters: " + missing);
  }

  std::optional<ModelParams> params;
  try {
    params = validate_params(rho, sigma0_sq, sigma_sq, c, delta);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }

  const bool has_hor = merge_int(o_hor, horizon, "horizon");
  const bool has_paths = merge_u64(o_paths, paths, "paths");
  const bool has_seed = merge_u64(o_seed, seed, "seed");
  const bool has_grid = merge_int(o_grid, grid, "grid");
  const bool has_tol = merge_num(o_tol, tol, "tol");
  const bool has_axis = merge_str(o_axis, axis, "axis");
  const bool has_from = merge_num(o_from, from, "from");
  const bool has_to = merge_num(o_to, to, "to");
  const bool has_steps = merge_int(o_steps, steps, "steps");
  merge_str(o_out, out, "out");
  merge_str(o_fmt, format, "format");
  merge_str(o_svg, svg, "svg");

  RunConfig rc{cmd, *params};
  if (has_hor) {
    if (horizon < 1) throw UsageError("--horizon must be >= 1");
    rc.horizon = horizon;
  }
  if (has_paths) {
    if (paths < 1) throw UsageError("--paths must be >= 1");
    rc.paths = static_cast<std::int64_t>(paths);
  }
  if (has_seed) rc.seed = seed;
  if (has_grid) {
    if (grid < 64) throw UsageError("--grid must be >= 64");
    rc.grid = grid;
  }
  if (has_tol) {
    if (cmd == Command::verify) {
      if (!(tol > 0.0)) throw UsageError("--tol must be > 0");
    } else if (!(tol > 0.0 && tol <= 1e-6)) {
      throw UsageError("--tol must lie in (0, 1e-6]");
    }
    rc.tol = tol;
  }
  if (!format.empty() && format != "json" && format != "csv")
    throw UsageError("--format must be json or csv (got '" + format + "')");
  if (cmd == Command::solve && format == "csv")
    throw UsageError("solve emits a JSON report; --format csv is not available");
  rc.format = format;
  rc.out = out;
  rc.svg = svg;

  if (cmd == Command::sweep) {
    if (!has_axis) throw UsageError("sweep requires --axis");
    if (axis != "rho" && axis != "delta" && axis != "c" && axis != "sigma_sq")
      throw UsageError("--axis must be one of rho, delta, c, sigma_sq (got '" +
                       axis + "')");
    if (!has_from || !has_to) throw UsageError("sweep requires --from and --to");
    if (!(from < to)) throw UsageError("sweep requires --from < --to");
    rc.steps = has_steps ? steps : 100;
    if (rc.steps < 2) throw UsageError("--steps must be >= 2");
    rc.axis = axis;
    rc.from = from;
    rc.to = to;
    // The whole range must stay inside the parameter domain.
    for (int i = 0; i < rc.steps; ++i) {
      const double v = from + (to - from) * static_cast<double>(i) /
                                  static_cast<double>(rc.steps - 1);
      double pr = rho, ps0 = sigma0_sq, ps = sigma_sq, pc = c, pd = delta;
      if (axis == "rho") pr = v;
      else if (axis == "delta") pd = v;
      else if (axis == "c") pc = v;
      else ps = v;
      try {
        validate_params(pr, ps0, ps, pc, pd);
      } catch (const std::domain_error& e) {
        throw UsageError(std::string("sweep range leaves the valid region: ") +
                         e.what());
      }
    }
  }
  return rc;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(
                      std::chrono::steady_clock::now().time_since_epoch().count());
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    f << content;
    if (!f.good()) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

namespace {

void emit(const RunConfig& rc, std::ostream& fallback,
          const std::string& content) {
  if (rc.out.empty())
    fallback << content;
  else
    write_file_atomic(rc.out, content);
}

void write_params(JsonWriter& w, const ModelParams& p) {
  w.key("params").begin_object();
  w.key("rho").value(p.rho);
  w.key("sigma0_sq").value(p.sigma0_sq);
  w.key("sigma_sq").value(p.sigma_sq);
  w.key("c").value(p.c);
  w.key("delta").value(p.delta);
  w.end_object();
}

int cmd_solve(const RunConfig& rc, std::ostream& out) {
  const SteadyStateReport rep =
      steady_report(rc.params, rc.tol.value_or(kDefaultSolveTol));
  JsonWriter w;
  w.begin_object();
  write_params(w, rc.params);
  w.key("v_star").value(rep.v_star);
  w.key("x_star").value(rep.x_star);
  w.key("p_star").value(rep.p_star);
  w.key("c_star").value(rep.c_star);
  w.key("rho_star").value(rep.rho_star);
  w.key("t_star");
  if (rep.t_star)
    w.value(*rep.t_star);
  else
    w.null_value();
  w.key("v_zero").value(rep.v_zero);
  w.key("cost_bound").value(rep.cost_bound);
  w.key("assumption_holds").value(rep.assumption_holds);
  w.end_object();
  emit(rc, out, std::move(w).str() + "\n");
  return 0;
}

int cmd_trace(const RunConfig& rc, std::ostream& out) {
  const PolicyTrace trace =
      trace_policy(rc.params, rc.horizon, rc.tol.value_or(kDefaultSolveTol));
  if (rc.format == "json") {
    JsonWriter w;
    w.begin_object();
    write_params(w, rc.params);
    w.key("rows").begin_array();
    int t = 1;
    for (const PolicyRow& row : trace.rows) {
      w.begin_object();
      w.key("t").value(t++);
      w.key("p_t").value(row.p_t);
      w.key("v_t").value(row.v_t);
      w.key("x_t").value(row.x_t);
      w.key("cost_t").value(row.cost_t);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    emit(rc, out, std::move(w).str() + "\n");
    return 0;
  }
  CsvWriter csv;
  csv.row({"t", "p_t", "v_t", "x_t", "cost_t"});
  int t = 1;
  for (const PolicyRow& row : trace.rows)
    csv.row({std::to_string(t++), format_double(row.p_t),
             format_double(row.v_t), format_double(row.x_t),
             format_double(row.cost_t)});
  emit(rc, out, std::move(csv).str());
  return 0;
}

int cmd_simulate(const RunConfig& rc, std::ostream& out) {
  SimConfig sim;
  sim.horizon = rc.horizon;
  sim.n_paths = rc.paths;
  sim.seed = rc.seed;
  const EnsembleStats stats = simulate_paths(rc.params, sim);
  if (rc.format == "json") {
    JsonWriter w;
    w.begin_object();
    write_params(w, rc.params);
    w.key("horizon").value(sim.horizon);
    w.key("paths").value(static_cast<long long>(sim.n_paths));
    w.key("seed").value(static_cast<long long>(sim.seed));
    w.key("rows").begin_array();
    for (const PeriodStats& ps : stats.per_period) {
      w.begin_object();
      w.key("t").value(ps.t);
      w.key("p_t").value(ps.p_t);
      w.key("v_t").value(ps.v_t);
      w.key("x_t").value(ps.x_t);
      w.key("cost_t").value(ps.cost_t);
      w.key("mse_emp").value(ps.mse_emp);
      w.key("mse_se").value(ps.mse_se);
      w.key("cost_emp").value(ps.cost_emp);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    emit(rc, out, std::move(w).str() + "\n");
    return 0;
  }
  CsvWriter csv;
  csv.row({"t", "p_t", "v_t", "x_t", "cost_t", "mse_emp", "mse_se",
           "cost_emp"});
  for (const PeriodStats& ps : stats.per_period)
    csv.row({std::to_string(ps.t), format_double(ps.p_t),
             format_double(ps.v_t), format_double(ps.x_t),
             format_double(ps.cost_t), format_double(ps.mse_emp),
             format_double(ps.mse_se), format_double(ps.cost_emp)});
  emit(rc, out, std::move(csv).str());
  return 0;
}

// Audit clauses attach to specific table cells.
const char* clause_for_cell(int q, int p, const std::vector<SignClause>& audit,
                            bool* pass) {
  static const std::map<std::pair<int, int>, int> cell_to_clause = {
      {{0, 1}, 0}, {{1, 1}, 1}, {{0, 2}, 2}, {{1, 2}, 3}, {{3, 0}, 4},
      {{3, 1}, 5}, {{3, 2}, 6}, {{3, 3}, 7}, {{0, 0}, 8}};
  auto it = cell_to_clause.find({q, p});
  if (it == cell_to_clause.end()) return nullptr;
  *pass = audit[static_cast<std::size_t>(it->second)].pass;
  return audit[static_cast<std::size_t>(it->second)].name.c_str();
}

int cmd_statics(const RunConfig& rc, std::ostream& out) {
  const StaticsReport rep = statics_report(rc.params);
  if (rc.format == "csv") {
    CsvWriter csv;
    csv.row({"quantity", "wrt", "analytic", "finite_diff", "rel_discrepancy",
             "sign_clause", "sign_pass"});
    for (int q = 0; q < 4; ++q)
      for (int p = 0; p < 4; ++p) {
        bool pass = false;
        const char* clause = clause_for_cell(q, p, rep.sign_audit, &pass);
        csv.row({kQuantityNames[q], kPrimitiveNames[p],
                 format_double(rep.analytic.d[q][p]),
                 format_double(rep.finite_diff.d[q][p]),
                 format_double(rel_discrepancy(rep.analytic.d[q][p],
                                               rep.finite_diff.d[q][p])),
                 clause ? clause : "",
                 clause ? (pass ? "true" : "false") : ""});
      }
    emit(rc, out, std::move(csv).str());
    return 0;
  }
  JsonWriter w;
  w.begin_object();
  write_params(w, rc.params);
  w.key("fd_step").value(rep.fd_step);
  auto table = [&](const char* name, const DerivTable& t) {
    w.key(name).begin_object();
    for (int q = 0; q < 4; ++q) {
      w.key(kQuantityNames[q]).begin_object();
      for (int p = 0; p < 4; ++p) w.key(kPrimitiveNames[p]).value(t.d[q][p]);
      w.end_object();
    }
    w.end_object();
  };
  table("analytic", rep.analytic);
  table("finite_diff", rep.finite_diff);
  w.key("max_rel_discrepancy").value(rep.max_rel_discrepancy);
  w.key("sign_audit").begin_array();
  for (const SignClause& cl : rep.sign_audit) {
    w.begin_object();
    w.key("clause").value(cl.name);
    w.key("value").value(cl.value);
    w.key("pass").value(cl.pass);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(rc, out, std::move(w).str() + "\n");
  return 0;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const ModelParams& params = rc.params;
  GridConfig cfg =
      GridConfig::defaults(params, rc.grid, rc.tol.value_or(1e-9));
  const ValueFunctionGrid grid = value_iteration(params, cfg);
  const SteadyStateReport rep = steady_report(params);
  const double h = grid.step();
  // Discretization scales like h^2; checks at coarser grids loosen
  // accordingly from the reference size 2048.
  const double rel = 2048.0 / static_cast<double>(rc.grid);
  const double tol_scale = std::max(1.0, rel * rel);

  bool all_pass = true;
  std::ostringstream report;
  auto check = [&](const char* name, double value, double tol_v) {
    const bool pass = value <= tol_v;
    all_pass = all_pass && pass;
    report << (pass ? "PASS" : "FAIL") << " " << name << ": value=" << value
           << " tol=" << tol_v << "\n";
  };

  check("sweep_convergence", grid.final_sweep_delta, cfg.sweep_tol);
  const double residual = bellman_residual(params, grid);
  check("bellman_residual", residual,
        cfg.sweep_tol * (1.0 + params.delta / (1.0 - params.delta)) + 1e-12);

  std::mt19937_64 rng(0x76657269ULL);
  std::uniform_real_distribution<double> dist(cfg.p_min, cfg.p_max);
  double worst_policy = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double p = dist(rng);
    const double closed = std::min(p, rep.v_star);
    worst_policy = std::max(worst_policy,
                            std::fabs(greedy_policy(grid, p) - closed));
  }
  check("policy_agreement", worst_policy, 5.0 * h);

  if (rep.assumption_holds) {
    const double psi_p_star = psi_value(grid, rep.p_star);
    const double identity =
        std::fabs(psi_p_star - rep.c_star / (1.0 - params.delta)) /
        std::fabs(psi_p_star);
    check("value_identity", identity, 1e-3 * tol_scale);
  } else {
    report << "SKIP value_identity: cost bound fails, no steady state\n";
  }
  check("envelope", envelope_check(params, grid), 1e-3 * tol_scale);

  emit(rc, out, report.str());
  return all_pass ? 0 : 1;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out) {
  const int n = rc.steps;
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    values[static_cast<std::size_t>(i)] =
        rc.from + (rc.to - rc.from) * static_cast<double>(i) /
                      static_cast<double>(n - 1);

  std::vector<SteadyStateReport> reports;
  reports.reserve(values.size());
  for (double v : values) {
    double pr = rc.params.rho, ps0 = rc.params.sigma0_sq,
           ps = rc.params.sigma_sq, pc = rc.params.c, pd = rc.params.delta;
    if (rc.axis == "rho") pr = v;
    else if (rc.axis == "delta") pd = v;
    else if (rc.axis == "c") pc = v;
    else ps = v;
    reports.push_back(steady_report(validate_params(pr, ps0, ps, pc, pd),
                                    rc.tol.value_or(kDefaultSolveTol)));
  }

  std::string payload;
  if (rc.format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("axis").value(rc.axis);
    auto column = [&](const char* name, auto getter) {
      w.key(name).begin_array();
      for (const SteadyStateReport& r : reports) getter(r);
      w.end_array();
    };
    w.key("values").begin_array();
    for (double v : values) w.value(v);
    w.end_array();
    column("v_star", [&](const SteadyStateReport& r) { w.value(r.v_star); });
    column("x_star", [&](const SteadyStateReport& r) { w.value(r.x_star); });
    column("c_star", [&](const SteadyStateReport& r) { w.value(r.c_star); });
    column("assumption_holds",
           [&](const SteadyStateReport& r) { w.value(r.assumption_holds); });
    w.end_object();
    payload = std::move(w).str() + "\n";
  } else {
    CsvWriter csv;
    csv.row({rc.axis, "v_star", "x_star", "c_star", "assumption_holds"});
    for (std::size_t i = 0; i < values.size(); ++i)
      csv.row({format_double(values[i]), format_double(reports[i].v_star),
               format_double(reports[i].x_star),
               format_double(reports[i].c_star),
               reports[i].assumption_holds ? "true" : "false"});
    payload = std::move(csv).str();
  }
  emit(rc, out, payload);

  if (!rc.svg.empty()) {
    std::vector<ChartPanel> panels(3);
    const char* titles[3] = {"v_star", "x_star", "c_star"};
    for (int k = 0; k < 3; ++k) {
      ChartPanel& panel = panels[static_cast<std::size_t>(k)];
      panel.title = titles[k];
      panel.x_label = rc.axis;
      panel.x = values;
      panel.y.reserve(values.size());
      for (const SteadyStateReport& r : reports)
        panel.y.push_back(k == 0 ? r.v_star : k == 1 ? r.x_star : r.c_star);
      for (const SteadyStateReport& r : reports)
        panel.solid.push_back(r.assumption_holds);
    }
    write_file_atomic(rc.svg, render_line_charts(panels));
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  std::optional<RunConfig> rc;
  try {
    rc = parse_cli(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    switch (rc->command) {
      case Command::solve: {
        if (rc->format.empty()) rc->format = "json";
        return cmd_solve(*rc, out);
      }
      case Command::trace:
        if (rc->format.empty()) rc->format = "csv";
        return cmd_trace(*rc, out);
      case Command::simulate:
        if (rc->format.empty()) rc->format = "csv";
        return cmd_simulate(*rc, out);
      case Command::statics:
        if (rc->format.empty()) rc->format = "json";
        return cmd_statics(*rc, out);
      case Command::verify:
        return cmd_verify(*rc, out);
      case Command::sweep:
        if (rc->format.empty()) rc->format = "csv";
        return cmd_sweep(*rc, out);
    }
    return 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (rc->command == Command::solve) {
      JsonWriter w;
      w.begin_object();
      w.key("error").begin_object();
      w.key("type").value(std::string("computation_failure"));
      w.key("message").value(std::string(e.what()));
      w.end_object();
      w.end_object();
      out << std::move(w).str() << "\n";
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace infoacq::io
