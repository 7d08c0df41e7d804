#include "pswitch/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pswitch/bounds.hpp"
#include "pswitch/fd_solver.hpp"
#include "pswitch/io/config.hpp"
#include "pswitch/io/csv.hpp"
#include "pswitch/io/svg.hpp"
#include "pswitch/kernels.hpp"
#include "pswitch/regions.hpp"
#include "pswitch/resolvent.hpp"
#include "pswitch/simulate.hpp"

namespace pswitch {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string preset, config_file, out_dir, formats, simd;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--preset", c.preset, "preset name (resolved via PSWITCH_PRESET_DIR or ./presets)");
  sub->add_option("--config", c.config_file, "run configuration file");
  sub->add_option("--set", c.sets, "override a config key, key=value (repeatable)");
  sub->add_option("--out", c.out_dir, "output directory");
  sub->add_option("--format", c.formats, "comma list from csv,json,svg");
  sub->add_option("--simd", c.simd, "kernel backend: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

RunConfig load_config(const CommonOpts& c) {
  RunConfig cfg;
  if (!c.preset.empty() && !c.config_file.empty())
    throw std::runtime_error("give either --preset or --config, not both");
  if (!c.preset.empty()) cfg = parse_config_file(preset_path(c.preset));
  if (!c.config_file.empty()) cfg = parse_config_file(c.config_file);
  for (const std::string& s : c.sets) apply_override(cfg, s);
  if (!c.out_dir.empty()) cfg.out_dir = c.out_dir;
  if (!c.formats.empty()) apply_override(cfg, "formats=" + c.formats);
  for (const std::string& f : cfg.formats)
    if (f != "csv" && f != "json" && f != "svg")
      throw std::runtime_error("unknown output format: " + f);
  if (!c.simd.empty()) {
    if (c.simd == "auto")
      kernels::reset_backend();
    else
      kernels::force_backend(c.simd == "avx2" ? kernels::Backend::avx2
                                              : kernels::Backend::scalar);
  }
  return cfg;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw IoError("cannot write " + path);
}

int validation_gate(const ModelSpec& m, bool allow_override, bool quiet = false) {
  const ValidationReport rep = validate(m, {allow_override});
  for (const Violation& v : rep.errors)
    std::fprintf(stderr, "error [%s]: %s\n", v.rule.c_str(), v.message.c_str());
  if (!quiet)
    for (const Violation& v : rep.warnings)
      std::fprintf(stdout, "warning [%s]: %s\n", v.rule.c_str(), v.message.c_str());
  return rep.ok ? 0 : 1;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ValueTable make_table(const ValueSolution& sol, const GFunctions& g,
                      double offset1, double offset2) {
  ValueTable t;
  const std::size_t n = sol.grid.n();
  t.x = sol.grid.x;
  t.v1.resize(n);
  t.v2.resize(n);
  t.g1 = g.g1;
  t.g2 = g.g2;
  t.in_s1.resize(n);
  t.in_s2.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    t.v1[k] = sol.v1[k] + offset1;
    t.v2[k] = sol.v2[k] + offset2;
    t.in_s1[k] = g.g1[k] <= 0.0 ? 1 : 0;
    t.in_s2[k] = g.g2[k] <= 0.0 ? 1 : 0;
  }
  return t;
}

std::string summary_text(const ValueSolution& sol, const RegionReport& rr) {
  std::string s;
  s += "method = " + sol.method + "\n";
  s += "converged = " + std::string(sol.converged ? "1" : "0") + "\n";
  s += "iterations = " + std::to_string(sol.iterations) + "\n";
  s += "residual_sup = " + fmt_g(sol.residual_sup) + "\n";
  s += "case_predicted = " + std::to_string(rr.predicted.case_id) + "\n";
  s += "case_alternate = " + std::to_string(rr.predicted.alternate) + "\n";
  s += "case_observed = " + std::to_string(rr.case_observed) + "\n";
  s += "consistent = " + std::string(rr.consistent ? "1" : "0") + "\n";
  s += "f_limit = " + fmt_g(rr.predicted.f_limit) + "\n";
  s += "x_lower1 = " + fmt_g(rr.structure.x_lower1.value) + "\n";
  s += "x_lower1_bracket_lo = " + fmt_g(rr.structure.x_lower1.lo) + "\n";
  s += "x_lower1_bracket_hi = " + fmt_g(rr.structure.x_lower1.hi) + "\n";
  s += "x_upper2 = " + fmt_g(rr.structure.x_upper2.value) + "\n";
  s += "x_upper2_bracket_lo = " + fmt_g(rr.structure.x_upper2.lo) + "\n";
  s += "x_upper2_bracket_hi = " + fmt_g(rr.structure.x_upper2.hi) + "\n";
  if (!rr.note.empty()) s += "note = " + rr.note + "\n";
  return s;
}

nlohmann::json summary_json(const ValueSolution& sol, const RegionReport& rr) {
  // JSON has no infinity; thresholds become null when absent.
  const auto num_or_null = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j;
  j["method"] = sol.method;
  j["converged"] = sol.converged;
  j["iterations"] = sol.iterations;
  j["residual_sup"] = sol.residual_sup;
  j["case_predicted"] = rr.predicted.case_id;
  j["case_alternate"] = rr.predicted.alternate;
  j["case_observed"] = rr.case_observed;
  j["consistent"] = rr.consistent;
  j["f_limit"] = num_or_null(rr.predicted.f_limit);
  j["x_lower1"] = num_or_null(rr.structure.x_lower1.value);
  j["x_upper2"] = num_or_null(rr.structure.x_upper2.value);
  j["note"] = rr.note;
  return j;
}

void emit_solution_outputs(const RunConfig& cfg, const NormalizedModel& nm,
                           const ValueSolution& sol, const RegionReport& rr) {
  for (const std::string& f : cfg.formats) {
    if (f == "csv")
      write_file(cfg.out_dir, "values.csv",
                 to_csv(make_table(sol, rr.g, nm.offset1, nm.offset2)));
    else if (f == "svg")
      write_file(cfg.out_dir, "regions.svg",
                 render_regions_svg(sol.grid, rr.g, rr.structure));
    else if (f == "json")
      write_file(cfg.out_dir, "summary.json", summary_json(sol, rr).dump(2) + "\n");
  }
  write_file(cfg.out_dir, "summary.txt", summary_text(sol, rr));
}

struct SolvedRun {
  NormalizedModel nm;
  Grid grid;
  ValueSolution sol;
  RegionReport rr;
};

SolvedRun solve_run(const RunConfig& cfg) {
  SolvedRun r;
  r.nm = normalize(cfg.model);
  r.grid = build_grid(cfg.model, cfg.x_min, cfg.x_max, cfg.n_nodes);
  r.sol = solve_penalized_system(r.nm.spec, r.grid, cfg.solver);
  if (!r.sol.converged)
    throw NonConvergence("solver did not converge after " +
                         std::to_string(r.sol.iterations) +
                         " iterations (residual " + fmt_g(r.sol.residual_sup) + ")");
  r.rr = verify_regions(r.nm.spec, r.sol);
  return r;
}

int cmd_validate(const RunConfig& cfg) {
  const int rc = validation_gate(cfg.model, cfg.allow_integrability_override);
  if (rc == 0) std::printf("model admissible\n");
  return rc;
}

int cmd_classify(const RunConfig& cfg) {
  if (int rc = validation_gate(cfg.model, cfg.allow_integrability_override))
    return rc;
  const Classification c = classify(cfg.model);
  std::printf("case = %d\n", c.case_id);
  std::printf("f_limit = %s\n", fmt_g(c.f_limit).c_str());
  if (c.alternate != 0)
    std::printf("alternate = %d (borderline classification)\n", c.alternate);
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  if (int rc = validation_gate(cfg.model, cfg.allow_integrability_override))
    return rc;
  const SolvedRun r = solve_run(cfg);
  emit_solution_outputs(cfg, r.nm, r.sol, r.rr);
  std::printf("converged in %d iterations, residual %.3e\n", r.sol.iterations,
              r.sol.residual_sup);
  std::printf("case %d, x_lower1 %s, x_upper2 %s\n", r.rr.case_observed,
              fmt_g(r.rr.structure.x_lower1.value).c_str(),
              fmt_g(r.rr.structure.x_upper2.value).c_str());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  if (int rc = validation_gate(cfg.model, cfg.allow_integrability_override))
    return rc;
  const SolvedRun r = solve_run(cfg);

  IterationOptions vi;
  const ValueSolution oracle = solve_by_value_iteration(r.nm.spec, r.grid, vi);
  if (!oracle.converged)
    throw NonConvergence("value iteration did not converge");

  const SolutionComparison cmp = compare_solutions(r.sol, oracle);
  const BoundsReport bounds = check_value_bounds(r.nm.spec, r.sol);
  const double bound_slack = 1e-7 * (1.0 + r.grid.x_max());

  const bool agree = cmp.sup_scaled <= cfg.verify_tol;
  const bool regions_ok = r.rr.consistent;
  const bool bounds_ok = bounds.ok(bound_slack);

  std::printf("fd: %d iterations, residual %.3e\n", r.sol.iterations,
              r.sol.residual_sup);
  std::printf("oracle: %d sweeps, fixed-point gap %.3e\n", oracle.iterations,
              oracle.residual_sup);
  std::printf("agreement: scaled sup diff %.3e (tol %.1e) %s\n", cmp.sup_scaled,
              cfg.verify_tol, agree ? "PASS" : "FAIL");
  std::printf("regions: predicted %d observed %d %s%s\n", r.rr.predicted.case_id,
              r.rr.case_observed, regions_ok ? "PASS" : "FAIL",
              r.rr.note.empty() ? "" : (" (" + r.rr.note + ")").c_str());
  std::printf(
      "bounds: upper_excess %.2e lower_deficit %.2e quotient_excess %.2e %s\n",
      bounds.upper_excess, bounds.lower_deficit, bounds.quotient_excess,
      bounds_ok ? "PASS" : "FAIL");

  emit_solution_outputs(cfg, r.nm, r.sol, r.rr);
  return (agree && regions_ok && bounds_ok) ? 0 : 3;
}

int cmd_simulate(const RunConfig& cfg) {
  if (int rc = validation_gate(cfg.model, cfg.allow_integrability_override))
    return rc;
  const SolvedRun r = solve_run(cfg);
  SimulationReport rep = policy_tournament(r.nm.spec, r.sol, cfg.paths);
  // The tournament runs the normalized model. Constant profit streams shift
  // every policy's payoff by the same amount (the adjusted costs absorb the
  // regime changes), so adding the start-regime offset recovers original-model
  // means; diffs and standard errors are unaffected.
  const double offset =
      cfg.model.regime0 == 1 ? r.nm.offset1 : r.nm.offset2;
  for (PolicyStats& st : rep.policies) st.mean += offset;

  CellTable t;
  t.header = {"policy", "mean", "se", "mean_diff", "se_diff", "mean_switches"};
  for (const PolicyStats& st : rep.policies)
    t.rows.push_back({st.name, csv_num(st.mean), csv_num(st.se),
                      csv_num(st.mean_diff), csv_num(st.se_diff),
                      csv_num(st.mean_switches)});
  const std::string csv = to_csv(t);
  write_file(cfg.out_dir, "tournament.csv", csv);

  std::printf("paths %zu, t_max %.6g, dt %.6g, truncation bound %.2e\n",
              rep.n_paths, rep.t_max, rep.dt, rep.truncation_bound);
  std::printf("arrivals mean %.4f (se %.4f)\n", rep.arrivals_mean,
              rep.arrivals_se);
  for (const PolicyStats& st : rep.policies)
    std::printf("%-26s mean %11.6f se %9.6f diff %11.6f se_diff %9.6f\n",
                st.name.c_str(), st.mean, st.se, st.mean_diff, st.se_diff);
  return 0;
}

struct SweepOpts {
  std::string param;
  double from = 0.0, to = 0.0;
  std::size_t steps = 2;
};

int cmd_sweep(const RunConfig& base, const SweepOpts& so) {
  if (so.steps < 2) throw std::runtime_error("sweep needs --steps >= 2");
  CellTable t;
  t.header = {so.param, "case_predicted", "case_observed", "x_lower1", "x_upper2"};
  for (std::size_t i = 0; i < so.steps; ++i) {
    const double v =
        so.from + (so.to - so.from) * static_cast<double>(i) /
                      static_cast<double>(so.steps - 1);
    RunConfig cfg = base;
    apply_override(cfg, so.param + "=" + fmt_g(v));
    if (validation_gate(cfg.model, cfg.allow_integrability_override, true))
      return 1;
    const SolvedRun r = solve_run(cfg);
    t.rows.push_back({fmt_g(v), std::to_string(r.rr.predicted.case_id),
                      std::to_string(r.rr.case_observed),
                      fmt_g(r.rr.structure.x_lower1.value),
                      fmt_g(r.rr.structure.x_upper2.value)});
    std::printf("%s = %-22s case %d/%d x_lower1 %-22s x_upper2 %s\n",
                so.param.c_str(), fmt_g(v).c_str(), r.rr.predicted.case_id,
                r.rr.case_observed, fmt_g(r.rr.structure.x_lower1.value).c_str(),
                fmt_g(r.rr.structure.x_upper2.value).c_str());
  }
  write_file(base.out_dir, "sweep.csv", to_csv(t));
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"two-regime switching solver with Poisson-limited interventions"};
  app.require_subcommand(1);

  CommonOpts copt[6];
  CLI::App* validate_cmd = app.add_subcommand("validate", "check model assumptions");
  add_common(validate_cmd, copt[0]);
  CLI::App* solve_cmd = app.add_subcommand("solve", "finite-difference solve, emit values");
  add_common(solve_cmd, copt[1]);
  CLI::App* classify_cmd = app.add_subcommand("classify", "predict the region structure");
  add_common(classify_cmd, copt[2]);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "solve, cross-check against the oracle, check structure");
  add_common(verify_cmd, copt[3]);
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo policy tournament");
  add_common(simulate_cmd, copt[4]);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "vary one parameter, tabulate thresholds");
  add_common(sweep_cmd, copt[5]);

  SweepOpts so;
  sweep_cmd->add_option("--param", so.param, "config key to vary")->required();
  sweep_cmd->add_option("--from", so.from, "first value")->required();
  sweep_cmd->add_option("--to", so.to, "last value")->required();
  sweep_cmd->add_option("--steps", so.steps, "number of values including ends")->required();
  std::string preset_base;
  sweep_cmd->add_option("--preset-base", preset_base, "preset supplying every other key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(load_config(copt[0]));
    if (solve_cmd->parsed()) return cmd_solve(load_config(copt[1]));
    if (classify_cmd->parsed()) return cmd_classify(load_config(copt[2]));
    if (verify_cmd->parsed()) return cmd_verify(load_config(copt[3]));
    if (simulate_cmd->parsed()) return cmd_simulate(load_config(copt[4]));
    if (sweep_cmd->parsed()) {
      if (!preset_base.empty()) {
        if (copt[5].preset.empty())
          copt[5].preset = preset_base;
        else
          throw std::runtime_error("give either --preset or --preset-base");
      }
      return cmd_sweep(load_config(copt[5]), so);
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace pswitch
