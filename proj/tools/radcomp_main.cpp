// Batch front-end: parses scenario configs, dispatches subcommands and
// writes deterministic CSV artifacts (17 significant digits everywhere).
//
// Exit codes: 0 success, 2 precondition/config errors, 3 comparison
// failure, 4 non-convergence.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radcomp/csv_io.hpp"
#include "radcomp/growth_bounds.hpp"
#include "radcomp/ode_verify.hpp"
#include "radcomp/oracle.hpp"
#include "radcomp/picard.hpp"
#include "radcomp/scenario_config.hpp"

namespace {

using namespace radcomp;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitComparison = 3;
constexpr int kExitNoConvergence = 4;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  Index grid_n = 0;  // 0: take the config's value
  double tol = 0.0;  // 0: subcommand default
  int max_iter = 200;
  std::vector<std::string> gamma_args;
  std::optional<double> alpha_override;
  std::optional<double> beta_override;
  std::vector<std::string> profiles;
  std::uint64_t seed = 1;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("config", opt.config_path, "scenario configuration file")->required();
  cmd->add_option("--out", opt.out_path, "output CSV path (default: stdout)");
  cmd->add_option("--grid-n", opt.grid_n, "override grid node count");
  cmd->add_option("--tol", opt.tol, "tolerance (solver or comparison, per subcommand)");
  cmd->add_option("--max-iter", opt.max_iter, "iteration cap for the fixed-point solve");
  cmd->add_option("--gamma", opt.gamma_args, "gamma override, repeatable: i=value");
  cmd->add_option_function<double>(
      "--alpha", [&opt](const double& v) { opt.alpha_override = v; },
      "bypass the alpha formula");
  cmd->add_option_function<double>(
      "--beta", [&opt](const double& v) { opt.beta_override = v; },
      "bypass the beta formula");
  cmd->add_option("--profile", opt.profiles,
                  "manufactured profile (quadratic | power:<q> | exp); repeatable for calibrate");
  cmd->add_option("--seed", opt.seed, "window sampling seed");
}

std::array<double, 12> parse_gammas(const std::vector<std::string>& args) {
  std::array<double, 12> gamma;
  gamma.fill(1.0);
  for (const std::string& arg : args) {
    const size_t eq = arg.find('=');
    if (eq == std::string::npos)
      throw invalid_input("--gamma expects i=value, got '" + arg + "'");
    const int i = std::stoi(arg.substr(0, eq));
    const double v = std::stod(arg.substr(eq + 1));
    if (i < 1 || i > 12) throw invalid_input("--gamma index must be in 1..12");
    gamma[static_cast<size_t>(i - 1)] = v;
  }
  return gamma;
}

struct Session {
  ScenarioConfig config;
  ComparisonConstants consts;
  Index grid_nodes;
  std::ofstream file;
  std::ostream* out = &std::cout;
};

Session open_session(const CommonOptions& opt) {
  Session s;
  s.config = parse_scenario_file(opt.config_path);
  s.grid_nodes = opt.grid_n > 0 ? opt.grid_n : s.config.grid_nodes;
  s.consts = make_constants(s.config.params, parse_gammas(opt.gamma_args),
                            opt.alpha_override, opt.beta_override);
  if (!opt.out_path.empty()) {
    s.file.open(opt.out_path);
    if (!s.file) throw invalid_input("cannot open output file '" + opt.out_path + "'");
    s.out = &s.file;
  }
  return s;
}

void echo_params(CsvWriter& csv, const Session& s, const CommonOptions& opt, double tol) {
  const ProblemParams& p = s.config.params;
  csv.comment("p", p.p);
  csv.comment("a", p.a);
  csv.comment("k", p.k);
  csv.comment("sigma", p.sigma);
  csv.comment("n", static_cast<double>(p.n));
  csv.comment("R0", p.R0);
  csv.comment("Rmax", p.Rmax);
  csv.comment("blowup_cap", p.blowup_cap);
  csv.comment("alpha", s.consts.alpha);
  csv.comment("beta", s.consts.beta);
  csv.comment("grid_n", static_cast<double>(s.grid_nodes));
  csv.comment("tol", tol);
  csv.comment("max_iter", static_cast<double>(opt.max_iter));
  csv.comment("f_kind", s.config.f.description());
  csv.comment("b_kind", s.config.b.description());
}

Trace solution_kernel(const Trace& m, const NonlinearityF& f, const ProblemParams& params,
                      const ComparisonConstants& consts) {
  Trace g(m.grid, source_samples(m, f, consts.beta), TraceLabel::u);
  return kernel(inner_integral(g, params), consts.alpha, params);
}

int run_solve(const CommonOptions& opt) {
  Session s = open_session(opt);
  const double tol = opt.tol > 0.0 ? opt.tol : 1e-10;
  auto grid = RadialGrid::uniform(s.config.params.R0, s.config.params.Rmax, s.grid_nodes,
                                  s.config.b);
  const double M0 = 1.0;
  PicardResult result = solve_comparison_function(s.config.f, s.config.params, s.consts, grid,
                                                  M0, PicardOptions{tol, opt.max_iter});
  const Trace K = solution_kernel(result.m, s.config.f, s.config.params, s.consts);

  CsvWriter csv(*s.out);
  csv.header({"r", "m", "kernel"});
  for (Index j = 0; j < grid->size(); ++j)
    csv.row({grid->node(j), result.m.values[j], K.values[j]});
  echo_params(csv, s, opt, tol);
  csv.comment("M0", M0);
  csv.comment("iterations", static_cast<double>(result.iterations));
  csv.comment("converged", result.converged ? "true" : "false");
  csv.comment("final_delta", result.final_delta);
  if (result.blowup) {
    csv.comment("blowup_node", static_cast<double>(result.blowup->first_offending_node));
    csv.comment("blowup_radius", result.blowup->radius_estimate);
  }
  if (result.blowup || result.converged) return kExitOk;
  return kExitNoConvergence;
}

int run_verify(const CommonOptions& opt) {
  Session s = open_session(opt);
  const double tol = opt.tol > 0.0 ? opt.tol : 1e-10;
  const ProblemParams& params = s.config.params;
  const double M0 = 1.0;

  struct Level {
    Index nodes;
    double flux_sup = 0.0;
    double pointwise_sup = 0.0;
    bool converged = false;
  };
  std::vector<Level> levels;
  const Index panels = s.grid_nodes - 1;
  for (Index div : {1, 2, 4}) {
    if (panels / div < 8) break;
    levels.push_back({panels / div + 1});
  }
  if (levels.empty()) throw invalid_input("verify needs a grid of at least 9 nodes");

  Trace fine_m;
  for (Level& level : levels) {
    auto grid = RadialGrid::uniform(params.R0, params.Rmax, level.nodes, s.config.b);
    PicardResult result = solve_comparison_function(s.config.f, params, s.consts, grid, M0,
                                                    PicardOptions{tol, opt.max_iter});
    level.converged = result.converged;
    const Trace flux = flux_residual(result.m, s.config.f, params, s.consts);
    level.flux_sup = flux.values.abs().maxCoeff();
    if (params.p == 2.0) {
      const Trace pw =
          pointwise_residual_p2(result.m, s.config.f, s.config.b, params, s.consts);
      level.pointwise_sup = pw.values.abs().maxCoeff();
    }
    if (&level == &levels.front()) fine_m = result.m;
  }

  const Trace rk4 = independent_integrate(s.config.f, s.config.b, params, s.consts, M0,
                                          fine_m.grid);
  const double integrator_diff = (rk4.values - fine_m.values).abs().maxCoeff();

  CsvWriter csv(*s.out);
  csv.header({"metric", "value"});
  csv.text_row({"flux_residual_sup", format_real(levels[0].flux_sup)});
  if (params.p == 2.0)
    csv.text_row({"pointwise_residual_sup", format_real(levels[0].pointwise_sup)});
  csv.text_row({"integrator_diff_sup", format_real(integrator_diff)});
  if (levels.size() >= 2 && levels[0].flux_sup > 0.0 && levels[1].flux_sup > 0.0)
    csv.text_row({"flux_residual_order",
                  format_real(std::log2(levels[1].flux_sup / levels[0].flux_sup))});
  if (params.p == 2.0 && levels.size() >= 2 && levels[0].pointwise_sup > 0.0 &&
      levels[1].pointwise_sup > 0.0)
    csv.text_row({"pointwise_residual_order",
                  format_real(std::log2(levels[1].pointwise_sup / levels[0].pointwise_sup))});
  echo_params(csv, s, opt, tol);
  csv.comment("M0", M0);

  for (const Level& level : levels)
    if (!level.converged) return kExitNoConvergence;
  return kExitOk;
}

int run_oracle(const CommonOptions& opt) {
  Session s = open_session(opt);
  const double tol = opt.tol > 0.0 ? opt.tol : 1e-9;
  if (opt.profiles.size() != 1)
    throw invalid_input("oracle requires exactly one --profile");
  const ProblemParams& params = s.config.params;

  auto grid = RadialGrid::uniform(params.R0, params.Rmax, s.grid_nodes, DriftB::zero());
  const Trace u = make_profile(opt.profiles[0], grid);
  const AdmissiblePair pair = admissible_pair_with_drift(u, params, s.config.b);
  const ComparisonReport report =
      verify_comparison(pair.M, pair.f, pair.b, params, s.consts, tol);
  const Trace K = solution_kernel(report.solve.m, pair.f, params, s.consts);

  CsvWriter csv(*s.out);
  csv.header({"r", "M", "m", "bound", "kernel", "margin_m", "margin_bound"});
  const double M0 = pair.M.values[0];
  for (Index j = 0; j < grid->size(); ++j) {
    const double M = pair.M.values[j];
    const double m = report.solve.m.values[j];
    const double bound = report.bound.values[j];
    csv.row({grid->node(j), M, m, bound, K.values[j], M - m, M - M0 - bound});
  }
  echo_params(csv, s, opt, tol);
  csv.comment("profile", opt.profiles[0]);
  csv.comment("M0", M0);
  csv.comment("iterations", static_cast<double>(report.solve.iterations));
  csv.comment("min_margin_m", report.min_margin_m);
  csv.comment("min_margin_bound", report.min_margin_bound);
  csv.comment("argmin_m", static_cast<double>(report.argmin_m));
  csv.comment("argmin_bound", static_cast<double>(report.argmin_bound));
  csv.comment("passed", report.passed ? "true" : "false");
  return report.passed ? kExitOk : kExitComparison;
}

std::vector<CalibrationScenario> build_scenarios(const Session& s, const CommonOptions& opt) {
  if (opt.profiles.empty())
    throw invalid_input("this subcommand requires at least one --profile");
  std::vector<CalibrationScenario> scenarios;
  for (const std::string& name : opt.profiles) {
    auto grid = RadialGrid::uniform(s.config.params.R0, s.config.params.Rmax, s.grid_nodes,
                                    DriftB::zero());
    const Trace u = make_profile(name, grid);
    AdmissiblePair pair = admissible_pair_with_drift(u, s.config.params, s.config.b);
    scenarios.push_back(CalibrationScenario{std::move(pair.M), std::move(pair.f),
                                            std::move(pair.b), s.consts});
  }
  return scenarios;
}

int run_bounds(const CommonOptions& opt) {
  Session s = open_session(opt);
  const std::vector<CalibrationScenario> scenarios = build_scenarios(s, opt);
  constexpr int kWindowsPerKind = 25;

  CsvWriter csv(*s.out);
  csv.header({"kind", "r0", "r1", "lhs", "rhs", "margin"});
  std::vector<std::string> empty_kinds;
  for (GrowthKind kind : all_growth_kinds) {
    const std::vector<WindowSample> samples =
        sample_windows(kind, scenarios, s.config.params, kWindowsPerKind, opt.seed);
    if (samples.empty()) empty_kinds.push_back(to_string(kind));
    for (const WindowSample& sample : samples)
      csv.text_row({to_string(sample.window.kind), format_real(sample.window.r0),
                    format_real(sample.window.r1), format_real(sample.lhs),
                    format_real(sample.rhs), format_real(sample.lhs - sample.rhs)});
  }
  echo_params(csv, s, opt, opt.tol > 0.0 ? opt.tol : 1e-9);
  csv.comment("seed", static_cast<double>(opt.seed));
  for (const std::string& kind : empty_kinds)
    csv.comment("no admissible windows for " + kind);
  return kExitOk;
}

int run_calibrate(const CommonOptions& opt) {
  Session s = open_session(opt);
  const std::vector<CalibrationScenario> scenarios = build_scenarios(s, opt);
  constexpr int kSamples = 200;

  CsvWriter csv(*s.out);
  csv.header({"kind", "gamma_hat", "samples"});
  for (GrowthKind kind : all_growth_kinds) {
    std::string value = "nan";
    int accepted = 0;
    try {
      const std::vector<WindowSample> samples =
          sample_windows(kind, scenarios, s.config.params, kSamples, opt.seed);
      accepted = static_cast<int>(samples.size());
      double gamma_hat = std::numeric_limits<double>::infinity();
      bool any = false;
      for (const WindowSample& sample : samples)
        if (sample.rhs_gamma1 > 0.0) {
          any = true;
          gamma_hat = std::min(gamma_hat, sample.lhs / sample.rhs_gamma1);
        }
      if (any) value = format_real(gamma_hat);
    } catch (const calibration_undefined&) {
      value = "nan";
    }
    csv.text_row({to_string(kind), value, std::to_string(accepted)});
  }
  echo_params(csv, s, opt, opt.tol > 0.0 ? opt.tol : 1e-9);
  csv.comment("seed", static_cast<double>(opt.seed));
  csv.comment("requested_samples", static_cast<double>(kSamples));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial comparison-function toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  CLI::App* solve = app.add_subcommand("solve", "run the fixed-point solve, emit r,m,kernel");
  CLI::App* verify = app.add_subcommand("verify", "residuals and cross-method agreement");
  CLI::App* oracle =
      app.add_subcommand("oracle", "manufactured-solution comparison check");
  CLI::App* bounds = app.add_subcommand("bounds", "per-window growth-estimate margins");
  CLI::App* calibrate = app.add_subcommand("calibrate", "empirical gamma constants per kind");
  for (CLI::App* cmd : {solve, verify, oracle, bounds, calibrate})
    add_common_flags(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (solve->parsed()) return run_solve(opt);
    if (verify->parsed()) return run_verify(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (bounds->parsed()) return run_bounds(opt);
    if (calibrate->parsed()) return run_calibrate(opt);
  } catch (const config_error& err) {
    if (err.line > 0)
      std::cerr << "config error (line " << err.line << "): " << err.what() << "\n";
    else
      std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const comparison_failure& err) {
    std::cerr << "comparison failure: " << err.what() << "\n";
    return kExitComparison;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
