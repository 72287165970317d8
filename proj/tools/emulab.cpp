// emulab command line: scenario files in, equilibrium reports and CSV out.
//
//   emulab solve     <scenario> [--regime R] [--u X] [--ua Y]
//   emulab compare   <scenario> [--out FILE]
//   emulab simulate  <scenario> [--regimes R,..] [--n N] [--seed S]
//                               [--workers W] [--oracle] [--out FILE]
//   emulab sweep     <scenario> --axis A --values V,.. [--regimes R,..] ...
//   emulab threshold <scenario> [--out FILE]
//
// Exit codes: 0 success, 1 input error, 2 no equilibrium, 3 oracle
// disagreement.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <emulab/csv.hpp>
#include <emulab/mc_engine.hpp>
#include <emulab/scenario.hpp>

namespace {

using namespace emulab;

struct RunFlags {
  std::string scenario_path;
  std::string out_path;
  std::vector<std::string> regime_labels;
  std::optional<std::uint64_t> n_draws;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  bool oracle = false;
};

SimulateOptions make_options(const Scenario& scenario, const RunFlags& flags) {
  SimulateOptions options;
  options.n_draws = flags.n_draws.value_or(scenario.n_draws);
  options.seed = flags.seed.value_or(scenario.seed);
  options.workers = flags.workers;
  options.oracle = flags.oracle;
  return options;
}

std::vector<Regime> make_regimes(const std::vector<std::string>& labels) {
  std::vector<Regime> regimes;
  regimes.reserve(labels.size());
  for (const std::string& label : labels) regimes.push_back(parse_regime(label));
  return regimes;
}

// Writes to the --out file when given, otherwise to stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw std::runtime_error("cannot open output file " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

int run_solve(const RunFlags& flags, const std::string& regime_label_in,
              Scalar u, Scalar ua) {
  const Scenario scenario = parse_scenario_file(flags.scenario_path);
  const Regime regime = parse_regime(regime_label_in);
  const UnionShock shock{u, ua};
  const UnionOutcome out = regime_outcome(scenario.model, regime, shock);

  const auto regime_lambda = [&] {
    switch (regime) {
      case Regime::Nash:
        return scenario.model.rule.lambda;
      case Regime::Autonomy:
      case Regime::Sanctioned:
        return Scalar(0);
      case Regime::StrictRule:
        return Scalar(1);
      case Regime::Cooperative:
        return Scalar(0.5);
    }
    return Scalar(0);
  };

  std::cout << "scenario: " << flags.scenario_path << " (digest "
            << scenario.digest << ")\n";
  std::cout << "regime:   " << regime_label(regime)
            << " (lambda = " << format_number(regime_lambda()) << ")\n";
  std::cout << "shock:    u = " << format_number(shock.u_common)
            << ", u_a = " << format_number(shock.u_asym) << "\n";

  if (out.status == EquilibriumStatus::NoEquilibrium) {
    std::cout << "status:   no Nash equilibrium\n";
    if (std::isfinite(out.desired_G_sum)) {
      std::cout << "witness:  desired G1+G2 = " << format_number(out.desired_G_sum)
                << ", feasible G1+G2 = " << format_number(out.feasible_G_sum)
                << "\n";
    } else {
      std::cout << "witness:  unbounded incentive (linear penalty with no "
                   "own output effect)\n";
    }
    return 2;
  }

  std::cout << "status:   "
            << (out.status == EquilibriumStatus::Unique ? "unique"
                                                        : "continuum")
            << "\n";
  std::cout << "m = " << format_number(out.m) << "\n";
  const auto row = [](const char* name, Scalar a, Scalar b) {
    char line[96];
    std::snprintf(line, sizeof(line), "%-5s %16s %16s\n", name,
                  format_number(a).c_str(), format_number(b).c_str());
    std::cout << line;
  };
  {
    char header[96];
    std::snprintf(header, sizeof(header), "%-5s %16s %16s\n", "",
                  "country_1", "country_2");
    std::cout << header;
  }
  // The anticipated local mix M_e,i equals the anticipated contribution
  // G_e,i: the common-shock part of m has mean zero.
  row("M_e", out.Ge1, out.Ge2);
  row("g", out.profile.g1, out.profile.g2);
  row("G", out.G1, out.G2);
  row("y", out.y1, out.y2);
  row("p", out.p1, out.p2);
  row("loss", out.loss1, out.loss2);
  return 0;
}

int run_compare(const RunFlags& flags) {
  const Scenario scenario = parse_scenario_file(flags.scenario_path);
  const UnionScenario& model = scenario.model;
  const RegimeComparison cmp = regime_comparison(
      model.loss, model.c, model.shocks.sigma_u, model.shocks.sigma_a);

  OutputTarget target(flags.out_path);
  std::ostream& os = target.stream();
  const std::string threshold = format_number(cmp.sigma_a_threshold);
  os << "regime,expected_loss,sigma_a_threshold\n";
  os << "autonomy," << format_number(cmp.loss_autonomy) << "," << threshold
     << "\n";
  os << "strict," << format_number(cmp.loss_strict_rule) << "," << threshold
     << "\n";
  os << "sanctioned," << format_number(cmp.loss_sanctioned) << "," << threshold
     << "\n";
  os << "cooperative," << format_number(cmp.loss_cooperative) << ","
     << threshold << "\n";
  os << "first_best," << format_number(cmp.loss_first_best) << "," << threshold
     << "\n";
  if (target.to_file()) {
    std::cout << "sigma_a_star = " << threshold
              << (cmp.threshold_degenerate ? " (degenerate: k_target = 0)"
                                           : "")
              << "\n";
  }
  return 0;
}

int run_simulate(const RunFlags& flags) {
  const Scenario scenario = parse_scenario_file(flags.scenario_path);
  const SimulateOptions options = make_options(scenario, flags);
  const std::vector<Regime> regimes = make_regimes(flags.regime_labels);

  OutputTarget target(flags.out_path);
  std::ostream& os = target.stream();
  os << "regime,n_draws,seed,mean_loss_1,mean_loss_2,se_1,se_2,mean_abs_y,"
        "mean_p\n";
  for (const Regime regime : regimes) {
    const SimulationReport r = simulate(scenario.model, regime, options);
    os << r.regime << "," << format_count(r.n_draws) << ","
       << format_count(r.seed) << "," << format_number(r.mean_loss_1) << ","
       << format_number(r.mean_loss_2) << "," << format_number(r.se_1) << ","
       << format_number(r.se_2) << "," << format_number(r.mean_abs_y) << ","
       << format_number(r.mean_p) << "\n";
  }
  return 0;
}

int run_sweep(const RunFlags& flags, const std::string& axis,
              const std::vector<Scalar>& values) {
  const Scenario scenario = parse_scenario_file(flags.scenario_path);
  const SimulateOptions options = make_options(scenario, flags);
  const std::vector<Regime> regimes = make_regimes(flags.regime_labels);

  const std::vector<SweepRow> rows =
      sweep(scenario.model, axis, values, regimes, options);

  OutputTarget target(flags.out_path);
  std::ostream& os = target.stream();
  os << "axis,value,regime,mean_loss,se\n";
  for (const SweepRow& row : rows) {
    os << row.axis << "," << format_number(row.value) << "," << row.regime
       << "," << format_number(row.mean_loss) << "," << format_number(row.se)
       << "\n";
  }
  return 0;
}

int run_threshold(const RunFlags& flags) {
  const Scenario scenario = parse_scenario_file(flags.scenario_path);
  const ThresholdResult result =
      autonomy_vs_rule_threshold(scenario.model.loss, scenario.model.c);
  char line[64];
  std::snprintf(line, sizeof(line), "%.6f\n", result.sigma_a_star);
  std::cout << line;
  if (!flags.out_path.empty()) {
    OutputTarget target(flags.out_path);
    target.stream() << "sigma_a_star,degenerate\n"
                    << format_number(result.sigma_a_star) << ","
                    << (result.degenerate ? "true" : "false") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emulab: solver and simulator for the monetary-union policy game"};
  app.require_subcommand(1);

  RunFlags flags;
  std::string solve_regime = "nash";
  Scalar solve_u = 0, solve_ua = 0;
  std::string axis;
  std::vector<Scalar> values;

  const auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("scenario", flags.scenario_path, "scenario file")
        ->required();
  };
  const auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", flags.n_draws, "number of draws (default: run.n_draws)");
    cmd->add_option("--seed", flags.seed, "RNG seed (default: run.seed)")
        ->envname("EMULAB_SEED");
    cmd->add_option("--workers", flags.workers,
                    "worker threads (0 = hardware)");
    cmd->add_flag("--oracle", flags.oracle,
                  "re-derive each draw numerically and cross-check");
    cmd->add_option("--out", flags.out_path, "write CSV here instead of stdout");
  };

  CLI::App* solve = app.add_subcommand("solve", "print one equilibrium");
  add_scenario(solve);
  solve->add_option("--regime", solve_regime,
                    "nash|autonomy|strict|sanctioned|cooperative");
  solve->add_option("--u", solve_u, "realized common shock");
  solve->add_option("--ua", solve_ua, "realized asymmetric shock");

  CLI::App* compare = app.add_subcommand("compare", "analytic regime table");
  add_scenario(compare);
  compare->add_option("--out", flags.out_path, "write CSV here");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo regime losses");
  add_scenario(simulate_cmd);
  simulate_cmd
      ->add_option("--regimes", flags.regime_labels,
                   "comma-separated regime list")
      ->delimiter(',');
  add_run_flags(simulate_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  add_scenario(sweep_cmd);
  sweep_cmd->add_option("--axis", axis, "sigma_a|lambda|k_target|w_y|c|t")
      ->required();
  sweep_cmd->add_option("--values", values, "comma-separated axis values")
      ->required()
      ->delimiter(',');
  sweep_cmd
      ->add_option("--regimes", flags.regime_labels,
                   "comma-separated regime list")
      ->delimiter(',');
  add_run_flags(sweep_cmd);

  CLI::App* threshold = app.add_subcommand("threshold",
                                           "autonomy-vs-rule shock threshold");
  add_scenario(threshold);
  threshold->add_option("--out", flags.out_path, "write CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (flags.regime_labels.empty()) flags.regime_labels = {"nash"};

  try {
    if (app.got_subcommand(solve)) {
      return run_solve(flags, solve_regime, solve_u, solve_ua);
    }
    if (app.got_subcommand(compare)) return run_compare(flags);
    if (app.got_subcommand(simulate_cmd)) return run_simulate(flags);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(flags, axis, values);
    if (app.got_subcommand(threshold)) return run_threshold(flags);
  } catch (const NoEquilibriumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleDisagreement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
