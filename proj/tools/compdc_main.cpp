#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "compdc/config.hpp"
#include "compdc/errors.hpp"
#include "compdc/experiment.hpp"
#include "compdc/version.hpp"
#include "compdc/wlgen.hpp"

namespace {

// Exit statuses: 0 success, 2 invalid configuration, 3 infeasible instance,
// 4 budget exhausted without proof of optimality.
constexpr int kOk = 0;
constexpr int kBadConfig = 2;
constexpr int kInfeasible = 3;
constexpr int kBudget = 4;

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workloads;
  std::optional<std::string> arch;
  std::optional<std::string> policy;
  std::optional<std::string> solver;
  std::optional<std::uint64_t> node_budget;
  std::optional<double> time_budget;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "Config JSON document")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--seed", ov.seed, "Workload generator seed")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--workloads", ov.workloads, "Number of workloads")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--arch", ov.arch, "Architecture: traditional|rackscale|podscale|all")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--policy", ov.policy, "Tier attribution policy: toptier|fullpath")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--solver", ov.solver, "Solver: exact|greedy")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--node-budget", ov.node_budget, "Exact solver node budget")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--time-budget", ov.time_budget, "Exact solver time budget (seconds)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--format", ov.format, "Report format: json|csv")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--out", ov.out, "Output path ('-' = stdout; csv: directory)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

// Precedence: built-in defaults < config file < flags.
compdc::Config resolve_config(const Overrides& ov) {
  compdc::Config cfg;
  if (ov.config_path) cfg = compdc::load_config_file(*ov.config_path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.workloads) cfg.n_workloads = *ov.workloads;
  if (ov.arch) {
    if (*ov.arch != "all") compdc::architecture_from_string(*ov.arch);
    cfg.architecture = *ov.arch;
  }
  if (ov.policy) cfg.policy = compdc::policy_from_string(*ov.policy);
  if (ov.solver) cfg.solver = compdc::solver_from_string(*ov.solver);
  if (ov.node_budget) cfg.limits.node_budget = *ov.node_budget;
  if (ov.time_budget) cfg.limits.time_budget_s = *ov.time_budget;
  if (ov.format) {
    if (*ov.format != "json" && *ov.format != "csv") {
      throw std::invalid_argument("format must be json or csv");
    }
    cfg.format = *ov.format;
  }
  if (ov.out) cfg.out = *ov.out;
  if (cfg.n_workloads < 0) throw std::invalid_argument("workloads must be >= 0");
  return cfg;
}

void write_text(const std::string& text, const std::string& destination) {
  if (destination == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to " + destination);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + destination);
}

compdc::ArchitectureKind single_arch(const compdc::Config& cfg) {
  if (cfg.architecture == "all") {
    throw std::invalid_argument(
        "this subcommand needs a single architecture; pass --arch "
        "traditional|rackscale|podscale");
  }
  return compdc::architecture_from_string(cfg.architecture);
}

int run_gen(const compdc::Config& cfg) {
  const auto workloads =
      compdc::generate_workloads(cfg.seed, cfg.n_workloads, cfg.profile);
  write_text(compdc::workloads_to_json(workloads, cfg.seed), cfg.out);
  return kOk;
}

int run_solve(const compdc::Config& cfg) {
  const compdc::ArchitectureKind kind = single_arch(cfg);
  const auto workloads =
      compdc::generate_workloads(cfg.seed, cfg.n_workloads, cfg.profile);
  compdc::MilpInstance instance(cfg.build(kind), workloads, cfg.policy);
  const compdc::SolveResult result = cfg.solver == compdc::SolverChoice::Exact
                                         ? compdc::solve_exact(instance, cfg.limits)
                                         : compdc::solve_greedy(instance);
  if (result.status == compdc::SolveStatus::Infeasible) {
    std::cerr << "instance is infeasible\n";
    return kInfeasible;
  }
  if (result.status == compdc::SolveStatus::Unknown) {
    std::cerr << "budget exhausted before any feasible placement was found\n";
    return kBudget;
  }
  const compdc::PowerReport report =
      compdc::power_report(instance.topology, workloads, result.placement, cfg.policy);
  write_text(compdc::power_report_to_json(report, kind, result), cfg.out);
  // Budget exhaustion only applies to the exact solver; a greedy result is
  // never proven optimal but is still a success.
  if (cfg.solver == compdc::SolverChoice::Greedy) return kOk;
  return result.status == compdc::SolveStatus::Optimal ? kOk : kBudget;
}

int run_compare(const compdc::Config& cfg) {
  const compdc::ComparisonReport report = compdc::run_comparison(cfg);
  compdc::write_report(report,
                       cfg.format == "csv" ? compdc::ReportFormat::Csv
                                           : compdc::ReportFormat::Json,
                       cfg.out);
  for (const compdc::ArchOutcome* outcome :
       {&report.traditional, &report.rackscale, &report.podscale}) {
    if (outcome->status == compdc::SolveStatus::Infeasible) return kInfeasible;
  }
  for (const compdc::ArchOutcome* outcome :
       {&report.traditional, &report.rackscale, &report.podscale}) {
    if (!outcome->proven_optimal && cfg.solver == compdc::SolverChoice::Exact) {
      return kBudget;
    }
  }
  return kOk;
}

int run_export_lp(const compdc::Config& cfg) {
  const compdc::ArchitectureKind kind = single_arch(cfg);
  const auto workloads =
      compdc::generate_workloads(cfg.seed, cfg.n_workloads, cfg.profile);
  compdc::MilpInstance instance(cfg.build(kind), workloads, cfg.policy);
  write_text(compdc::export_lp(instance), cfg.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composable datacentre placement and power model"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expanded help for every subcommand");

  Overrides ov;
  CLI::App* gen = app.add_subcommand("gen", "Emit the generated workload set as JSON");
  CLI::App* solve =
      app.add_subcommand("solve", "Solve one architecture and print its power report");
  CLI::App* compare =
      app.add_subcommand("compare", "Run the three-architecture comparison report");
  CLI::App* export_lp =
      app.add_subcommand("export-lp", "Write the MILP in CPLEX LP format");
  CLI::App* version = app.add_subcommand("version", "Print the tool version");
  for (CLI::App* cmd : {gen, solve, compare, export_lp}) add_common_options(cmd, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage/error text on stderr
    return kBadConfig;
  }

  try {
    if (version->parsed()) {
      std::cout << compdc::kToolName << " " << compdc::kVersion << "\n";
      return kOk;
    }
    const compdc::Config cfg = resolve_config(ov);
    if (gen->parsed()) return run_gen(cfg);
    if (solve->parsed()) return run_solve(cfg);
    if (compare->parsed()) return run_compare(cfg);
    if (export_lp->parsed()) return run_export_lp(cfg);
    return kBadConfig;
  } catch (const compdc::GreedyDeadEnd& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const compdc::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  }
}
