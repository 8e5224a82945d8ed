#include "compdc/experiment.hpp"

#include <stdexcept>

#include "compdc/errors.hpp"
#include "compdc/version.hpp"
#include "compdc/wlgen.hpp"

namespace compdc {

const ArchOutcome& ComparisonReport::outcome(ArchitectureKind kind) const {
  switch (kind) {
    case ArchitectureKind::Traditional: return traditional;
    case ArchitectureKind::RackScale: return rackscale;
    case ArchitectureKind::PodScale: return podscale;
  }
  return traditional;
}

double percent_delta(double a, double b) {
  if (!(b > 0.0)) {
    throw std::domain_error("percent_delta baseline must be > 0, got " +
                            std::to_string(b));
  }
  return 100.0 * (a - b) / b;
}

namespace {

ArchOutcome solve_architecture(const Config& config, ArchitectureKind kind,
                               const std::vector<Workload>& workloads) {
  ArchOutcome outcome;
  outcome.kind = kind;
  try {
    MilpInstance instance(config.build(kind), workloads, config.policy);
    const SolveResult result = config.solver == SolverChoice::Exact
                                   ? solve_exact(instance, config.limits)
                                   : solve_greedy(instance);
    outcome.status = result.status;
    outcome.nodes_explored = result.nodes_explored;
    outcome.proven_optimal = result.proven_optimal;
    if (result.status == SolveStatus::Optimal || result.status == SolveStatus::Feasible) {
      outcome.feasible = true;
      outcome.objective_w = result.objective_w;
      outcome.placement = result.placement;
      outcome.power = power_report(instance.topology, workloads, result.placement,
                                   config.policy);
    }
  } catch (const InfeasibleError&) {
    outcome.feasible = false;
    outcome.status = SolveStatus::Infeasible;
  }
  return outcome;
}

}  // namespace

ComparisonReport run_comparison(const Config& config) {
  ComparisonReport report;
  report.schema_version = 1;
  report.tool_version = kVersion;
  report.config = config;
  // One workload set shared by all three architectures.
  report.workloads = generate_workloads(config.seed, config.n_workloads, config.profile);

  report.traditional =
      solve_architecture(config, ArchitectureKind::Traditional, report.workloads);
  report.rackscale =
      solve_architecture(config, ArchitectureKind::RackScale, report.workloads);
  report.podscale =
      solve_architecture(config, ArchitectureKind::PodScale, report.workloads);

  const ArchOutcome& trad = report.traditional;
  const ArchOutcome& rack = report.rackscale;
  const ArchOutcome& pod = report.podscale;
  if (trad.feasible && rack.feasible && trad.power.tmpc_w > 0.0) {
    report.deltas.tmpc_savings_vs_traditional_pct =
        -percent_delta(rack.power.tmpc_w, trad.power.tmpc_w);
  }
  if (pod.feasible && rack.feasible && rack.power.tnpc_w > 0.0) {
    report.deltas.tnpc_pod_vs_rack_pct =
        percent_delta(pod.power.tnpc_w, rack.power.tnpc_w);
  }
  if (rack.feasible && trad.feasible && trad.power.tnpc_w > 0.0) {
    report.deltas.tnpc_rack_vs_traditional_pct =
        percent_delta(rack.power.tnpc_w, trad.power.tnpc_w);
  }
  return report;
}

}  // namespace compdc
