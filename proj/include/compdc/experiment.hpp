#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compdc/config.hpp"
#include "compdc/optimizer.hpp"

namespace compdc {

struct ArchOutcome {
  ArchitectureKind kind = ArchitectureKind::Traditional;
  bool feasible = false;
  PowerReport power;
  SolveStatus status = SolveStatus::Unknown;
  double objective_w = 0.0;
  bool proven_optimal = false;
  std::uint64_t nodes_explored = 0;
  Placement placement;  // kept in memory, not serialized
};

struct ReportDeltas {
  std::optional<double> tmpc_savings_vs_traditional_pct;  // rack-scale vs traditional
  std::optional<double> tnpc_pod_vs_rack_pct;
  std::optional<double> tnpc_rack_vs_traditional_pct;
};

/// The three-architecture comparison on one shared workload set.
struct ComparisonReport {
  int schema_version = 1;
  std::string tool_version;
  Config config;
  std::vector<Workload> workloads;  // identical set used for all three solves
  ArchOutcome traditional;
  ArchOutcome rackscale;
  ArchOutcome podscale;
  ReportDeltas deltas;

  const ArchOutcome& outcome(ArchitectureKind kind) const;
};

/// 100 * (a - b) / b. Throws std::domain_error when b <= 0.
double percent_delta(double a, double b);

/// Generates one workload set from (seed, n, profile), builds the three
/// topologies, solves each with the configured solver and assembles the
/// report. An infeasible architecture is marked as such and the deltas that
/// involve it are omitted.
ComparisonReport run_comparison(const Config& config);

enum class ReportFormat { Json, Csv };

/// Versioned JSON document with stable key order; numbers rendered with six
/// decimal places. Byte-deterministic for identical reports.
std::string report_to_json(const ComparisonReport& report);
ComparisonReport report_from_json(const std::string& text);

/// summary.csv: architecture, tcpc_w, tmpc_w, tnpc_w, total_w, active_cpus, active_mems.
std::string summary_csv(const ComparisonReport& report);
/// tiers.csv: architecture, tier, traffic_gbps, power_w.
std::string tiers_csv(const ComparisonReport& report);

/// json: `destination` is a file path or "-" for stdout. csv: `destination`
/// is a directory that will receive summary.csv and tiers.csv.
void write_report(const ComparisonReport& report, ReportFormat format,
                  const std::string& destination);

/// PowerReport fragment of the JSON schema (used by the solve subcommand).
std::string power_report_to_json(const PowerReport& report, ArchitectureKind kind,
                                 const SolveResult& result);

/// Workload set document (used by the gen subcommand).
std::string workloads_to_json(const std::vector<Workload>& workloads,
                              std::uint64_t seed);

}  // namespace compdc
