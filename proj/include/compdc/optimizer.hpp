#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "compdc/power.hpp"

namespace compdc {

/// The full placement problem: topology + workloads + attribution policy.
/// Construction validates workload invariants and that every demand
/// individually fits some module (otherwise the instance is infeasible by
/// construction and InfeasibleError is thrown).
struct MilpInstance {
  Topology topology;
  std::vector<Workload> workloads;
  TierPolicy policy = TierPolicy::TopTier;

  MilpInstance(Topology topology, std::vector<Workload> workloads, TierPolicy policy);
};

struct SolveLimits {
  std::uint64_t node_budget = 10'000'000;
  double time_budget_s = 300.0;
};

enum class SolveStatus {
  Optimal,     // search completed, incumbent is the proven optimum
  Feasible,    // budget exhausted, best incumbent returned
  Infeasible,  // search completed without any feasible placement
  Unknown,     // budget exhausted before any feasible placement was found
};

const char* to_string(SolveStatus status);

struct SolveResult {
  Placement placement;
  double objective_w = 0.0;  // recomputed through power_report, not solver internals
  bool proven_optimal = false;
  std::uint64_t nodes_explored = 0;
  double wall_time_s = 0.0;
  SolveStatus status = SolveStatus::Unknown;
};

/// All violations of `placement` against the instance (empty means feasible).
std::vector<Violation> check_feasible(const MilpInstance& instance,
                                      const Placement& placement);

/// power_report(...).total_w; throws InfeasibleError listing every violation
/// when the placement is not feasible.
double objective_value(const MilpInstance& instance, const Placement& placement);

/// Exact branch-and-bound over workload assignments.
///
/// Workloads are processed in canonical order (descending CPU demand, ties
/// by id); children are explored cheapest marginal cost first. The node
/// bound adds the placement-invariant load term, an idle-power bound from
/// remaining demand vs free capacity on active modules, and each unassigned
/// workload's cheapest feasible tier attribution. Within each (rack, kind)
/// group modules are interchangeable, so a previously unused module may only
/// be opened in index order.
SolveResult solve_exact(const MilpInstance& instance, const SolveLimits& limits = {});

/// First-fit-decreasing by CPU demand: the CPU goes to the module with the
/// smallest marginal power increase, then the memory likewise given that
/// CPU. Never proven optimal. Throws GreedyDeadEnd when no module fits.
SolveResult solve_greedy(const MilpInstance& instance);

/// Exhaustive enumeration pruned only by capacity. Guard rails: at most 8
/// workloads and 10 modules per kind (std::invalid_argument beyond them).
SolveResult brute_force_oracle(const MilpInstance& instance);

/// CPLEX LP text export of the formulation (binaries x_w_c, y_w_m, a_c,
/// b_m and linearized products z_w_c_m). UTF-8, LF line endings, lines
/// <= 255 characters, numerals with <= 9 significant digits.
std::string export_lp(const MilpInstance& instance);

}  // namespace compdc
