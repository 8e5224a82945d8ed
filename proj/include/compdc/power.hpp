#pragma once

#include "compdc/fabric.hpp"
#include "compdc/placement.hpp"

namespace compdc {

/// Idle + load-proportional power: (1-d)*peak + d*peak*u. Inactive modules
/// are fully powered off and contribute 0 W; activity is decided by the
/// caller, not here. Throws std::domain_error for u outside [0,1].
double resource_power(const ResourceSpec& spec, double utilization);

/// Assigned demand over capacity for one module, computed in exact
/// deci-units. Throws InfeasibleError naming the module and the excess if
/// the module is overloaded.
double utilization_of(const Topology& topology, const std::vector<Workload>& workloads,
                      const Placement& placement, int module_id);

struct TierUsage {
  double traffic_gbps = 0.0;
  double power_w = 0.0;
};

/// The Eq.-style objective decomposition: total = tcpc + tmpc + tnpc with
/// identical arithmetic (no re-rounding), tnpc the sum of per-tier power.
struct PowerReport {
  double tcpc_w = 0.0;
  double tmpc_w = 0.0;
  double tnpc_w = 0.0;
  double total_w = 0.0;
  std::array<TierUsage, kTierCount> per_tier{};
  int active_cpus = 0;
  int active_mems = 0;
  double avg_active_cpu_util = 0.0;  // averaged over active modules only
  double avg_active_mem_util = 0.0;

  const TierUsage& tier(Tier t) const { return per_tier[static_cast<int>(t)]; }
};

/// A module is active iff at least one workload demand is assigned to it.
/// Throws InfeasibleError if the placement is incomplete or overloads a
/// module.
PowerReport power_report(const Topology& topology, const std::vector<Workload>& workloads,
                         const Placement& placement, TierPolicy policy);

}  // namespace compdc
