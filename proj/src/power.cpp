#include "compdc/power.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "compdc/errors.hpp"

namespace compdc {

double resource_power(const ResourceSpec& spec, double utilization) {
  if (!(utilization >= 0.0 && utilization <= 1.0)) {
    throw std::domain_error("utilization must be in [0,1], got " +
                            std::to_string(utilization));
  }
  return (1.0 - spec.dynamic_range) * spec.peak_power_w +
         spec.dynamic_range * spec.peak_power_w * utilization;
}

namespace {

// Demand assigned to each module, exact deci-units.
std::map<int, Deci> module_loads(const std::vector<Workload>& workloads,
                                 const Placement& placement) {
  std::map<int, Deci> load;
  for (const Workload& w : workloads) {
    const auto it = placement.find(w.id);
    if (it == placement.end()) continue;
    load[it->second.cpu_module] += w.cpu_demand;
    load[it->second.mem_module] += w.mem_demand;
  }
  return load;
}

}  // namespace

double utilization_of(const Topology& topology, const std::vector<Workload>& workloads,
                      const Placement& placement, int module_id) {
  const ModuleInfo& module = topology.module(module_id);
  Deci assigned = 0;
  for (const Workload& w : workloads) {
    const auto it = placement.find(w.id);
    if (it == placement.end()) continue;
    if (it->second.cpu_module == module_id && module.spec.kind == ResourceKind::Cpu) {
      assigned += w.cpu_demand;
    }
    if (it->second.mem_module == module_id && module.spec.kind == ResourceKind::Mem) {
      assigned += w.mem_demand;
    }
  }
  if (assigned > module.spec.capacity) {
    throw InfeasibleError("module " + std::to_string(module_id) +
                          " overloaded: excess " +
                          std::to_string(assigned - module.spec.capacity) +
                          " deci-units");
  }
  return static_cast<double>(assigned) / static_cast<double>(module.spec.capacity);
}

PowerReport power_report(const Topology& topology, const std::vector<Workload>& workloads,
                         const Placement& placement, TierPolicy policy) {
  const std::vector<Violation> violations =
      placement_violations(topology, workloads, placement);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "infeasible placement:";
    for (const Violation& v : violations) {
      msg << " [" << to_string(v.kind) << "] " << v.message << ";";
    }
    throw InfeasibleError(msg.str());
  }

  const std::map<int, Deci> load = module_loads(workloads, placement);

  PowerReport report;
  double cpu_util_sum = 0.0, mem_util_sum = 0.0;
  for (const ModuleInfo& m : topology.modules) {
    const auto it = load.find(m.id);
    if (it == load.end() || it->second == 0) continue;  // inactive: powered off
    const double util =
        static_cast<double>(it->second) / static_cast<double>(m.spec.capacity);
    const double watts = resource_power(m.spec, util);
    if (m.spec.kind == ResourceKind::Cpu) {
      report.tcpc_w += watts;
      report.active_cpus += 1;
      cpu_util_sum += util;
    } else {
      report.tmpc_w += watts;
      report.active_mems += 1;
      mem_util_sum += util;
    }
  }
  if (report.active_cpus > 0) report.avg_active_cpu_util = cpu_util_sum / report.active_cpus;
  if (report.active_mems > 0) report.avg_active_mem_util = mem_util_sum / report.active_mems;

  const TrafficByTier traffic = traffic_by_tier(topology, workloads, placement, policy);
  const NetworkPower net = network_power_by_tier(traffic, topology.epb);
  for (Tier t : kAllTiers) {
    const int i = static_cast<int>(t);
    report.per_tier[i] = {traffic.gbps[i], net.power_w[i]};
    report.tnpc_w += net.power_w[i];
  }
  report.total_w = report.tcpc_w + report.tmpc_w + report.tnpc_w;
  return report;
}

}  // namespace compdc
