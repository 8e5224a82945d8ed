#include "compdc/fabric.hpp"

#include <stdexcept>

#include "compdc/errors.hpp"

namespace compdc {

const char* to_string(TierPolicy policy) {
  return policy == TierPolicy::TopTier ? "toptier" : "fullpath";
}

TierPolicy policy_from_string(const std::string& name) {
  if (name == "toptier") return TierPolicy::TopTier;
  if (name == "fullpath") return TierPolicy::FullPath;
  throw std::invalid_argument("unknown tier policy: " + name);
}

double TierSet::epb_sum(const EpbTable& epb) const {
  double sum = 0.0;
  for (Tier t : kAllTiers) sum += count(t) * epb.at(t);
  return sum;
}

namespace {

bool is_cpumem(FlowKind kind) {
  return kind == FlowKind::CpuMemUp || kind == FlowKind::CpuMemDown;
}

}  // namespace

TierSet tier_set(const Topology& topology, TierPolicy policy, FlowKind kind,
                 const Location& src, const std::optional<Location>& dst) {
  const bool traditional = topology.kind == ArchitectureKind::Traditional;
  TierSet tiers;

  if (is_cpumem(kind)) {
    if (!dst) {
      throw std::invalid_argument("CpuMem flows run between two modules, not the gateway");
    }
    const bool same_board =
        src.board_id && dst->board_id && *src.board_id == *dst->board_id;
    const bool same_rack = src.rack_id == dst->rack_id;
    if (same_board) {
      tiers.add(Tier::OnBoard);
    } else if (!traditional && same_rack) {
      tiers.add(Tier::RackBackplane);
    } else if (policy == TierPolicy::TopTier) {
      // A traditional server's NIC attaches directly to the inter-rack
      // fabric; there is no rack backplane tier in that architecture.
      tiers.add(Tier::InterRack);
    } else if (traditional) {
      tiers.add(Tier::OnBoard, 2);
      tiers.add(Tier::InterRack);
    } else {
      tiers.add(Tier::RackBackplane, 2);  // source and destination backplanes
      tiers.add(Tier::InterRack);
    }
    return tiers;
  }

  // Io flows: module <-> internet gateway at the fabric edge.
  if (dst) {
    throw std::invalid_argument("Io flows terminate at the gateway, not at a module");
  }
  if (policy == TierPolicy::TopTier) {
    tiers.add(Tier::InterDC);
  } else {
    tiers.add(traditional ? Tier::OnBoard : Tier::RackBackplane);
    tiers.add(Tier::InterRack);
    tiers.add(Tier::InterDC);
  }
  return tiers;
}

double TrafficByTier::total() const {
  double sum = 0.0;
  for (double g : gbps) sum += g;
  return sum;
}

TrafficByTier traffic_by_tier(const Topology& topology,
                              const std::vector<Workload>& workloads,
                              const Placement& placement, TierPolicy policy) {
  TrafficByTier traffic;
  for (const Workload& w : workloads) {
    const auto it = placement.find(w.id);
    if (it == placement.end()) {
      throw InfeasibleError("workload " + std::to_string(w.id) + " is unassigned");
    }
    const Location cpu = locate(topology, it->second.cpu_module);
    const Location mem = locate(topology, it->second.mem_module);
    for (FlowKind f : kAllFlows) {
      const double rate = w.flow(f);
      Location src = cpu;
      std::optional<Location> dst;
      switch (f) {
        case FlowKind::CpuMemUp:
        case FlowKind::CpuMemDown:
          dst = mem;
          break;
        case FlowKind::CpuIoUp:
        case FlowKind::CpuIoDown:
          break;
        case FlowKind::MemIoUp:
        case FlowKind::MemIoDown:
          src = mem;
          break;
      }
      const TierSet tiers = tier_set(topology, policy, f, src, dst);
      for (Tier t : kAllTiers) {
        if (tiers.count(t) > 0) {
          traffic.gbps[static_cast<int>(t)] += tiers.count(t) * rate;
        }
      }
    }
  }
  return traffic;
}

NetworkPower network_power_by_tier(const TrafficByTier& traffic, const EpbTable& epb) {
  NetworkPower power;
  for (Tier t : kAllTiers) {
    const int i = static_cast<int>(t);
    power.power_w[i] = traffic.gbps[i] * epb.at(t) * 1e-3;
    power.total_w += power.power_w[i];
  }
  return power;
}

}  // namespace compdc
