#pragma once

#include <cstdint>
#include <optional>

#include "compdc/domain.hpp"
#include "compdc/placement.hpp"

namespace compdc {

/// How a flow's traffic is attributed to fabric tiers. TopTier charges the
/// single outermost tier a flow reaches; FullPath charges every tier on the
/// hierarchical route, with multiplicity.
enum class TierPolicy { TopTier, FullPath };

const char* to_string(TierPolicy policy);
TierPolicy policy_from_string(const std::string& name);

/// Multiset of tiers a flow is attributed to.
struct TierSet {
  std::array<std::uint8_t, kTierCount> counts{};

  void add(Tier t, int n = 1) { counts[static_cast<int>(t)] += static_cast<std::uint8_t>(n); }
  int count(Tier t) const { return counts[static_cast<int>(t)]; }
  /// Sum of epb over the multiset, in pJ/bit.
  double epb_sum(const EpbTable& epb) const;

  friend bool operator==(const TierSet&, const TierSet&) = default;
};

/// Tiers traversed by one flow. `dst` is std::nullopt for the internet
/// gateway (Io flows terminate at the fabric edge, not at a module).
/// CpuMem flows require a module destination and Io flows require the
/// gateway; anything else throws std::invalid_argument.
TierSet tier_set(const Topology& topology, TierPolicy policy, FlowKind kind,
                 const Location& src, const std::optional<Location>& dst);

struct TrafficByTier {
  std::array<double, kTierCount> gbps{};

  double at(Tier t) const { return gbps[static_cast<int>(t)]; }
  double total() const;
};

TrafficByTier traffic_by_tier(const Topology& topology,
                              const std::vector<Workload>& workloads,
                              const Placement& placement, TierPolicy policy);

struct NetworkPower {
  std::array<double, kTierCount> power_w{};
  double total_w = 0.0;

  double at(Tier t) const { return power_w[static_cast<int>(t)]; }
};

/// power[t] = traffic[t] Gbps * epb[t] pJ/bit * 1e-3 (Gbps x pJ/bit = mW).
NetworkPower network_power_by_tier(const TrafficByTier& traffic, const EpbTable& epb);

}  // namespace compdc
