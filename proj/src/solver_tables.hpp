#pragma once

// Internal per-instance tables shared by the solvers and the LP exporter.

#include <limits>
#include <map>
#include <vector>

#include "compdc/fabric.hpp"

namespace compdc::detail {

/// Per-kind module arrays indexed by kind-local position (ascending module id).
struct KindArrays {
  std::vector<int> ids;
  std::vector<Deci> cap;
  std::vector<double> idle_w;
  std::vector<double> rate_w;  // dynamic watts per deci-unit of load
  std::vector<int> rack;
  std::vector<std::vector<int>> rack_groups;  // rack id -> kind-local indices
  double min_idle = std::numeric_limits<double>::infinity();
  Deci max_cap = 0;

  int size() const { return static_cast<int>(ids.size()); }
};

inline KindArrays make_kind_arrays(const Topology& topo, ResourceKind kind) {
  KindArrays k;
  int max_rack = 0;
  for (int r : topo.racks) max_rack = std::max(max_rack, r);
  k.rack_groups.resize(static_cast<std::size_t>(max_rack) + 1);
  for (const ModuleInfo& m : topo.modules) {
    if (m.spec.kind != kind) continue;
    const int idx = k.size();
    k.ids.push_back(m.id);
    k.cap.push_back(m.spec.capacity);
    k.idle_w.push_back((1.0 - m.spec.dynamic_range) * m.spec.peak_power_w);
    k.rate_w.push_back(m.spec.dynamic_range * m.spec.peak_power_w /
                       static_cast<double>(m.spec.capacity));
    k.rack.push_back(m.rack_id);
    k.rack_groups[m.rack_id].push_back(idx);
    k.min_idle = std::min(k.min_idle, k.idle_w.back());
    k.max_cap = std::max(k.max_cap, m.spec.capacity);
  }
  return k;
}

/// CpuMem pair costs and the architecture-constant Io path cost, both in
/// watts per Gbps of flow rate.
struct NetTables {
  std::vector<double> pair_cost;  // [ci * n_mem + mi]
  double min_pair_cost = std::numeric_limits<double>::infinity();
  double io_path_cost = 0.0;

  double pair(int ci, int mi, int n_mem) const { return pair_cost[ci * n_mem + mi]; }
};

inline NetTables make_net_tables(const Topology& topo, TierPolicy policy,
                                 const KindArrays& cpu, const KindArrays& mem) {
  NetTables t;
  t.pair_cost.resize(static_cast<std::size_t>(cpu.size()) * mem.size());
  for (int ci = 0; ci < cpu.size(); ++ci) {
    const Location src = locate(topo, cpu.ids[ci]);
    for (int mi = 0; mi < mem.size(); ++mi) {
      const Location dst = locate(topo, mem.ids[mi]);
      const double cost =
          tier_set(topo, policy, FlowKind::CpuMemUp, src, dst).epb_sum(topo.epb) * 1e-3;
      t.pair_cost[ci * mem.size() + mi] = cost;
      t.min_pair_cost = std::min(t.min_pair_cost, cost);
    }
  }
  // The Io tier multiset depends only on the architecture, not the module.
  t.io_path_cost = tier_set(topo, policy, FlowKind::CpuIoUp, locate(topo, cpu.ids[0]),
                            std::nullopt)
                       .epb_sum(topo.epb) *
                   1e-3;
  return t;
}

/// Traditional boards as (cpu index, mem index) pairs, ascending board id.
inline std::vector<std::pair<int, int>> make_boards(const Topology& topo,
                                                    const KindArrays& cpu,
                                                    const KindArrays& mem) {
  std::map<int, std::pair<int, int>> by_board;
  for (int ci = 0; ci < cpu.size(); ++ci) {
    by_board[*topo.module(cpu.ids[ci]).board_id].first = ci;
  }
  for (int mi = 0; mi < mem.size(); ++mi) {
    by_board[*topo.module(mem.ids[mi]).board_id].second = mi;
  }
  std::vector<std::pair<int, int>> boards;
  boards.reserve(by_board.size());
  for (const auto& [board, pair] : by_board) {
    (void)board;
    boards.push_back(pair);
  }
  return boards;
}

}  // namespace compdc::detail
