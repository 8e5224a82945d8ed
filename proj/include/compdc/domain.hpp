#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace compdc {

/// Capacities and demands are fixed-point deci-units (0.1 GHz for CPU,
/// 0.1 GB for memory) so feasibility checks are exact integer comparisons.
using Deci = std::int64_t;

enum class ResourceKind { Cpu, Mem };

enum class ArchitectureKind { Traditional, RackScale, PodScale };

/// Network fabric tiers, ordered innermost to outermost. The "top tier" of a
/// route is the maximum under this ordering.
enum class Tier : int { OnBoard = 0, RackBackplane = 1, InterRack = 2, InterDC = 3 };

inline constexpr int kTierCount = 4;
inline constexpr std::array<Tier, kTierCount> kAllTiers = {
    Tier::OnBoard, Tier::RackBackplane, Tier::InterRack, Tier::InterDC};

/// The six per-workload flows. CpuMem* flows run between the workload's CPU
/// and memory modules; *Io* flows run between a module and the internet
/// gateway at the fabric edge.
enum class FlowKind : int {
  CpuMemUp = 0,
  CpuMemDown = 1,
  CpuIoUp = 2,
  CpuIoDown = 3,
  MemIoUp = 4,
  MemIoDown = 5,
};

inline constexpr int kFlowCount = 6;
inline constexpr std::array<FlowKind, kFlowCount> kAllFlows = {
    FlowKind::CpuMemUp, FlowKind::CpuMemDown, FlowKind::CpuIoUp,
    FlowKind::CpuIoDown, FlowKind::MemIoUp,   FlowKind::MemIoDown};

const char* to_string(ResourceKind kind);
const char* to_string(ArchitectureKind kind);
const char* to_string(Tier tier);
const char* to_string(FlowKind kind);
ArchitectureKind architecture_from_string(const std::string& name);
Tier tier_from_string(const std::string& name);

/// Energy per bit of each fabric tier in pJ/bit.
struct EpbTable {
  std::array<double, kTierCount> pj_per_bit{};

  double at(Tier t) const { return pj_per_bit[static_cast<int>(t)]; }
  double& at(Tier t) { return pj_per_bit[static_cast<int>(t)]; }

  /// Table 1 defaults: on-board 1, rack backplane 25, inter-rack 35,
  /// inter-DC 500 pJ/bit.
  static EpbTable defaults();
  void validate() const;  // throws std::invalid_argument
};

struct ResourceSpec {
  ResourceKind kind = ResourceKind::Cpu;
  Deci capacity = 0;            // deci-GHz or deci-GB
  double peak_power_w = 0.0;
  double dynamic_range = 0.0;   // fraction of peak that scales with load

  void validate() const;  // throws std::invalid_argument
};

struct Workload {
  int id = 0;
  Deci cpu_demand = 0;  // deci-GHz
  Deci mem_demand = 0;  // deci-GB
  std::array<double, kFlowCount> flows{};  // Gbps, indexed by FlowKind

  double flow(FlowKind kind) const { return flows[static_cast<int>(kind)]; }
  double& flow(FlowKind kind) { return flows[static_cast<int>(kind)]; }

  void validate() const;  // demand positivity and flow non-negativity
};

struct ModuleInfo {
  int id = 0;
  ResourceSpec spec;
  int rack_id = 0;
  std::optional<int> board_id;  // present only in Traditional topologies
};

struct Location {
  int module_id = 0;
  int rack_id = 0;
  std::optional<int> board_id;
};

struct Topology {
  ArchitectureKind kind = ArchitectureKind::Traditional;
  std::vector<ModuleInfo> modules;  // CPU modules first, then memory modules
  std::vector<int> racks;
  EpbTable epb;

  /// Lookup by module id; throws std::out_of_range for unknown ids.
  const ModuleInfo& module(int module_id) const;
  std::vector<int> module_ids(ResourceKind kind) const;
  int count(ResourceKind kind) const;
};

/// Builds one of the three composable architectures.
///
/// Layout rule: Traditional pairs CPU i with memory i on board i, boards
/// round-robin over racks. RackScale spreads each kind over racks by
/// index mod racks. PodScale puts all CPUs in CPU-only racks and all
/// memories in memory-only racks, split evenly among racks of that kind
/// (CPU racks come first and take the extra rack when the count is odd).
Topology build_topology(ArchitectureKind kind, int n_cpu, int n_mem, int racks,
                        const ResourceSpec& cpu_spec, const ResourceSpec& mem_spec,
                        const EpbTable& epb);

Location locate(const Topology& topology, int module_id);

/// Checks every structural invariant; returns one message per violation.
std::vector<std::string> validate_topology(const Topology& topology);

}  // namespace compdc
