#pragma once

#include <map>
#include <string>
#include <vector>

#include "compdc/domain.hpp"

namespace compdc {

struct ModulePair {
  int cpu_module = 0;
  int mem_module = 0;

  friend bool operator==(const ModulePair&, const ModulePair&) = default;
  friend auto operator<=>(const ModulePair&, const ModulePair&) = default;
};

/// Workload id -> (CPU module id, memory module id). Workloads are
/// monolithic: demands are never split across modules.
using Placement = std::map<int, ModulePair>;

struct Violation {
  enum class Kind {
    MissingAssignment,
    UnknownWorkload,
    UnknownModule,
    WrongKind,
    Capacity,
    CoLocation,
  };
  Kind kind;
  std::string message;
};

const char* to_string(Violation::Kind kind);

/// Collects every violation of a placement against a topology and workload
/// set: completeness, module existence and kind, per-module capacity sums
/// (exact deci-unit arithmetic) and Traditional co-location.
std::vector<Violation> placement_violations(const Topology& topology,
                                            const std::vector<Workload>& workloads,
                                            const Placement& placement);

}  // namespace compdc
