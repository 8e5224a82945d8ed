#pragma once

#include <cstdint>
#include <string>

#include "compdc/domain.hpp"
#include "compdc/fabric.hpp"
#include "compdc/optimizer.hpp"
#include "compdc/wlgen.hpp"

namespace compdc {

enum class SolverChoice { Exact, Greedy };

const char* to_string(SolverChoice choice);
SolverChoice solver_from_string(const std::string& name);

struct RackCounts {
  int traditional = 1;
  int rackscale = 2;
  int podscale = 2;

  int for_architecture(ArchitectureKind kind) const;
};

/// Experiment configuration. Defaults reproduce the reference experiment:
/// Table 1 specs, Table 2 demand profile, 20 workloads on 20+20 modules.
struct Config {
  int schema_version = 1;
  std::uint64_t seed = 4;
  int n_workloads = 20;
  int n_cpu = 20;
  int n_mem = 20;
  std::string architecture = "all";  // traditional | rackscale | podscale | all
  RackCounts racks;
  ResourceSpec cpu_spec{ResourceKind::Cpu, 36, 130.0, 0.3};
  ResourceSpec mem_spec{ResourceKind::Mem, 240, 40.0, 0.3};
  EpbTable epb = EpbTable::defaults();
  TierPolicy policy = TierPolicy::TopTier;
  SolverChoice solver = SolverChoice::Exact;
  SolveLimits limits;
  WorkloadProfile profile = WorkloadProfile::defaults();
  std::string format = "json";  // json | csv
  std::string out = "-";        // "-" = stdout (json only)

  Topology build(ArchitectureKind kind) const;
};

/// Parses a config JSON document on top of the defaults. Unknown keys and
/// malformed values throw std::invalid_argument.
Config config_from_json_text(const std::string& text);
Config load_config_file(const std::string& path);

}  // namespace compdc
