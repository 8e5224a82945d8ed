#include "compdc/placement.hpp"

#include <map>
#include <set>

#include "compdc/errors.hpp"

namespace compdc {

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::MissingAssignment: return "missing-assignment";
    case Violation::Kind::UnknownWorkload: return "unknown-workload";
    case Violation::Kind::UnknownModule: return "unknown-module";
    case Violation::Kind::WrongKind: return "wrong-kind";
    case Violation::Kind::Capacity: return "capacity";
    case Violation::Kind::CoLocation: return "co-location";
  }
  return "?";
}

std::vector<Violation> placement_violations(const Topology& topology,
                                            const std::vector<Workload>& workloads,
                                            const Placement& placement) {
  std::vector<Violation> out;
  auto add = [&out](Violation::Kind kind, std::string msg) {
    out.push_back({kind, std::move(msg)});
  };

  std::set<int> workload_ids;
  for (const Workload& w : workloads) workload_ids.insert(w.id);
  for (const auto& [wid, pair] : placement) {
    (void)pair;
    if (workload_ids.find(wid) == workload_ids.end()) {
      add(Violation::Kind::UnknownWorkload,
          "placement assigns unknown workload " + std::to_string(wid));
    }
  }

  std::map<int, Deci> load;  // module id -> assigned demand, deci-units
  for (const Workload& w : workloads) {
    const auto it = placement.find(w.id);
    if (it == placement.end()) {
      add(Violation::Kind::MissingAssignment,
          "workload " + std::to_string(w.id) + " has no assignment");
      continue;
    }
    const ModulePair& pair = it->second;
    const ModuleInfo* cpu = nullptr;
    const ModuleInfo* mem = nullptr;
    try {
      cpu = &topology.module(pair.cpu_module);
    } catch (const std::out_of_range&) {
      add(Violation::Kind::UnknownModule,
          "workload " + std::to_string(w.id) + " references unknown CPU module " +
              std::to_string(pair.cpu_module));
    }
    try {
      mem = &topology.module(pair.mem_module);
    } catch (const std::out_of_range&) {
      add(Violation::Kind::UnknownModule,
          "workload " + std::to_string(w.id) + " references unknown memory module " +
              std::to_string(pair.mem_module));
    }
    if (cpu && cpu->spec.kind != ResourceKind::Cpu) {
      add(Violation::Kind::WrongKind, "module " + std::to_string(cpu->id) +
                                          " is not a CPU module");
      cpu = nullptr;
    }
    if (mem && mem->spec.kind != ResourceKind::Mem) {
      add(Violation::Kind::WrongKind, "module " + std::to_string(mem->id) +
                                          " is not a memory module");
      mem = nullptr;
    }
    if (cpu) load[cpu->id] += w.cpu_demand;
    if (mem) load[mem->id] += w.mem_demand;
    if (cpu && mem && topology.kind == ArchitectureKind::Traditional &&
        (!cpu->board_id || !mem->board_id || *cpu->board_id != *mem->board_id)) {
      add(Violation::Kind::CoLocation,
          "workload " + std::to_string(w.id) +
              " must use a CPU and memory module of the same server");
    }
  }

  for (const auto& [module_id, demand] : load) {
    const Deci cap = topology.module(module_id).spec.capacity;
    if (demand > cap) {
      add(Violation::Kind::Capacity,
          "module " + std::to_string(module_id) + " overloaded: assigned " +
              std::to_string(demand) + " deci-units, capacity " + std::to_string(cap) +
              ", excess " + std::to_string(demand - cap));
    }
  }
  return out;
}

}  // namespace compdc
