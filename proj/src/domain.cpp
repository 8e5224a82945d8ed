#include "compdc/domain.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace compdc {

const char* to_string(ResourceKind kind) {
  return kind == ResourceKind::Cpu ? "cpu" : "mem";
}

const char* to_string(ArchitectureKind kind) {
  switch (kind) {
    case ArchitectureKind::Traditional: return "traditional";
    case ArchitectureKind::RackScale: return "rackscale";
    case ArchitectureKind::PodScale: return "podscale";
  }
  return "?";
}

const char* to_string(Tier tier) {
  switch (tier) {
    case Tier::OnBoard: return "onboard";
    case Tier::RackBackplane: return "rack_backplane";
    case Tier::InterRack: return "inter_rack";
    case Tier::InterDC: return "inter_dc";
  }
  return "?";
}

const char* to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::CpuMemUp: return "cpu_mem_up";
    case FlowKind::CpuMemDown: return "cpu_mem_down";
    case FlowKind::CpuIoUp: return "cpu_io_up";
    case FlowKind::CpuIoDown: return "cpu_io_down";
    case FlowKind::MemIoUp: return "mem_io_up";
    case FlowKind::MemIoDown: return "mem_io_down";
  }
  return "?";
}

ArchitectureKind architecture_from_string(const std::string& name) {
  if (name == "traditional") return ArchitectureKind::Traditional;
  if (name == "rackscale") return ArchitectureKind::RackScale;
  if (name == "podscale") return ArchitectureKind::PodScale;
  throw std::invalid_argument("unknown architecture: " + name);
}

Tier tier_from_string(const std::string& name) {
  for (Tier t : kAllTiers) {
    if (name == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown tier: " + name);
}

EpbTable EpbTable::defaults() {
  EpbTable epb;
  epb.at(Tier::OnBoard) = 1.0;
  epb.at(Tier::RackBackplane) = 25.0;
  epb.at(Tier::InterRack) = 35.0;
  epb.at(Tier::InterDC) = 500.0;
  return epb;
}

void EpbTable::validate() const {
  for (Tier t : kAllTiers) {
    if (!(at(t) >= 0.0)) {
      throw std::invalid_argument(std::string("epb for tier ") + to_string(t) +
                                  " must be >= 0");
    }
  }
}

void ResourceSpec::validate() const {
  if (capacity <= 0) throw std::invalid_argument("resource capacity must be > 0");
  if (!(peak_power_w > 0.0)) throw std::invalid_argument("peak power must be > 0");
  if (!(dynamic_range >= 0.0 && dynamic_range <= 1.0)) {
    throw std::invalid_argument("dynamic range must be in [0,1]");
  }
}

void Workload::validate() const {
  if (cpu_demand <= 0) throw std::invalid_argument("workload cpu demand must be > 0");
  if (mem_demand <= 0) throw std::invalid_argument("workload mem demand must be > 0");
  for (FlowKind f : kAllFlows) {
    if (!(flow(f) >= 0.0)) {
      throw std::invalid_argument(std::string("flow rate for ") + to_string(f) +
                                  " must be >= 0");
    }
  }
}

const ModuleInfo& Topology::module(int module_id) const {
  // Ids assigned by build_topology equal the position in `modules`.
  if (module_id >= 0 && module_id < static_cast<int>(modules.size()) &&
      modules[module_id].id == module_id) {
    return modules[module_id];
  }
  for (const ModuleInfo& m : modules) {
    if (m.id == module_id) return m;
  }
  throw std::out_of_range("unknown module id " + std::to_string(module_id));
}

std::vector<int> Topology::module_ids(ResourceKind kind) const {
  std::vector<int> ids;
  for (const ModuleInfo& m : modules) {
    if (m.spec.kind == kind) ids.push_back(m.id);
  }
  return ids;
}

int Topology::count(ResourceKind kind) const {
  return static_cast<int>(module_ids(kind).size());
}

Topology build_topology(ArchitectureKind kind, int n_cpu, int n_mem, int racks,
                        const ResourceSpec& cpu_spec, const ResourceSpec& mem_spec,
                        const EpbTable& epb) {
  if (cpu_spec.kind != ResourceKind::Cpu || mem_spec.kind != ResourceKind::Mem) {
    throw std::invalid_argument("cpu_spec/mem_spec kinds are swapped or wrong");
  }
  cpu_spec.validate();
  mem_spec.validate();
  epb.validate();
  if (n_cpu < 1 || n_mem < 1) {
    throw std::invalid_argument("module counts must be >= 1 per kind");
  }
  if (racks < 1) throw std::invalid_argument("rack count must be >= 1");

  Topology topo;
  topo.kind = kind;
  topo.epb = epb;
  topo.racks.resize(racks);
  for (int r = 0; r < racks; ++r) topo.racks[r] = r;

  switch (kind) {
    case ArchitectureKind::Traditional: {
      if (n_cpu != n_mem) {
        throw std::invalid_argument(
            "traditional pairs one CPU with one memory module per server; "
            "n_cpu must equal n_mem");
      }
      // Server i holds CPU module i and memory module n_cpu+i on board i.
      for (int i = 0; i < n_cpu; ++i) {
        topo.modules.push_back({i, cpu_spec, i % racks, i});
      }
      for (int i = 0; i < n_mem; ++i) {
        topo.modules.push_back({n_cpu + i, mem_spec, i % racks, i});
      }
      break;
    }
    case ArchitectureKind::RackScale: {
      if (n_cpu % racks != 0 || n_mem % racks != 0) {
        throw std::invalid_argument(
            "rackscale splits each kind evenly: rack count must divide both "
            "module counts");
      }
      for (int i = 0; i < n_cpu; ++i) {
        topo.modules.push_back({i, cpu_spec, i % racks, std::nullopt});
      }
      for (int i = 0; i < n_mem; ++i) {
        topo.modules.push_back({n_cpu + i, mem_spec, i % racks, std::nullopt});
      }
      break;
    }
    case ArchitectureKind::PodScale: {
      if (racks < 2) {
        throw std::invalid_argument(
            "podscale needs at least one CPU rack and one memory rack (racks >= 2)");
      }
      const int cpu_racks = (racks + 1) / 2;
      const int mem_racks = racks - cpu_racks;
      if (n_cpu % cpu_racks != 0 || n_mem % mem_racks != 0) {
        throw std::invalid_argument(
            "podscale splits each kind evenly among its " +
            std::to_string(cpu_racks) + " CPU racks and " + std::to_string(mem_racks) +
            " memory racks");
      }
      for (int i = 0; i < n_cpu; ++i) {
        topo.modules.push_back({i, cpu_spec, i % cpu_racks, std::nullopt});
      }
      for (int i = 0; i < n_mem; ++i) {
        topo.modules.push_back({n_cpu + i, mem_spec, cpu_racks + (i % mem_racks), std::nullopt});
      }
      break;
    }
  }
  return topo;
}

Location locate(const Topology& topology, int module_id) {
  const ModuleInfo& m = topology.module(module_id);
  return Location{m.id, m.rack_id, m.board_id};
}

std::vector<std::string> validate_topology(const Topology& topology) {
  std::vector<std::string> issues;
  auto fail = [&issues](const std::string& msg) { issues.push_back(msg); };

  std::set<int> rack_set(topology.racks.begin(), topology.racks.end());
  if (rack_set.size() != topology.racks.size()) fail("duplicate rack ids");
  if (topology.modules.empty()) fail("topology has no modules");

  try {
    topology.epb.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }

  std::set<int> ids;
  std::map<int, std::pair<int, int>> board_kinds;     // board -> (cpus, mems)
  std::map<int, std::set<ResourceKind>> rack_kinds;
  int cpus = 0, mems = 0;
  for (const ModuleInfo& m : topology.modules) {
    if (!ids.insert(m.id).second) fail("duplicate module id " + std::to_string(m.id));
    if (rack_set.find(m.rack_id) == rack_set.end()) {
      fail("module " + std::to_string(m.id) + " references unknown rack " +
           std::to_string(m.rack_id));
    }
    try {
      m.spec.validate();
    } catch (const std::invalid_argument& e) {
      fail("module " + std::to_string(m.id) + ": " + e.what());
    }
    (m.spec.kind == ResourceKind::Cpu ? cpus : mems) += 1;
    rack_kinds[m.rack_id].insert(m.spec.kind);
    const bool traditional = topology.kind == ArchitectureKind::Traditional;
    if (traditional && !m.board_id) {
      fail("traditional module " + std::to_string(m.id) + " lacks a board id");
    }
    if (!traditional && m.board_id) {
      fail("disaggregated module " + std::to_string(m.id) + " must not have a board id");
    }
    if (m.board_id) {
      auto& [bc, bm] = board_kinds[*m.board_id];
      (m.spec.kind == ResourceKind::Cpu ? bc : bm) += 1;
    }
  }
  if (cpus == 0) fail("topology has no CPU modules");
  if (mems == 0) fail("topology has no memory modules");

  switch (topology.kind) {
    case ArchitectureKind::Traditional:
      for (const auto& [board, kinds] : board_kinds) {
        if (kinds.first != 1 || kinds.second != 1) {
          fail("board " + std::to_string(board) +
               " must hold exactly one CPU and one memory module");
        }
      }
      break;
    case ArchitectureKind::RackScale:
      for (int r : topology.racks) {
        const auto it = rack_kinds.find(r);
        if (it == rack_kinds.end() || it->second.size() != 2) {
          fail("rackscale rack " + std::to_string(r) +
               " must hold at least one module of each kind");
        }
      }
      break;
    case ArchitectureKind::PodScale:
      for (int r : topology.racks) {
        const auto it = rack_kinds.find(r);
        if (it == rack_kinds.end() || it->second.size() != 1) {
          fail("podscale rack " + std::to_string(r) +
               " must hold modules of exactly one kind");
        }
      }
      break;
  }
  return issues;
}

}  // namespace compdc
