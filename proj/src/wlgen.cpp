#include "compdc/wlgen.hpp"

#include <stdexcept>

namespace compdc {

std::pair<std::uint64_t, std::uint64_t> splitmix64_next(std::uint64_t state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return {state, z};
}

std::pair<std::uint64_t, Deci> sample_uniform_fixed(std::uint64_t state, Deci lo,
                                                    Deci hi, Deci step) {
  if (step <= 0 || lo > hi || (hi - lo) % step != 0) {
    throw std::invalid_argument("invalid lattice: need lo <= hi and step dividing hi-lo");
  }
  const auto [next, raw] = splitmix64_next(state);
  const std::uint64_t n = static_cast<std::uint64_t>((hi - lo) / step) + 1;
  return {next, lo + static_cast<Deci>(raw % n) * step};
}

WorkloadProfile WorkloadProfile::defaults() {
  WorkloadProfile p;
  p.cpu_lo = 10;
  p.cpu_hi = 30;
  p.cpu_step = 1;   // 0.1 GHz lattice
  p.mem_lo = 50;
  p.mem_hi = 80;
  p.mem_step = 10;  // 1 GB lattice
  p.fixed_flows[static_cast<int>(FlowKind::CpuMemUp)] = 120.0;
  p.fixed_flows[static_cast<int>(FlowKind::CpuMemDown)] = 100.0;
  p.fixed_flows[static_cast<int>(FlowKind::CpuIoUp)] = 2.0;
  p.fixed_flows[static_cast<int>(FlowKind::CpuIoDown)] = 1.0;
  p.fixed_flows[static_cast<int>(FlowKind::MemIoUp)] = 2.0;
  p.fixed_flows[static_cast<int>(FlowKind::MemIoDown)] = 1.0;
  return p;
}

void WorkloadProfile::validate() const {
  if (cpu_lo <= 0 || mem_lo <= 0) {
    throw std::invalid_argument("profile demand ranges must be positive");
  }
  if (cpu_step <= 0 || cpu_lo > cpu_hi || (cpu_hi - cpu_lo) % cpu_step != 0 ||
      mem_step <= 0 || mem_lo > mem_hi || (mem_hi - mem_lo) % mem_step != 0) {
    throw std::invalid_argument("profile granularity must divide the demand range");
  }
  for (double rate : fixed_flows) {
    if (!(rate >= 0.0)) throw std::invalid_argument("profile flow rates must be >= 0");
  }
}

std::vector<Workload> generate_workloads(std::uint64_t seed, int n,
                                         const WorkloadProfile& profile) {
  if (n < 0) throw std::invalid_argument("workload count must be >= 0");
  profile.validate();
  std::vector<Workload> workloads;
  workloads.reserve(static_cast<std::size_t>(n));
  std::uint64_t state = seed;
  for (int i = 0; i < n; ++i) {
    Workload w;
    w.id = i;
    std::tie(state, w.cpu_demand) =
        sample_uniform_fixed(state, profile.cpu_lo, profile.cpu_hi, profile.cpu_step);
    std::tie(state, w.mem_demand) =
        sample_uniform_fixed(state, profile.mem_lo, profile.mem_hi, profile.mem_step);
    w.flows = profile.fixed_flows;
    workloads.push_back(w);
  }
  return workloads;
}

}  // namespace compdc
