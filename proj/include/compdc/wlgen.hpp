#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "compdc/domain.hpp"

namespace compdc {

/// One SplitMix64 step: returns (advanced state, 64-bit output).
std::pair<std::uint64_t, std::uint64_t> splitmix64_next(std::uint64_t state);

/// Uniform draw on the lattice {lo, lo+step, ..., hi}. Modulo bias is
/// accepted: the lattice never exceeds a few dozen points, so the bias is
/// below 2^-59.
std::pair<std::uint64_t, Deci> sample_uniform_fixed(std::uint64_t state, Deci lo,
                                                    Deci hi, Deci step);

/// Demand intensity profile (Table 2 shape): uniform CPU and memory demand
/// ranges plus the six fixed flow rates copied onto every workload.
struct WorkloadProfile {
  Deci cpu_lo = 0, cpu_hi = 0, cpu_step = 1;   // deci-GHz
  Deci mem_lo = 0, mem_hi = 0, mem_step = 1;   // deci-GB
  std::array<double, kFlowCount> fixed_flows{};

  /// CPU 1.0-3.0 GHz step 0.1, memory 5-8 GB step 1, flows 120/100, 2/1, 2/1.
  static WorkloadProfile defaults();
  void validate() const;
};

/// Deterministic workload generation: one SplitMix64 stream seeded with
/// `seed`; per workload the CPU demand is drawn first, then the memory
/// demand. Bit-exact for a given (seed, n, profile).
std::vector<Workload> generate_workloads(std::uint64_t seed, int n,
                                         const WorkloadProfile& profile);

}  // namespace compdc
