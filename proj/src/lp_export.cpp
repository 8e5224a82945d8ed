#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include "compdc/optimizer.hpp"
#include "solver_tables.hpp"

namespace compdc {

namespace {

// CPLEX LP format caps line length at 255 characters; wrap conservatively.
constexpr std::size_t kMaxLine = 240;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

class LpWriter {
 public:
  void line(const std::string& text) {
    flush();
    out_ += text;
    out_ += '\n';
  }

  // Appends one expression token, wrapping before it if the line would
  // exceed the limit. Continuation lines start with a space.
  void token(const std::string& t) {
    if (current_.empty()) {
      current_ = " " + t;
      return;
    }
    if (current_.size() + 1 + t.size() > kMaxLine) {
      out_ += current_;
      out_ += '\n';
      current_ = " " + t;
    } else {
      current_ += ' ';
      current_ += t;
    }
  }

  void flush() {
    if (!current_.empty()) {
      out_ += current_;
      out_ += '\n';
      current_.clear();
    }
  }

  std::string take() {
    flush();
    return std::move(out_);
  }

 private:
  std::string out_;
  std::string current_;
};

std::string var_x(int w, int c) {
  return "x_" + std::to_string(w) + "_" + std::to_string(c);
}
std::string var_y(int w, int m) {
  return "y_" + std::to_string(w) + "_" + std::to_string(m);
}
std::string var_z(int w, int c, int m) {
  return "z_" + std::to_string(w) + "_" + std::to_string(c) + "_" + std::to_string(m);
}

}  // namespace

std::string export_lp(const MilpInstance& instance) {
  const Topology& topo = instance.topology;
  const detail::KindArrays cpu = detail::make_kind_arrays(topo, ResourceKind::Cpu);
  const detail::KindArrays mem = detail::make_kind_arrays(topo, ResourceKind::Mem);
  const detail::NetTables net =
      detail::make_net_tables(topo, instance.policy, cpu, mem);

  LpWriter lp;
  lp.line("Minimize");
  lp.token("obj:");

  // Activation idle power.
  for (int ci = 0; ci < cpu.size(); ++ci) {
    lp.token("+ " + fmt(cpu.idle_w[ci]) + " a_" + std::to_string(cpu.ids[ci]));
  }
  for (int mi = 0; mi < mem.size(); ++mi) {
    lp.token("+ " + fmt(mem.idle_w[mi]) + " b_" + std::to_string(mem.ids[mi]));
  }
  // Load-proportional power.
  double io_constant = 0.0;
  for (const Workload& w : instance.workloads) {
    for (int ci = 0; ci < cpu.size(); ++ci) {
      lp.token("+ " + fmt(w.cpu_demand * cpu.rate_w[ci]) + " " +
               var_x(w.id, cpu.ids[ci]));
    }
    for (int mi = 0; mi < mem.size(); ++mi) {
      lp.token("+ " + fmt(w.mem_demand * mem.rate_w[mi]) + " " +
               var_y(w.id, mem.ids[mi]));
    }
    // CpuMem network power on the linearized products.
    const double rate = w.flow(FlowKind::CpuMemUp) + w.flow(FlowKind::CpuMemDown);
    for (int ci = 0; ci < cpu.size(); ++ci) {
      for (int mi = 0; mi < mem.size(); ++mi) {
        const double coef = rate * net.pair(ci, mi, mem.size());
        if (coef != 0.0) {
          lp.token("+ " + fmt(coef) + " " + var_z(w.id, cpu.ids[ci], mem.ids[mi]));
        }
      }
    }
    io_constant += (w.flow(FlowKind::CpuIoUp) + w.flow(FlowKind::CpuIoDown) +
                    w.flow(FlowKind::MemIoUp) + w.flow(FlowKind::MemIoDown)) *
                   net.io_path_cost;
  }
  // Placement-independent Io power enters as a constant so the LP objective
  // matches power_report totals.
  if (io_constant != 0.0) lp.token("+ " + fmt(io_constant));
  lp.flush();

  lp.line("Subject To");
  for (const Workload& w : instance.workloads) {
    lp.token("assign_cpu_" + std::to_string(w.id) + ":");
    for (int ci = 0; ci < cpu.size(); ++ci) {
      lp.token("+ " + var_x(w.id, cpu.ids[ci]));
    }
    lp.token("= 1");
    lp.flush();
    lp.token("assign_mem_" + std::to_string(w.id) + ":");
    for (int mi = 0; mi < mem.size(); ++mi) {
      lp.token("+ " + var_y(w.id, mem.ids[mi]));
    }
    lp.token("= 1");
    lp.flush();
  }
  for (int ci = 0; ci < cpu.size(); ++ci) {
    lp.token("cap_cpu_" + std::to_string(cpu.ids[ci]) + ":");
    for (const Workload& w : instance.workloads) {
      lp.token("+ " + std::to_string(w.cpu_demand) + " " + var_x(w.id, cpu.ids[ci]));
    }
    lp.token("- " + std::to_string(cpu.cap[ci]) + " a_" + std::to_string(cpu.ids[ci]));
    lp.token("<= 0");
    lp.flush();
  }
  for (int mi = 0; mi < mem.size(); ++mi) {
    lp.token("cap_mem_" + std::to_string(mem.ids[mi]) + ":");
    for (const Workload& w : instance.workloads) {
      lp.token("+ " + std::to_string(w.mem_demand) + " " + var_y(w.id, mem.ids[mi]));
    }
    lp.token("- " + std::to_string(mem.cap[mi]) + " b_" + std::to_string(mem.ids[mi]));
    lp.token("<= 0");
    lp.flush();
  }
  // z_w_c_m = x_w_c * y_w_m via the standard linearization.
  for (const Workload& w : instance.workloads) {
    for (int ci = 0; ci < cpu.size(); ++ci) {
      for (int mi = 0; mi < mem.size(); ++mi) {
        const std::string z = var_z(w.id, cpu.ids[ci], mem.ids[mi]);
        const std::string x = var_x(w.id, cpu.ids[ci]);
        const std::string y = var_y(w.id, mem.ids[mi]);
        const std::string tag =
            std::to_string(w.id) + "_" + std::to_string(cpu.ids[ci]) + "_" +
            std::to_string(mem.ids[mi]);
        lp.line(" zlo_" + tag + ": " + z + " - " + x + " - " + y + " >= -1");
        lp.line(" zx_" + tag + ": " + z + " - " + x + " <= 0");
        lp.line(" zy_" + tag + ": " + z + " - " + y + " <= 0");
      }
    }
  }
  // Traditional co-location: the memory assignment follows the chosen CPU's
  // board partner.
  if (topo.kind == ArchitectureKind::Traditional) {
    const auto boards = detail::make_boards(topo, cpu, mem);
    for (const Workload& w : instance.workloads) {
      for (const auto& [ci, mi] : boards) {
        lp.line(" colo_" + std::to_string(w.id) + "_" + std::to_string(cpu.ids[ci]) +
                ": " + var_y(w.id, mem.ids[mi]) + " - " + var_x(w.id, cpu.ids[ci]) +
                " = 0");
      }
    }
  }

  std::vector<std::string> binaries;
  for (const Workload& w : instance.workloads) {
    for (int ci = 0; ci < cpu.size(); ++ci) binaries.push_back(var_x(w.id, cpu.ids[ci]));
    for (int mi = 0; mi < mem.size(); ++mi) binaries.push_back(var_y(w.id, mem.ids[mi]));
  }
  for (int ci = 0; ci < cpu.size(); ++ci) {
    binaries.push_back("a_" + std::to_string(cpu.ids[ci]));
  }
  for (int mi = 0; mi < mem.size(); ++mi) {
    binaries.push_back("b_" + std::to_string(mem.ids[mi]));
  }
  for (const Workload& w : instance.workloads) {
    for (int ci = 0; ci < cpu.size(); ++ci) {
      for (int mi = 0; mi < mem.size(); ++mi) {
        binaries.push_back(var_z(w.id, cpu.ids[ci], mem.ids[mi]));
      }
    }
  }

  lp.line("Bounds");
  for (const std::string& v : binaries) lp.line(" 0 <= " + v + " <= 1");
  lp.line("Binary");
  for (const std::string& v : binaries) lp.line(" " + v);
  lp.line("End");
  return lp.take();
}

}  // namespace compdc
