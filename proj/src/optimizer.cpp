#include "compdc/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "compdc/errors.hpp"
#include "solver_tables.hpp"

namespace compdc {

namespace {

using detail::KindArrays;
using detail::NetTables;
using detail::make_boards;
using detail::make_kind_arrays;
using detail::make_net_tables;

constexpr double kInf = std::numeric_limits<double>::infinity();

Deci ceil_div(Deci a, Deci b) { return (a + b - 1) / b; }

std::string join_violations(const std::vector<Violation>& violations) {
  std::ostringstream msg;
  msg << "infeasible placement:";
  for (const Violation& v : violations) {
    msg << " [" << to_string(v.kind) << "] " << v.message << ";";
  }
  return msg.str();
}

double min_rate(const KindArrays& k) {
  double r = kInf;
  for (double v : k.rate_w) r = std::min(r, v);
  return r;
}

std::vector<int> canonical_order(const std::vector<Workload>& workloads) {
  std::vector<int> order(workloads.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&workloads](int a, int b) {
    if (workloads[a].cpu_demand != workloads[b].cpu_demand) {
      return workloads[a].cpu_demand > workloads[b].cpu_demand;
    }
    return workloads[a].id < workloads[b].id;
  });
  return order;
}

struct SearchContext {
  const MilpInstance* inst = nullptr;
  bool traditional = false;
  KindArrays cpu, mem;
  NetTables net;
  double min_cpu_rate = 0.0, min_mem_rate = 0.0;

  // Traditional boards as (cpu index, mem index), ascending board id.
  std::vector<std::pair<int, int>> boards;
  std::vector<std::vector<int>> board_rack_groups;

  std::vector<int> order;  // canonical workload order
  std::vector<Deci> wcpu, wmem;
  std::vector<double> cpumem_rate, io_cost;

  // Suffix sums over the canonical order.
  std::vector<Deci> suf_cpu, suf_mem;
  std::vector<double> suf_lb;  // load term + cheapest network attribution
};

SearchContext make_context(const MilpInstance& inst) {
  SearchContext ctx;
  ctx.inst = &inst;
  ctx.traditional = inst.topology.kind == ArchitectureKind::Traditional;
  ctx.cpu = make_kind_arrays(inst.topology, ResourceKind::Cpu);
  ctx.mem = make_kind_arrays(inst.topology, ResourceKind::Mem);
  ctx.net = make_net_tables(inst.topology, inst.policy, ctx.cpu, ctx.mem);
  ctx.min_cpu_rate = min_rate(ctx.cpu);
  ctx.min_mem_rate = min_rate(ctx.mem);

  if (ctx.traditional) {
    ctx.boards = make_boards(inst.topology, ctx.cpu, ctx.mem);
    int max_rack = 0;
    for (int r : inst.topology.racks) max_rack = std::max(max_rack, r);
    ctx.board_rack_groups.resize(static_cast<std::size_t>(max_rack) + 1);
    for (int b = 0; b < static_cast<int>(ctx.boards.size()); ++b) {
      ctx.board_rack_groups[ctx.cpu.rack[ctx.boards[b].first]].push_back(b);
    }
  }

  const auto& wls = inst.workloads;
  ctx.order = canonical_order(wls);
  const int n = static_cast<int>(wls.size());
  ctx.wcpu.resize(n);
  ctx.wmem.resize(n);
  ctx.cpumem_rate.resize(n);
  ctx.io_cost.resize(n);
  for (int i = 0; i < n; ++i) {
    ctx.wcpu[i] = wls[i].cpu_demand;
    ctx.wmem[i] = wls[i].mem_demand;
    ctx.cpumem_rate[i] =
        wls[i].flow(FlowKind::CpuMemUp) + wls[i].flow(FlowKind::CpuMemDown);
    ctx.io_cost[i] = (wls[i].flow(FlowKind::CpuIoUp) + wls[i].flow(FlowKind::CpuIoDown) +
                      wls[i].flow(FlowKind::MemIoUp) + wls[i].flow(FlowKind::MemIoDown)) *
                     ctx.net.io_path_cost;
  }

  ctx.suf_cpu.assign(n + 1, 0);
  ctx.suf_mem.assign(n + 1, 0);
  ctx.suf_lb.assign(n + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    const int w = ctx.order[k];
    ctx.suf_cpu[k] = ctx.suf_cpu[k + 1] + ctx.wcpu[w];
    ctx.suf_mem[k] = ctx.suf_mem[k + 1] + ctx.wmem[w];
    ctx.suf_lb[k] = ctx.suf_lb[k + 1] + ctx.wcpu[w] * ctx.min_cpu_rate +
                    ctx.wmem[w] * ctx.min_mem_rate +
                    ctx.cpumem_rate[w] * ctx.net.min_pair_cost + ctx.io_cost[w];
  }
  return ctx;
}

Placement assignment_to_placement(const SearchContext& ctx,
                                  const std::vector<std::pair<int, int>>& assign) {
  Placement placement;
  for (std::size_t k = 0; k < assign.size(); ++k) {
    const int w = ctx.order[k];
    placement[ctx.inst->workloads[w].id] =
        ModulePair{ctx.cpu.ids[assign[k].first], ctx.mem.ids[assign[k].second]};
  }
  return placement;
}

struct Child {
  double dcost;
  int ci, mi;
  bool new_c, new_m;
};

class BranchAndBound {
 public:
  BranchAndBound(const SearchContext& ctx, const SolveLimits& limits)
      : ctx_(ctx),
        limits_(limits),
        free_c_(ctx.cpu.cap),
        free_m_(ctx.mem.cap),
        cnt_c_(ctx.cpu.size(), 0),
        cnt_m_(ctx.mem.size(), 0),
        n_(ctx.order.size()),
        children_(n_),
        assign_(n_) {
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(limits.time_budget_s));
  }

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    dfs(0, 0.0);
    SolveResult result;
    result.nodes_explored = nodes_;
    if (found_) {
      result.placement = assignment_to_placement(ctx_, best_assign_);
      result.status = stopped_ ? SolveStatus::Feasible : SolveStatus::Optimal;
      result.proven_optimal = !stopped_;
    } else {
      result.status = stopped_ ? SolveStatus::Unknown : SolveStatus::Infeasible;
    }
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  double idle_lower_bound(std::size_t k) const {
    double lb = 0.0;
    const Deci need_c = ctx_.suf_cpu[k] - free_active_c_;
    if (need_c > 0) {
      lb += static_cast<double>(ceil_div(need_c, ctx_.cpu.max_cap)) * ctx_.cpu.min_idle;
    }
    const Deci need_m = ctx_.suf_mem[k] - free_active_m_;
    if (need_m > 0) {
      lb += static_cast<double>(ceil_div(need_m, ctx_.mem.max_cap)) * ctx_.mem.min_idle;
    }
    return lb;
  }

  // Candidate modules: every active module that fits plus, per rack, the
  // lowest-indexed unused module (interchangeable modules open in index
  // order only).
  template <typename Push>
  void kind_candidates(const KindArrays& kind, const std::vector<Deci>& free,
                       const std::vector<int>& cnt, Deci demand, Push&& push) const {
    for (const auto& group : kind.rack_groups) {
      for (int idx : group) {
        if (cnt[idx] > 0) {
          if (free[idx] >= demand) push(idx, false);
        } else {
          if (kind.cap[idx] >= demand) push(idx, true);
          break;  // opened modules form a prefix of each rack group
        }
      }
    }
  }

  void enumerate_children(std::size_t k) {
    std::vector<Child>& out = children_[k];
    out.clear();
    const int w = ctx_.order[k];
    const Deci dc = ctx_.wcpu[w];
    const Deci dm = ctx_.wmem[w];
    const double base = ctx_.io_cost[w];

    if (ctx_.traditional) {
      for (const auto& group : ctx_.board_rack_groups) {
        for (int b : group) {
          const auto [ci, mi] = ctx_.boards[b];
          const bool fresh = cnt_c_[ci] == 0;
          if (free_c_[ci] < dc || free_m_[mi] < dm) {
            if (fresh) break;
            continue;
          }
          double cost = base + dc * ctx_.cpu.rate_w[ci] + dm * ctx_.mem.rate_w[mi] +
                        ctx_.cpumem_rate[w] * ctx_.net.pair(ci, mi, ctx_.mem.size());
          if (fresh) cost += ctx_.cpu.idle_w[ci] + ctx_.mem.idle_w[mi];
          out.push_back({cost, ci, mi, fresh, fresh});
          if (fresh) break;  // boards open in index order within a rack
        }
      }
    } else {
      cpu_cands_.clear();
      mem_cands_.clear();
      kind_candidates(ctx_.cpu, free_c_, cnt_c_, dc, [this, dc](int idx, bool fresh) {
        double cost = dc * ctx_.cpu.rate_w[idx];
        if (fresh) cost += ctx_.cpu.idle_w[idx];
        cpu_cands_.push_back({cost, idx, 0, fresh, false});
      });
      kind_candidates(ctx_.mem, free_m_, cnt_m_, dm, [this, dm](int idx, bool fresh) {
        double cost = dm * ctx_.mem.rate_w[idx];
        if (fresh) cost += ctx_.mem.idle_w[idx];
        mem_cands_.push_back({cost, idx, 0, fresh, false});
      });
      for (const Child& c : cpu_cands_) {
        for (const Child& m : mem_cands_) {
          const double cost =
              base + c.dcost + m.dcost +
              ctx_.cpumem_rate[w] * ctx_.net.pair(c.ci, m.ci, ctx_.mem.size());
          out.push_back({cost, c.ci, m.ci, c.new_c, m.new_m});
        }
      }
    }
    std::sort(out.begin(), out.end(), [](const Child& a, const Child& b) {
      if (a.dcost != b.dcost) return a.dcost < b.dcost;
      if (a.ci != b.ci) return a.ci < b.ci;
      return a.mi < b.mi;
    });
  }

  void apply(int w, const Child& c) {
    if (cnt_c_[c.ci]++ == 0) free_active_c_ += ctx_.cpu.cap[c.ci];
    free_c_[c.ci] -= ctx_.wcpu[w];
    free_active_c_ -= ctx_.wcpu[w];
    if (cnt_m_[c.mi]++ == 0) free_active_m_ += ctx_.mem.cap[c.mi];
    free_m_[c.mi] -= ctx_.wmem[w];
    free_active_m_ -= ctx_.wmem[w];
  }

  void undo(int w, const Child& c) {
    free_c_[c.ci] += ctx_.wcpu[w];
    free_active_c_ += ctx_.wcpu[w];
    if (--cnt_c_[c.ci] == 0) free_active_c_ -= ctx_.cpu.cap[c.ci];
    free_m_[c.mi] += ctx_.wmem[w];
    free_active_m_ += ctx_.wmem[w];
    if (--cnt_m_[c.mi] == 0) free_active_m_ -= ctx_.mem.cap[c.mi];
  }

  // Placement encodings compare by ascending workload id.
  bool encoding_less(const std::vector<std::pair<int, int>>& a,
                     const std::vector<std::pair<int, int>>& b) const {
    std::vector<int> by_id(n_);
    std::iota(by_id.begin(), by_id.end(), 0);
    std::sort(by_id.begin(), by_id.end(), [this](int x, int y) {
      return ctx_.inst->workloads[ctx_.order[x]].id < ctx_.inst->workloads[ctx_.order[y]].id;
    });
    for (int k : by_id) {
      if (a[k] != b[k]) return a[k] < b[k];
    }
    return false;
  }

  void dfs(std::size_t k, double g) {
    if (k == n_) {
      if (!found_ || g < best_obj_) {
        found_ = true;
        best_obj_ = g;
        best_assign_ = assign_;
      } else if (g == best_obj_ && encoding_less(assign_, best_assign_)) {
        best_assign_ = assign_;
      }
      return;
    }
    if (found_ && g + ctx_.suf_lb[k] + idle_lower_bound(k) >= best_obj_) return;

    enumerate_children(k);
    // children_[k] is reused across siblings; iterate by index.
    for (std::size_t i = 0; i < children_[k].size(); ++i) {
      if (stopped_) return;
      if (nodes_ >= limits_.node_budget) {
        stopped_ = true;
        return;
      }
      if ((nodes_ & 0x3FF) == 0 && std::chrono::steady_clock::now() > deadline_) {
        stopped_ = true;
        return;
      }
      ++nodes_;
      const Child c = children_[k][i];
      const int w = ctx_.order[k];
      assign_[k] = {c.ci, c.mi};
      apply(w, c);
      dfs(k + 1, g + c.dcost);
      undo(w, c);
      if (found_ && g + ctx_.suf_lb[k] + idle_lower_bound(k) >= best_obj_) return;
    }
  }

  const SearchContext& ctx_;
  SolveLimits limits_;
  std::vector<Deci> free_c_, free_m_;
  std::vector<int> cnt_c_, cnt_m_;
  Deci free_active_c_ = 0, free_active_m_ = 0;
  std::size_t n_;
  std::vector<std::vector<Child>> children_;
  std::vector<Child> cpu_cands_, mem_cands_;
  std::vector<std::pair<int, int>> assign_, best_assign_;
  double best_obj_ = kInf;
  bool found_ = false;
  bool stopped_ = false;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

MilpInstance::MilpInstance(Topology topology_in, std::vector<Workload> workloads_in,
                           TierPolicy policy_in)
    : topology(std::move(topology_in)),
      workloads(std::move(workloads_in)),
      policy(policy_in) {
  const std::vector<std::string> issues = validate_topology(topology);
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << "invalid topology:";
    for (const std::string& s : issues) msg << " " << s << ";";
    throw std::invalid_argument(msg.str());
  }
  Deci max_cpu = 0, max_mem = 0;
  for (const ModuleInfo& m : topology.modules) {
    Deci& slot = m.spec.kind == ResourceKind::Cpu ? max_cpu : max_mem;
    slot = std::max(slot, m.spec.capacity);
  }
  std::set<int> ids;
  for (const Workload& w : workloads) {
    w.validate();
    if (!ids.insert(w.id).second) {
      throw std::invalid_argument("duplicate workload id " + std::to_string(w.id));
    }
    if (w.cpu_demand > max_cpu) {
      throw InfeasibleError("workload " + std::to_string(w.id) +
                            " CPU demand exceeds every CPU module capacity");
    }
    if (w.mem_demand > max_mem) {
      throw InfeasibleError("workload " + std::to_string(w.id) +
                            " memory demand exceeds every memory module capacity");
    }
  }
}

std::vector<Violation> check_feasible(const MilpInstance& instance,
                                      const Placement& placement) {
  return placement_violations(instance.topology, instance.workloads, placement);
}

double objective_value(const MilpInstance& instance, const Placement& placement) {
  const std::vector<Violation> violations = check_feasible(instance, placement);
  if (!violations.empty()) throw InfeasibleError(join_violations(violations));
  return power_report(instance.topology, instance.workloads, placement, instance.policy)
      .total_w;
}

SolveResult solve_exact(const MilpInstance& instance, const SolveLimits& limits) {
  const SearchContext ctx = make_context(instance);
  BranchAndBound search(ctx, limits);
  SolveResult result = search.run();
  if (result.status == SolveStatus::Optimal || result.status == SolveStatus::Feasible) {
    result.objective_w = objective_value(instance, result.placement);
  }
  return result;
}

SolveResult solve_greedy(const MilpInstance& instance) {
  const auto start = std::chrono::steady_clock::now();
  const SearchContext ctx = make_context(instance);
  const std::size_t n = ctx.order.size();

  std::vector<Deci> free_c = ctx.cpu.cap, free_m = ctx.mem.cap;
  std::vector<int> cnt_c(ctx.cpu.size(), 0), cnt_m(ctx.mem.size(), 0);
  std::vector<std::pair<int, int>> assign(n);
  std::uint64_t examined = 0;

  auto pick_best = [&examined](double cost, int idx, double& best_cost, int& best_idx) {
    ++examined;
    if (cost < best_cost || (cost == best_cost && idx < best_idx)) {
      best_cost = cost;
      best_idx = idx;
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    const int w = ctx.order[k];
    const Deci dc = ctx.wcpu[w];
    const Deci dm = ctx.wmem[w];

    if (ctx.traditional) {
      double best_cost = kInf;
      int best_b = -1;
      for (std::size_t b = 0; b < ctx.boards.size(); ++b) {
        const auto [ci, mi] = ctx.boards[b];
        if (free_c[ci] < dc || free_m[mi] < dm) continue;
        double cost = dc * ctx.cpu.rate_w[ci] + dm * ctx.mem.rate_w[mi] +
                      ctx.cpumem_rate[w] * ctx.net.pair(ci, mi, ctx.mem.size());
        if (cnt_c[ci] == 0) cost += ctx.cpu.idle_w[ci] + ctx.mem.idle_w[mi];
        pick_best(cost, static_cast<int>(b), best_cost, best_b);
      }
      if (best_b < 0) {
        throw GreedyDeadEnd("greedy dead end: no server fits workload " +
                            std::to_string(instance.workloads[w].id));
      }
      assign[k] = ctx.boards[best_b];
    } else {
      // CPU first on its own marginal cost, then memory given that CPU.
      double best_cost = kInf;
      int ci = -1;
      for (int idx = 0; idx < ctx.cpu.size(); ++idx) {
        if (free_c[idx] < dc) continue;
        double cost = dc * ctx.cpu.rate_w[idx];
        if (cnt_c[idx] == 0) cost += ctx.cpu.idle_w[idx];
        pick_best(cost, idx, best_cost, ci);
      }
      if (ci < 0) {
        throw GreedyDeadEnd("greedy dead end: no CPU module fits workload " +
                            std::to_string(instance.workloads[w].id));
      }
      best_cost = kInf;
      int mi = -1;
      for (int idx = 0; idx < ctx.mem.size(); ++idx) {
        if (free_m[idx] < dm) continue;
        double cost = dm * ctx.mem.rate_w[idx] +
                      ctx.cpumem_rate[w] * ctx.net.pair(ci, idx, ctx.mem.size());
        if (cnt_m[idx] == 0) cost += ctx.mem.idle_w[idx];
        pick_best(cost, idx, best_cost, mi);
      }
      if (mi < 0) {
        throw GreedyDeadEnd("greedy dead end: no memory module fits workload " +
                            std::to_string(instance.workloads[w].id));
      }
      assign[k] = {ci, mi};
    }
    free_c[assign[k].first] -= dc;
    free_m[assign[k].second] -= dm;
    cnt_c[assign[k].first] += 1;
    cnt_m[assign[k].second] += 1;
  }

  SolveResult result;
  result.placement = assignment_to_placement(ctx, assign);
  result.objective_w = objective_value(instance, result.placement);
  result.proven_optimal = false;
  result.status = SolveStatus::Feasible;
  result.nodes_explored = examined;
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult brute_force_oracle(const MilpInstance& instance) {
  const auto start = std::chrono::steady_clock::now();
  const Topology& topo = instance.topology;
  const KindArrays cpu = make_kind_arrays(topo, ResourceKind::Cpu);
  const KindArrays mem = make_kind_arrays(topo, ResourceKind::Mem);
  const int n = static_cast<int>(instance.workloads.size());
  if (n > 8 || cpu.size() > 10 || mem.size() > 10) {
    throw std::invalid_argument(
        "oracle guard rails: at most 8 workloads and 10 modules per kind");
  }
  const NetTables net = make_net_tables(topo, instance.policy, cpu, mem);
  const bool traditional = topo.kind == ArchitectureKind::Traditional;

  std::vector<std::pair<int, int>> boards;  // traditional pairs, ascending board id
  if (traditional) boards = make_boards(topo, cpu, mem);

  std::vector<Deci> free_c = cpu.cap, free_m = mem.cap;
  std::vector<Deci> load_c(cpu.size(), 0), load_m(mem.size(), 0);
  std::vector<std::pair<int, int>> assign(n), best_assign;
  double best_obj = kInf;
  bool found = false;
  std::uint64_t nodes = 0;

  // Workloads in id order (the instance stores arbitrary order; sort indices).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&instance](int a, int b) {
    return instance.workloads[a].id < instance.workloads[b].id;
  });

  auto leaf_objective = [&]() {
    double obj = 0.0;
    for (int i = 0; i < cpu.size(); ++i) {
      if (load_c[i] > 0) {
        obj += cpu.idle_w[i] + static_cast<double>(load_c[i]) * cpu.rate_w[i];
      }
    }
    for (int i = 0; i < mem.size(); ++i) {
      if (load_m[i] > 0) {
        obj += mem.idle_w[i] + static_cast<double>(load_m[i]) * mem.rate_w[i];
      }
    }
    for (int k = 0; k < n; ++k) {
      const Workload& w = instance.workloads[order[k]];
      obj += (w.flow(FlowKind::CpuMemUp) + w.flow(FlowKind::CpuMemDown)) *
                 net.pair(assign[k].first, assign[k].second, mem.size()) +
             (w.flow(FlowKind::CpuIoUp) + w.flow(FlowKind::CpuIoDown) +
              w.flow(FlowKind::MemIoUp) + w.flow(FlowKind::MemIoDown)) *
                 net.io_path_cost;
    }
    return obj;
  };

  auto visit = [&](auto&& self, int k) -> void {
    if (k == n) {
      const double obj = leaf_objective();
      if (!found || obj < best_obj) {
        found = true;
        best_obj = obj;
        best_assign = assign;
      }
      return;
    }
    const Workload& w = instance.workloads[order[k]];
    auto try_pair = [&](int ci, int mi) {
      if (free_c[ci] < w.cpu_demand || free_m[mi] < w.mem_demand) return;
      ++nodes;
      free_c[ci] -= w.cpu_demand;
      free_m[mi] -= w.mem_demand;
      load_c[ci] += w.cpu_demand;
      load_m[mi] += w.mem_demand;
      assign[k] = {ci, mi};
      self(self, k + 1);
      free_c[ci] += w.cpu_demand;
      free_m[mi] += w.mem_demand;
      load_c[ci] -= w.cpu_demand;
      load_m[mi] -= w.mem_demand;
    };
    if (traditional) {
      for (const auto& [ci, mi] : boards) try_pair(ci, mi);
    } else {
      for (int ci = 0; ci < cpu.size(); ++ci) {
        for (int mi = 0; mi < mem.size(); ++mi) try_pair(ci, mi);
      }
    }
  };
  visit(visit, 0);

  SolveResult result;
  result.nodes_explored = nodes;
  if (found) {
    for (int k = 0; k < n; ++k) {
      result.placement[instance.workloads[order[k]].id] =
          ModulePair{cpu.ids[best_assign[k].first], mem.ids[best_assign[k].second]};
    }
    result.objective_w = objective_value(instance, result.placement);
    result.proven_optimal = true;
    result.status = SolveStatus::Optimal;
  } else {
    result.status = SolveStatus::Infeasible;
  }
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace compdc
