#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "compdc/experiment.hpp"
#include "compdc/version.hpp"
#include "json.hpp"

namespace compdc {

namespace {

// Fixed six-decimal rendering keeps report bytes deterministic.
std::string fmt6(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

class JsonOut {
 public:
  void open_obj(const char* key = nullptr) { open(key, '{'); }
  void close_obj() { close('}'); }
  void open_arr(const char* key = nullptr) { open(key, '['); }
  void close_arr() { close(']'); }

  void field(const char* key, const std::string& value) {
    raw(key, "\"" + value + "\"");
  }
  void field(const char* key, const char* value) { raw(key, std::string("\"") + value + "\""); }
  void field(const char* key, double value) { raw(key, fmt6(value)); }
  void field(const char* key, bool value) { raw(key, value ? "true" : "false"); }
  void field(const char* key, int value) { raw(key, std::to_string(value)); }
  void field(const char* key, std::int64_t value) { raw(key, std::to_string(value)); }
  void field(const char* key, std::uint64_t value) { raw(key, std::to_string(value)); }

  std::string take() {
    out_ += '\n';
    return std::move(out_);
  }

 private:
  void open(const char* key, char bracket) {
    comma();
    pad();
    if (key) {
      out_ += '"';
      out_ += key;
      out_ += "\": ";
    }
    out_ += bracket;
    out_ += '\n';
    ++depth_;
    fresh_ = true;
  }

  void close(char bracket) {
    out_ += '\n';
    --depth_;
    pad();
    out_ += bracket;
    fresh_ = false;
  }

  void raw(const char* key, const std::string& value) {
    comma();
    pad();
    out_ += '"';
    out_ += key;
    out_ += "\": ";
    out_ += value;
    fresh_ = false;
  }

  void comma() {
    if (!fresh_ && !out_.empty()) out_ += ",\n";
    fresh_ = false;
  }

  void pad() { out_.append(static_cast<std::size_t>(depth_) * 2, ' '); }

  std::string out_;
  int depth_ = 0;
  bool fresh_ = true;
};

void emit_workload(JsonOut& js, const Workload& w) {
  js.open_obj();
  js.field("id", w.id);
  js.field("cpu_ghz", static_cast<double>(w.cpu_demand) / 10.0);
  js.field("mem_gb", static_cast<double>(w.mem_demand) / 10.0);
  js.open_obj("flows_gbps");
  for (FlowKind f : kAllFlows) js.field(to_string(f), w.flow(f));
  js.close_obj();
  js.close_obj();
}

void emit_power(JsonOut& js, const PowerReport& power) {
  js.open_obj("power");
  js.field("tcpc_w", power.tcpc_w);
  js.field("tmpc_w", power.tmpc_w);
  js.field("tnpc_w", power.tnpc_w);
  js.field("total_w", power.total_w);
  js.open_obj("per_tier");
  for (Tier t : kAllTiers) {
    js.open_obj(to_string(t));
    js.field("traffic_gbps", power.tier(t).traffic_gbps);
    js.field("power_w", power.tier(t).power_w);
    js.close_obj();
  }
  js.close_obj();
  js.field("active_cpus", power.active_cpus);
  js.field("active_mems", power.active_mems);
  js.field("avg_active_cpu_util", power.avg_active_cpu_util);
  js.field("avg_active_mem_util", power.avg_active_mem_util);
  js.close_obj();
}

void emit_solver(JsonOut& js, SolveStatus status, double objective_w,
                 bool proven_optimal, std::uint64_t nodes, bool feasible) {
  js.open_obj("solver");
  js.field("status", to_string(status));
  if (feasible) js.field("objective_w", objective_w);
  js.field("proven_optimal", proven_optimal);
  js.field("nodes_explored", nodes);
  js.close_obj();
}

void emit_outcome(JsonOut& js, const ArchOutcome& outcome) {
  js.open_obj(to_string(outcome.kind));
  js.field("feasible", outcome.feasible);
  if (outcome.feasible) emit_power(js, outcome.power);
  emit_solver(js, outcome.status, outcome.objective_w, outcome.proven_optimal,
              outcome.nodes_explored, outcome.feasible);
  js.close_obj();
}

void emit_config(JsonOut& js, const Config& config) {
  js.open_obj("config");
  js.field("seed", config.seed);
  js.field("workloads", config.n_workloads);
  js.open_obj("modules");
  js.field("cpu", config.n_cpu);
  js.field("mem", config.n_mem);
  js.close_obj();
  js.open_obj("racks");
  js.field("traditional", config.racks.traditional);
  js.field("rackscale", config.racks.rackscale);
  js.field("podscale", config.racks.podscale);
  js.close_obj();
  js.open_obj("cpu");
  js.field("capacity_ghz", static_cast<double>(config.cpu_spec.capacity) / 10.0);
  js.field("peak_power_w", config.cpu_spec.peak_power_w);
  js.field("dynamic_range", config.cpu_spec.dynamic_range);
  js.close_obj();
  js.open_obj("mem");
  js.field("capacity_gb", static_cast<double>(config.mem_spec.capacity) / 10.0);
  js.field("peak_power_w", config.mem_spec.peak_power_w);
  js.field("dynamic_range", config.mem_spec.dynamic_range);
  js.close_obj();
  js.open_obj("epb_pj_per_bit");
  for (Tier t : kAllTiers) js.field(to_string(t), config.epb.at(t));
  js.close_obj();
  js.field("policy", to_string(config.policy));
  js.field("solver", to_string(config.solver));
  js.field("node_budget", config.limits.node_budget);
  js.field("time_budget_s", config.limits.time_budget_s);
  js.close_obj();
}

}  // namespace

std::string report_to_json(const ComparisonReport& report) {
  JsonOut js;
  js.open_obj();
  js.field("schema_version", report.schema_version);
  js.field("tool_version", report.tool_version);
  emit_config(js, report.config);
  js.open_arr("workloads");
  for (const Workload& w : report.workloads) emit_workload(js, w);
  js.close_arr();
  js.open_obj("architectures");
  emit_outcome(js, report.traditional);
  emit_outcome(js, report.rackscale);
  emit_outcome(js, report.podscale);
  js.close_obj();
  js.open_obj("deltas");
  if (report.deltas.tmpc_savings_vs_traditional_pct) {
    js.field("tmpc_savings_vs_traditional_pct",
             *report.deltas.tmpc_savings_vs_traditional_pct);
  }
  if (report.deltas.tnpc_pod_vs_rack_pct) {
    js.field("tnpc_pod_vs_rack_pct", *report.deltas.tnpc_pod_vs_rack_pct);
  }
  if (report.deltas.tnpc_rack_vs_traditional_pct) {
    js.field("tnpc_rack_vs_traditional_pct",
             *report.deltas.tnpc_rack_vs_traditional_pct);
  }
  js.close_obj();
  js.close_obj();
  return js.take();
}

std::string power_report_to_json(const PowerReport& report, ArchitectureKind kind,
                                 const SolveResult& result) {
  JsonOut js;
  js.open_obj();
  js.field("schema_version", 1);
  js.field("tool_version", kVersion);
  js.field("architecture", to_string(kind));
  emit_power(js, report);
  emit_solver(js, result.status, result.objective_w, result.proven_optimal,
              result.nodes_explored, true);
  js.close_obj();
  return js.take();
}

std::string workloads_to_json(const std::vector<Workload>& workloads,
                              std::uint64_t seed) {
  JsonOut js;
  js.open_obj();
  js.field("schema_version", 1);
  js.field("seed", seed);
  js.field("count", static_cast<int>(workloads.size()));
  js.open_arr("workloads");
  for (const Workload& w : workloads) emit_workload(js, w);
  js.close_arr();
  js.close_obj();
  return js.take();
}

namespace {

using nlohmann::json;

Deci json_deci(const json& value) {
  return static_cast<Deci>(std::llround(value.get<double>() * 10.0));
}

PowerReport parse_power(const json& p) {
  PowerReport power;
  power.tcpc_w = p.at("tcpc_w").get<double>();
  power.tmpc_w = p.at("tmpc_w").get<double>();
  power.tnpc_w = p.at("tnpc_w").get<double>();
  power.total_w = p.at("total_w").get<double>();
  for (Tier t : kAllTiers) {
    const json& tier = p.at("per_tier").at(to_string(t));
    power.per_tier[static_cast<int>(t)] = {tier.at("traffic_gbps").get<double>(),
                                           tier.at("power_w").get<double>()};
  }
  power.active_cpus = p.at("active_cpus").get<int>();
  power.active_mems = p.at("active_mems").get<int>();
  power.avg_active_cpu_util = p.at("avg_active_cpu_util").get<double>();
  power.avg_active_mem_util = p.at("avg_active_mem_util").get<double>();
  return power;
}

ArchOutcome parse_outcome(const json& a, ArchitectureKind kind) {
  ArchOutcome outcome;
  outcome.kind = kind;
  outcome.feasible = a.at("feasible").get<bool>();
  if (outcome.feasible) outcome.power = parse_power(a.at("power"));
  const json& s = a.at("solver");
  const std::string status = s.at("status").get<std::string>();
  for (SolveStatus v : {SolveStatus::Optimal, SolveStatus::Feasible,
                        SolveStatus::Infeasible, SolveStatus::Unknown}) {
    if (status == to_string(v)) outcome.status = v;
  }
  if (s.contains("objective_w")) outcome.objective_w = s.at("objective_w").get<double>();
  outcome.proven_optimal = s.at("proven_optimal").get<bool>();
  outcome.nodes_explored = s.at("nodes_explored").get<std::uint64_t>();
  return outcome;
}

}  // namespace

ComparisonReport report_from_json(const std::string& text) {
  const json doc = json::parse(text);
  ComparisonReport report;
  report.schema_version = doc.at("schema_version").get<int>();
  report.tool_version = doc.at("tool_version").get<std::string>();

  const json& c = doc.at("config");
  report.config.seed = c.at("seed").get<std::uint64_t>();
  report.config.n_workloads = c.at("workloads").get<int>();
  report.config.n_cpu = c.at("modules").at("cpu").get<int>();
  report.config.n_mem = c.at("modules").at("mem").get<int>();
  report.config.racks.traditional = c.at("racks").at("traditional").get<int>();
  report.config.racks.rackscale = c.at("racks").at("rackscale").get<int>();
  report.config.racks.podscale = c.at("racks").at("podscale").get<int>();
  report.config.cpu_spec = {ResourceKind::Cpu, json_deci(c.at("cpu").at("capacity_ghz")),
                            c.at("cpu").at("peak_power_w").get<double>(),
                            c.at("cpu").at("dynamic_range").get<double>()};
  report.config.mem_spec = {ResourceKind::Mem, json_deci(c.at("mem").at("capacity_gb")),
                            c.at("mem").at("peak_power_w").get<double>(),
                            c.at("mem").at("dynamic_range").get<double>()};
  for (Tier t : kAllTiers) {
    report.config.epb.at(t) = c.at("epb_pj_per_bit").at(to_string(t)).get<double>();
  }
  report.config.policy = policy_from_string(c.at("policy").get<std::string>());
  report.config.solver = solver_from_string(c.at("solver").get<std::string>());
  report.config.limits.node_budget = c.at("node_budget").get<std::uint64_t>();
  report.config.limits.time_budget_s = c.at("time_budget_s").get<double>();

  for (const json& w : doc.at("workloads")) {
    Workload workload;
    workload.id = w.at("id").get<int>();
    workload.cpu_demand = json_deci(w.at("cpu_ghz"));
    workload.mem_demand = json_deci(w.at("mem_gb"));
    for (FlowKind f : kAllFlows) {
      workload.flow(f) = w.at("flows_gbps").at(to_string(f)).get<double>();
    }
    report.workloads.push_back(workload);
  }

  const json& archs = doc.at("architectures");
  report.traditional = parse_outcome(archs.at("traditional"), ArchitectureKind::Traditional);
  report.rackscale = parse_outcome(archs.at("rackscale"), ArchitectureKind::RackScale);
  report.podscale = parse_outcome(archs.at("podscale"), ArchitectureKind::PodScale);

  const json& d = doc.at("deltas");
  if (d.contains("tmpc_savings_vs_traditional_pct")) {
    report.deltas.tmpc_savings_vs_traditional_pct =
        d.at("tmpc_savings_vs_traditional_pct").get<double>();
  }
  if (d.contains("tnpc_pod_vs_rack_pct")) {
    report.deltas.tnpc_pod_vs_rack_pct = d.at("tnpc_pod_vs_rack_pct").get<double>();
  }
  if (d.contains("tnpc_rack_vs_traditional_pct")) {
    report.deltas.tnpc_rack_vs_traditional_pct =
        d.at("tnpc_rack_vs_traditional_pct").get<double>();
  }
  return report;
}

std::string summary_csv(const ComparisonReport& report) {
  std::string csv = "architecture,tcpc_w,tmpc_w,tnpc_w,total_w,active_cpus,active_mems\n";
  for (const ArchOutcome* outcome :
       {&report.traditional, &report.rackscale, &report.podscale}) {
    csv += to_string(outcome->kind);
    if (outcome->feasible) {
      csv += "," + fmt6(outcome->power.tcpc_w) + "," + fmt6(outcome->power.tmpc_w) +
             "," + fmt6(outcome->power.tnpc_w) + "," + fmt6(outcome->power.total_w) +
             "," + std::to_string(outcome->power.active_cpus) + "," +
             std::to_string(outcome->power.active_mems) + "\n";
    } else {
      csv += ",infeasible,infeasible,infeasible,infeasible,0,0\n";
    }
  }
  return csv;
}

std::string tiers_csv(const ComparisonReport& report) {
  std::string csv = "architecture,tier,traffic_gbps,power_w\n";
  for (const ArchOutcome* outcome :
       {&report.traditional, &report.rackscale, &report.podscale}) {
    if (!outcome->feasible) continue;
    for (Tier t : kAllTiers) {
      csv += std::string(to_string(outcome->kind)) + "," + to_string(t) + "," +
             fmt6(outcome->power.tier(t).traffic_gbps) + "," +
             fmt6(outcome->power.tier(t).power_w) + "\n";
    }
  }
  return csv;
}

void write_report(const ComparisonReport& report, ReportFormat format,
                  const std::string& destination) {
  if (format == ReportFormat::Json) {
    const std::string text = report_to_json(report);
    if (destination == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report to " + destination);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + destination);
    return;
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(destination, ec);
  if (ec) {
    throw std::runtime_error("cannot create report directory " + destination + ": " +
                             ec.message());
  }
  const std::array<std::pair<std::string, std::string>, 2> files = {{
      {"summary.csv", summary_csv(report)},
      {"tiers.csv", tiers_csv(report)},
  }};
  for (const auto& [name, text] : files) {
    const fs::path path = fs::path(destination) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace compdc
