#include "compdc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace compdc {

namespace {

using nlohmann::json;

Deci to_deci(double value) { return static_cast<Deci>(std::llround(value * 10.0)); }

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) throw std::invalid_argument("unknown config key '" + key + "' in " + where);
  }
}

ResourceSpec parse_spec(const json& obj, ResourceKind kind, const std::string& where) {
  const char* cap_key = kind == ResourceKind::Cpu ? "capacity_ghz" : "capacity_gb";
  require_keys(obj, {cap_key, "peak_power_w", "dynamic_range"}, where);
  ResourceSpec spec;
  spec.kind = kind;
  if (obj.contains(cap_key)) spec.capacity = to_deci(obj.at(cap_key).get<double>());
  if (obj.contains("peak_power_w")) spec.peak_power_w = obj.at("peak_power_w").get<double>();
  if (obj.contains("dynamic_range")) spec.dynamic_range = obj.at("dynamic_range").get<double>();
  return spec;
}

}  // namespace

const char* to_string(SolverChoice choice) {
  return choice == SolverChoice::Exact ? "exact" : "greedy";
}

SolverChoice solver_from_string(const std::string& name) {
  if (name == "exact") return SolverChoice::Exact;
  if (name == "greedy") return SolverChoice::Greedy;
  throw std::invalid_argument("unknown solver: " + name);
}

int RackCounts::for_architecture(ArchitectureKind kind) const {
  switch (kind) {
    case ArchitectureKind::Traditional: return traditional;
    case ArchitectureKind::RackScale: return rackscale;
    case ArchitectureKind::PodScale: return podscale;
  }
  return 1;
}

Topology Config::build(ArchitectureKind kind) const {
  return build_topology(kind, n_cpu, n_mem, racks.for_architecture(kind), cpu_spec,
                        mem_spec, epb);
}

Config config_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  require_keys(doc,
               {"schema_version", "seed", "workloads", "modules", "architecture",
                "racks", "cpu", "mem", "epb_pj_per_bit", "policy", "solver",
                "node_budget", "time_budget_s", "profile", "format", "out"},
               "config");

  Config cfg;
  if (doc.contains("schema_version")) {
    cfg.schema_version = doc.at("schema_version").get<int>();
    if (cfg.schema_version != 1) {
      throw std::invalid_argument("unsupported config schema_version " +
                                  std::to_string(cfg.schema_version));
    }
  }
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("workloads")) cfg.n_workloads = doc.at("workloads").get<int>();
  if (doc.contains("modules")) {
    const json& m = doc.at("modules");
    require_keys(m, {"cpu", "mem"}, "modules");
    if (m.contains("cpu")) cfg.n_cpu = m.at("cpu").get<int>();
    if (m.contains("mem")) cfg.n_mem = m.at("mem").get<int>();
  }
  if (doc.contains("architecture")) {
    cfg.architecture = doc.at("architecture").get<std::string>();
    if (cfg.architecture != "all") architecture_from_string(cfg.architecture);
  }
  if (doc.contains("racks")) {
    const json& r = doc.at("racks");
    require_keys(r, {"traditional", "rackscale", "podscale"}, "racks");
    if (r.contains("traditional")) cfg.racks.traditional = r.at("traditional").get<int>();
    if (r.contains("rackscale")) cfg.racks.rackscale = r.at("rackscale").get<int>();
    if (r.contains("podscale")) cfg.racks.podscale = r.at("podscale").get<int>();
  }
  if (doc.contains("cpu")) cfg.cpu_spec = parse_spec(doc.at("cpu"), ResourceKind::Cpu, "cpu");
  if (doc.contains("mem")) cfg.mem_spec = parse_spec(doc.at("mem"), ResourceKind::Mem, "mem");
  if (doc.contains("epb_pj_per_bit")) {
    const json& e = doc.at("epb_pj_per_bit");
    require_keys(e, {"onboard", "rack_backplane", "inter_rack", "inter_dc"}, "epb");
    for (Tier t : kAllTiers) {
      if (e.contains(to_string(t))) cfg.epb.at(t) = e.at(to_string(t)).get<double>();
    }
  }
  if (doc.contains("policy")) cfg.policy = policy_from_string(doc.at("policy").get<std::string>());
  if (doc.contains("solver")) cfg.solver = solver_from_string(doc.at("solver").get<std::string>());
  if (doc.contains("node_budget")) cfg.limits.node_budget = doc.at("node_budget").get<std::uint64_t>();
  if (doc.contains("time_budget_s")) cfg.limits.time_budget_s = doc.at("time_budget_s").get<double>();
  if (doc.contains("profile")) {
    const json& p = doc.at("profile");
    require_keys(p, {"cpu_ghz", "cpu_step_ghz", "mem_gb", "mem_step_gb", "flows_gbps"},
                 "profile");
    if (p.contains("cpu_ghz")) {
      cfg.profile.cpu_lo = to_deci(p.at("cpu_ghz").at(0).get<double>());
      cfg.profile.cpu_hi = to_deci(p.at("cpu_ghz").at(1).get<double>());
    }
    if (p.contains("cpu_step_ghz")) cfg.profile.cpu_step = to_deci(p.at("cpu_step_ghz").get<double>());
    if (p.contains("mem_gb")) {
      cfg.profile.mem_lo = to_deci(p.at("mem_gb").at(0).get<double>());
      cfg.profile.mem_hi = to_deci(p.at("mem_gb").at(1).get<double>());
    }
    if (p.contains("mem_step_gb")) cfg.profile.mem_step = to_deci(p.at("mem_step_gb").get<double>());
    if (p.contains("flows_gbps")) {
      const json& f = p.at("flows_gbps");
      require_keys(f,
                   {"cpu_mem_up", "cpu_mem_down", "cpu_io_up", "cpu_io_down",
                    "mem_io_up", "mem_io_down"},
                   "flows");
      for (FlowKind kind : kAllFlows) {
        if (f.contains(to_string(kind))) {
          cfg.profile.fixed_flows[static_cast<int>(kind)] = f.at(to_string(kind)).get<double>();
        }
      }
    }
  }
  if (doc.contains("format")) {
    cfg.format = doc.at("format").get<std::string>();
    if (cfg.format != "json" && cfg.format != "csv") {
      throw std::invalid_argument("format must be json or csv");
    }
  }
  if (doc.contains("out")) cfg.out = doc.at("out").get<std::string>();
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

}  // namespace compdc
