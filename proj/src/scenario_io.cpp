#include "bowlab/scenario_io.hpp"

#include <fstream>
#include <set>

namespace bowlab {

using nlohmann::json;

namespace {

json type_to_json(const ResourceType& t) {
  return json{{"type_id", t.type_id},
              {"speed", t.speed},
              {"cost_per_atu", t.cost_per_atu},
              {"lease_limit", t.lease_limit}};
}

ResourceType type_from_json(const json& doc, ResourceKind kind) {
  ResourceType t;
  t.type_id = doc.at("type_id").get<std::string>();
  t.kind = kind;
  t.speed = doc.at("speed").get<double>();
  t.cost_per_atu = doc.at("cost_per_atu").get<double>();
  t.lease_limit = doc.at("lease_limit").get<long long>();
  return t;
}

}  // namespace

json scenario_to_json(const Scenario& scenario) {
  json config;
  config["atu_length"] = scenario.config.atu_length();
  config["public_types"] = json::array();
  for (const ResourceType* t : scenario.config.public_types())
    config["public_types"].push_back(type_to_json(*t));
  config["private_type"] = type_to_json(scenario.config.private_type());

  json instances = json::array();
  for (const auto& inst : scenario.instances)
    instances.push_back(json{{"instance_id", inst.instance_id}, {"type_id", inst.type_id}});

  json workloads = json::array();
  for (const auto& w : scenario.bag.workloads()) {
    json ops = json::array();
    for (const auto& op : w.operations()) {
      json eligible = json::array();
      for (const auto& id : op.eligible_resources()) eligible.push_back(id);
      ops.push_back(json{{"op_index", op.op_index()},
                         {"base_time", op.base_time()},
                         {"eligible_resources", eligible}});
    }
    workloads.push_back(json{{"workload_id", w.workload_id()},
                             {"exec_time", w.exec_time()},
                             {"delivery_date", w.delivery_date()},
                             {"required_amount", w.required_amount()},
                             {"operations", ops}});
  }

  return json{{"config", config}, {"instances", instances}, {"workloads", workloads}};
}

Scenario scenario_from_json(const json& doc) {
  const json& config_doc = doc.at("config");
  std::vector<ResourceType> types;
  if (config_doc.contains("public_types"))
    for (const auto& t : config_doc.at("public_types"))
      types.push_back(type_from_json(t, ResourceKind::Public));
  types.push_back(type_from_json(config_doc.at("private_type"), ResourceKind::Private));
  CloudConfig config(std::move(types), config_doc.value("atu_length", 1.0));

  std::vector<ResourceInstance> instances;
  for (const auto& inst : doc.value("instances", json::array()))
    instances.push_back(
        {inst.at("instance_id").get<std::string>(), inst.at("type_id").get<std::string>()});
  validate_fleet(instances, config);

  std::vector<Workload> workloads;
  for (const auto& w : doc.value("workloads", json::array())) {
    std::vector<Operation> ops;
    for (const auto& op : w.value("operations", json::array())) {
      std::set<std::string> eligible;
      for (const auto& id : op.at("eligible_resources")) eligible.insert(id.get<std::string>());
      ops.emplace_back(op.at("op_index").get<int>(), op.at("base_time").get<double>(),
                       std::move(eligible));
    }
    workloads.emplace_back(w.at("workload_id").get<std::string>(),
                           w.at("exec_time").get<double>(),
                           w.value("delivery_date", 0.0),
                           w.value("required_amount", 0.0),
                           std::move(ops));
  }

  return Scenario{std::move(config), std::move(instances), BagOfWorkloads(std::move(workloads))};
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(load_json_file(path));
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  write_text_file(path, scenario_to_json(scenario).dump(2) + "\n");
}

json schedule_to_json(const Schedule& schedule) {
  json entries = json::array();
  for (const auto& e : schedule.entries)
    entries.push_back(json{{"workload_id", e.workload_id},
                           {"op_index", e.op_index},
                           {"instance_id", e.instance_id},
                           {"start", e.start},
                           {"end", e.end}});
  return json{{"entries", entries}};
}

Schedule schedule_from_json(const json& doc) {
  Schedule out;
  for (const auto& e : doc.at("entries")) {
    out.entries.push_back({e.at("workload_id").get<std::string>(), e.at("op_index").get<int>(),
                           e.at("instance_id").get<std::string>(), e.at("start").get<double>(),
                           e.at("end").get<double>()});
  }
  return out;
}

Schedule load_schedule(const std::string& path) {
  return schedule_from_json(load_json_file(path));
}

json metrics_to_json(const MetricsReport& report) {
  json per_instance = json::object();
  for (const auto& [id, m] : report.per_instance)
    per_instance[id] = json{{"busy_time", m.busy_time},
                            {"atus_billed", m.atus_billed},
                            {"cost", m.cost},
                            {"z_contribution", m.z_contribution}};
  return json{{"makespan", report.makespan},
              {"mean_exec_time", report.mean_exec_time},
              {"total_cost", report.total_cost},
              {"cost_per_workload", report.cost_per_workload},
              {"objective_z", report.objective_z},
              {"per_instance", per_instance}};
}

json gen_spec_to_json(const GenSpec& spec) {
  return json{{"seed", spec.seed},
              {"n_workloads", spec.n_workloads},
              {"n_instances", spec.n_instances},
              {"n_public_types", spec.n_public_types},
              {"exec_time_range", {spec.exec_time_range.lo, spec.exec_time_range.hi}},
              {"delivery_window", spec.delivery_window},
              {"ops_per_workload_range",
               {spec.ops_per_workload_range.lo, spec.ops_per_workload_range.hi}},
              {"speed_range", {spec.speed_range.lo, spec.speed_range.hi}},
              {"cost_range", {spec.cost_range.lo, spec.cost_range.hi}},
              {"eligibility_density", spec.eligibility_density}};
}

GenSpec gen_spec_from_json(const json& doc) {
  GenSpec spec;
  spec.seed = doc.value("seed", spec.seed);
  if (doc.contains("n_workloads")) spec.n_workloads = doc.at("n_workloads").get<long long>();
  if (doc.contains("n_instances")) spec.n_instances = doc.at("n_instances").get<long long>();
  spec.n_public_types = doc.value("n_public_types", spec.n_public_types);
  auto range = [&doc](const char* key, Range fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& r = doc.at(key);
    return Range{r.at(0).get<double>(), r.at(1).get<double>()};
  };
  spec.exec_time_range = range("exec_time_range", spec.exec_time_range);
  spec.speed_range = range("speed_range", spec.speed_range);
  spec.cost_range = range("cost_range", spec.cost_range);
  spec.delivery_window = doc.value("delivery_window", spec.delivery_window);
  if (doc.contains("ops_per_workload_range")) {
    const auto& r = doc.at("ops_per_workload_range");
    spec.ops_per_workload_range = IntRange{r.at(0).get<long long>(), r.at(1).get<long long>()};
  }
  spec.eligibility_density = doc.value("eligibility_density", spec.eligibility_density);
  return spec;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, path + ": " + e.what());
  }
  return doc;
}

}  // namespace bowlab
