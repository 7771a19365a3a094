#pragma once

#include <json.hpp>

#include <string>

#include "bowlab/core_model.hpp"
#include "bowlab/workload_gen.hpp"

namespace bowlab {

// JSON wire formats. A scenario document holds "config" (public_types,
// private_type, atu_length), "instances" and "workloads"; workload
// "operations" and "required_amount" are optional. A schedule document holds
// "entries" plus whatever extras the writer attached (ignored on load).

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

nlohmann::json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& doc);
Schedule load_schedule(const std::string& path);

nlohmann::json metrics_to_json(const MetricsReport& report);

nlohmann::json gen_spec_to_json(const GenSpec& spec);
GenSpec gen_spec_from_json(const nlohmann::json& doc);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json load_json_file(const std::string& path);

}  // namespace bowlab
