#include "bowlab/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "bowlab/baselines.hpp"
#include "bowlab/edbrs.hpp"
#include "bowlab/optimal_assigner.hpp"
#include "bowlab/scenario_io.hpp"
#include "bowlab/sim_engine.hpp"

namespace bowlab {

using nlohmann::json;

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> algos{"edbrs", "fcfs", "minmin", "maxmin", "optimal"};
  return algos;
}

std::string format_sig6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  json doc = load_json_file(path);
  ExperimentConfig config;

  const json& gen = doc.at("gen");
  if (gen.is_string()) {
    config.scenario_path = gen.get<std::string>();
    config.workload_scales = {0};
    config.instance_scales = {0};
  } else {
    json scalar_gen = gen;  // scale axes may be arrays; the template takes the first point
    for (const char* key : {"n_workloads", "n_instances"})
      if (scalar_gen.contains(key) && scalar_gen.at(key).is_array())
        scalar_gen[key] = scalar_gen.at(key).at(0);
    config.gen_template = gen_spec_from_json(scalar_gen);
    auto scales = [&gen](const char* key, long long fallback) {
      std::vector<long long> out;
      if (gen.contains(key) && gen.at(key).is_array())
        for (const auto& v : gen.at(key)) out.push_back(v.get<long long>());
      else if (gen.contains(key))
        out.push_back(gen.at(key).get<long long>());
      else
        out.push_back(fallback);
      return out;
    };
    config.workload_scales = scales("n_workloads", config.gen_template.n_workloads);
    config.instance_scales = scales("n_instances", config.gen_template.n_instances);
  }

  for (const auto& a : doc.at("algorithms")) config.algorithms.push_back(a.get<std::string>());
  if (doc.contains("seeds"))
    for (const auto& s : doc.at("seeds")) config.seeds.push_back(s.get<std::uint64_t>());
  config.batch_window = doc.value("batch_window", 1.0);

  const json& output = doc.at("output");
  config.output_path = output.at("path").get<std::string>();
  config.output_format = output.value("format", "csv");
  config.detail_path = output.value("detail", "");
  return config;
}

namespace {

struct DetailRow {
  std::string algo;
  std::string seed;
  long long n_workloads;
  long long n_instances;
  std::string workload_id;
  double first_start;
  double completion;
};

std::string config_problems(const ExperimentConfig& config) {
  if (config.algorithms.empty()) return "at least one algorithm is required";
  for (const auto& a : config.algorithms) {
    const auto& known = known_algorithms();
    if (std::find(known.begin(), known.end(), a) == known.end())
      return "unknown algorithm: " + a;
  }
  if (config.output_format != "csv" && config.output_format != "json")
    return "output format must be csv or json";
  if (config.output_path.empty()) return "output path is required";
  if (!(config.batch_window > 0.0)) return "batch_window must be > 0";
  bool wants_optimal = std::find(config.algorithms.begin(), config.algorithms.end(),
                                 "optimal") != config.algorithms.end();
  if (wants_optimal && config.scenario_path.empty()) {
    OracleCaps caps;
    for (long long nw : config.workload_scales)
      if (nw > static_cast<long long>(caps.max_workloads))
        return "optimal is only allowed within oracle caps (workloads)";
    for (long long ni : config.instance_scales)
      if (ni > static_cast<long long>(caps.max_instances))
        return "optimal is only allowed within oracle caps (instances)";
  }
  if (config.scenario_path.empty() && config.seeds.empty()) return "at least one seed is required";
  return "";
}

Schedule run_algorithm(const std::string& algo, const Scenario& scenario, double batch_window) {
  const auto& workloads = scenario.bag.workloads();
  if (algo == "edbrs")
    return edbrs_schedule(workloads, scenario.instances, scenario.config, batch_window).first;
  if (algo == "fcfs") return fcfs_schedule(workloads, scenario.instances, scenario.config);
  if (algo == "minmin") return min_min_schedule(workloads, scenario.instances, scenario.config);
  if (algo == "maxmin") return max_min_schedule(workloads, scenario.instances, scenario.config);
  auto solved = solve_general(scenario.bag, scenario.instances, scenario.config);
  return schedule_from_assignment(solved.best, scenario.bag, scenario.instances, scenario.config);
}

bool row_before(const SummaryRow& a, const SummaryRow& b) {
  if (a.algo != b.algo) return a.algo < b.algo;
  if (a.n_workloads != b.n_workloads) return a.n_workloads < b.n_workloads;
  if (a.n_instances != b.n_instances) return a.n_instances < b.n_instances;
  // length-then-lexicographic orders plain decimal seeds numerically
  if (a.seed.size() != b.seed.size()) return a.seed.size() < b.seed.size();
  return a.seed < b.seed;
}

void append_row_fields(std::ostringstream& os, const SummaryRow& row) {
  os << row.algo << ',' << row.seed << ',' << row.n_workloads << ',' << row.n_instances << ','
     << format_sig6(row.makespan) << ',' << format_sig6(row.mean_exec_time) << ','
     << format_sig6(row.total_cost) << ',' << format_sig6(row.cost_per_workload) << ','
     << format_sig6(row.objective_z) << ',' << (row.valid ? 1 : 0) << '\n';
}

json row_to_json(const SummaryRow& row) {
  return json{{"algo", row.algo},
              {"seed", row.seed},
              {"n_workloads", row.n_workloads},
              {"n_instances", row.n_instances},
              {"makespan", row.makespan},
              {"mean_exec_time", row.mean_exec_time},
              {"total_cost", row.total_cost},
              {"cost_per_workload", row.cost_per_workload},
              {"objective_z", row.objective_z},
              {"valid", row.valid}};
}

}  // namespace

std::string report_to_csv(const RunReport& report) {
  std::ostringstream os;
  os << "algo,seed,n_workloads,n_instances,makespan,mean_exec_time,total_cost,"
        "cost_per_workload,objective_z,valid\n";
  for (const auto& row : report.summary) append_row_fields(os, row);
  for (const auto& row : report.aggregates) append_row_fields(os, row);
  return os.str();
}

std::string report_to_json(const RunReport& report) {
  json doc;
  doc["summary"] = json::array();
  for (const auto& row : report.summary) doc["summary"].push_back(row_to_json(row));
  doc["aggregates"] = json::array();
  for (const auto& row : report.aggregates) doc["aggregates"].push_back(row_to_json(row));
  return doc.dump(2) + "\n";
}

RunReport run_experiment(const ExperimentConfig& config) {
  RunReport report;
  report.message = config_problems(config);
  if (!report.message.empty()) {
    report.status = RunStatus::ConfigError;
    return report;
  }

  std::vector<DetailRow> details;
  std::optional<Scenario> preloaded;
  if (!config.scenario_path.empty()) preloaded = load_scenario(config.scenario_path);

  std::vector<std::uint64_t> seeds = config.seeds;
  if (preloaded) seeds = {0};  // single cell, no generation

  for (long long nw : config.workload_scales) {
    for (long long ni : config.instance_scales) {
      for (std::uint64_t seed : seeds) {
        Scenario cell = preloaded ? *preloaded : [&] {
          GenSpec spec = config.gen_template;
          spec.seed = seed;
          spec.n_workloads = nw;
          spec.n_instances = ni;
          return generate(spec);
        }();

        for (const auto& algo : config.algorithms) {
          SummaryRow row;
          row.algo = algo;
          row.seed = std::to_string(seed);
          row.n_workloads = static_cast<long long>(cell.bag.size());
          row.n_instances = static_cast<long long>(cell.instances.size());
          try {
            Schedule schedule = run_algorithm(algo, cell, config.batch_window);
            auto violations =
                validate_schedule(schedule, cell.bag.workloads(), cell.instances, cell.config);
            if (!violations.empty()) {
              row.valid = false;
              report.status = RunStatus::ValidationFailure;
              report.message = algo + " seed " + std::to_string(seed) + ": " +
                               violations.front().description;
              report.summary.push_back(row);
              continue;
            }
            MetricsReport metrics =
                compute_metrics(schedule, cell.bag.workloads(), cell.instances, cell.config);
            row.makespan = metrics.makespan;
            row.mean_exec_time = metrics.mean_exec_time;
            row.total_cost = metrics.total_cost;
            row.cost_per_workload = metrics.cost_per_workload;
            row.objective_z = metrics.objective_z;
            row.valid = true;
            report.summary.push_back(row);

            if (!config.detail_path.empty()) {
              std::map<std::string, std::pair<double, double>> flow;
              for (const auto& e : schedule.entries) {
                auto it = flow.find(e.workload_id);
                if (it == flow.end())
                  flow[e.workload_id] = {e.start, e.end};
                else {
                  it->second.first = std::min(it->second.first, e.start);
                  it->second.second = std::max(it->second.second, e.end);
                }
              }
              for (const auto& [id, span] : flow)
                details.push_back({algo, std::to_string(seed), row.n_workloads, row.n_instances,
                                   id, span.first, span.second});
            }
          } catch (const Error& e) {
            if (e.code() == ErrorCode::Infeasible || e.code() == ErrorCode::TooLargeForOracle ||
                e.code() == ErrorCode::NoEligibleResource) {
              report.status = RunStatus::SolverInfeasible;
              report.message = algo + " seed " + std::to_string(seed) + ": " + e.what();
              row.valid = false;
              report.summary.push_back(row);
            } else {
              throw;
            }
          }
        }
      }
    }
  }

  // Seed-averaged aggregates per (algorithm, scale).
  std::map<std::tuple<std::string, long long, long long>, std::vector<const SummaryRow*>> groups;
  for (const auto& row : report.summary)
    groups[{row.algo, row.n_workloads, row.n_instances}].push_back(&row);
  for (const auto& [key, rows] : groups) {
    SummaryRow agg;
    agg.algo = std::get<0>(key);
    agg.seed = "mean";
    agg.n_workloads = std::get<1>(key);
    agg.n_instances = std::get<2>(key);
    agg.valid = true;
    double n = static_cast<double>(rows.size());
    for (const SummaryRow* r : rows) {
      agg.makespan += r->makespan / n;
      agg.mean_exec_time += r->mean_exec_time / n;
      agg.total_cost += r->total_cost / n;
      agg.cost_per_workload += r->cost_per_workload / n;
      agg.objective_z += r->objective_z / n;
      agg.valid = agg.valid && r->valid;
    }
    report.aggregates.push_back(agg);
  }

  std::sort(report.summary.begin(), report.summary.end(), row_before);
  std::sort(report.aggregates.begin(), report.aggregates.end(), row_before);

  write_text_file(config.output_path, config.output_format == "json" ? report_to_json(report)
                                                                     : report_to_csv(report));
  if (!config.detail_path.empty()) {
    std::sort(details.begin(), details.end(), [](const DetailRow& a, const DetailRow& b) {
      return std::tie(a.algo, a.n_workloads, a.n_instances, a.seed, a.workload_id) <
             std::tie(b.algo, b.n_workloads, b.n_instances, b.seed, b.workload_id);
    });
    std::ostringstream os;
    os << "algo,seed,n_workloads,n_instances,workload_id,first_start,completion,flow\n";
    for (const auto& d : details)
      os << d.algo << ',' << d.seed << ',' << d.n_workloads << ',' << d.n_instances << ','
         << d.workload_id << ',' << format_sig6(d.first_start) << ','
         << format_sig6(d.completion) << ',' << format_sig6(d.completion - d.first_start)
         << '\n';
    write_text_file(config.detail_path, os.str());
  }
  return report;
}

}  // namespace bowlab
