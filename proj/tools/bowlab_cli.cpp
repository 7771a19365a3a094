#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include "bowlab/baselines.hpp"
#include "bowlab/edbrs.hpp"
#include "bowlab/experiment.hpp"
#include "bowlab/optimal_assigner.hpp"
#include "bowlab/scenario_io.hpp"
#include "bowlab/sim_engine.hpp"
#include "bowlab/workload_gen.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitValidationFailure = 3;
constexpr int kExitInfeasible = 4;

int exit_code_for(const bowlab::Error& e) {
  switch (e.code()) {
    case bowlab::ErrorCode::InvalidSchedule:
      return kExitValidationFailure;
    case bowlab::ErrorCode::Infeasible:
    case bowlab::ErrorCode::NoEligibleResource:
      return kExitInfeasible;
    default:
      return kExitConfigError;
  }
}

struct ScenarioArgs {
  std::string path;
  std::string gen_config;
  std::uint64_t seed = 42;
  long long workloads = 100;
  long long instances = 50;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args, bool with_gen_config) {
  cmd->add_option("scenario", args.path, "scenario JSON file (generated when omitted)");
  cmd->add_option("--seed", args.seed, "generator seed");
  cmd->add_option("--workloads", args.workloads, "number of workloads to generate");
  cmd->add_option("--instances", args.instances, "number of machines to generate");
  if (with_gen_config)
    cmd->add_option("--config", args.gen_config, "generator spec JSON overriding the defaults");
}

bowlab::Scenario resolve_scenario(const ScenarioArgs& args) {
  if (!args.path.empty()) return bowlab::load_scenario(args.path);
  bowlab::GenSpec spec;
  if (!args.gen_config.empty()) spec = bowlab::gen_spec_from_json(bowlab::load_json_file(args.gen_config));
  spec.seed = args.seed;
  spec.n_workloads = args.workloads;
  spec.n_instances = args.instances;
  return bowlab::generate(spec);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    bowlab::write_text_file(out_path, text);
}

json plan_to_json(const bowlab::EqualLengthPlan& plan) {
  return json{{"per_type_q", plan.per_type_q}, {"per_type_leased", plan.per_type_leased}};
}

json plan_to_json(const bowlab::VaryingLengthPlan& plan) {
  return json{{"per_type_class_q", plan.per_type_class_q},
              {"per_type_leased", plan.per_type_leased}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bowlab: multi-cloud bag-of-workloads scheduling laboratory"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a scenario file");
  ScenarioArgs gen_args;
  std::string gen_out;
  gen_cmd->add_option("--seed", gen_args.seed, "generator seed");
  gen_cmd->add_option("--workloads", gen_args.workloads, "number of workloads");
  gen_cmd->add_option("--instances", gen_args.instances, "number of machines");
  gen_cmd->add_option("--config", gen_args.gen_config, "generator spec JSON overriding defaults");
  gen_cmd->add_option("--out", gen_out, "output scenario path")->required();

  // schedule
  auto* sched_cmd = app.add_subcommand("schedule", "run one scheduler on a scenario");
  ScenarioArgs sched_args;
  std::string sched_algo = "edbrs";
  double sched_window = 1.0;
  std::string sched_out;
  std::string sched_format = "json";
  add_scenario_options(sched_cmd, sched_args, true);
  sched_cmd->add_option("--algo", sched_algo, "edbrs | fcfs | minmin | maxmin");
  sched_cmd->add_option("--batch-window", sched_window, "delivery-date window width");
  sched_cmd->add_option("--out", sched_out, "output path (stdout when omitted)");
  sched_cmd->add_option("--format", sched_format, "json | csv");

  // solve-equal
  auto* eq_cmd = app.add_subcommand("solve-equal", "optimal uniform split, same-size workloads");
  ScenarioArgs eq_args;
  std::string eq_out;
  add_scenario_options(eq_cmd, eq_args, true);
  eq_cmd->add_option("--out", eq_out, "output path (stdout when omitted)");

  // solve-vary
  auto* vary_cmd = app.add_subcommand("solve-vary", "optimal uniform split per size class");
  ScenarioArgs vary_args;
  std::string vary_out;
  add_scenario_options(vary_cmd, vary_args, true);
  vary_cmd->add_option("--out", vary_out, "output path (stdout when omitted)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive optimum for small scenarios");
  ScenarioArgs oracle_args;
  oracle_args.workloads = 6;
  oracle_args.instances = 4;
  std::string oracle_out;
  add_scenario_options(oracle_cmd, oracle_args, true);
  oracle_cmd->add_option("--out", oracle_out, "output path (stdout when omitted)");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "run the full experiment matrix");
  std::string cmp_config;
  std::string cmp_out;
  std::string cmp_format;
  cmp_cmd->add_option("--config", cmp_config, "experiment config JSON")->required();
  cmp_cmd->add_option("--out", cmp_out, "override the configured output path");
  cmp_cmd->add_option("--format", cmp_format, "override the configured format (csv | json)");

  // validate
  auto* val_cmd = app.add_subcommand("validate", "check a schedule file against a scenario");
  std::string val_scenario;
  std::string val_schedule;
  val_cmd->add_option("scenario", val_scenario, "scenario JSON file")->required();
  val_cmd->add_option("schedule", val_schedule, "schedule JSON file")->required();

  try {
    app.parse(argc, argv);

    if (*gen_cmd) {
      bowlab::GenSpec spec;
      if (!gen_args.gen_config.empty())
        spec = bowlab::gen_spec_from_json(bowlab::load_json_file(gen_args.gen_config));
      spec.seed = gen_args.seed;
      spec.n_workloads = gen_args.workloads;
      spec.n_instances = gen_args.instances;
      bowlab::save_scenario(bowlab::generate(spec), gen_out);
      std::cout << "wrote " << gen_out << "\n";
      return kExitOk;
    }

    if (*sched_cmd) {
      bowlab::Scenario scenario = resolve_scenario(sched_args);
      const auto& workloads = scenario.bag.workloads();
      bowlab::Schedule schedule;
      if (sched_algo == "edbrs")
        schedule = bowlab::edbrs_schedule(workloads, scenario.instances, scenario.config,
                                          sched_window)
                       .first;
      else if (sched_algo == "fcfs")
        schedule = bowlab::fcfs_schedule(workloads, scenario.instances, scenario.config);
      else if (sched_algo == "minmin")
        schedule = bowlab::min_min_schedule(workloads, scenario.instances, scenario.config);
      else if (sched_algo == "maxmin")
        schedule = bowlab::max_min_schedule(workloads, scenario.instances, scenario.config);
      else
        throw bowlab::Error(bowlab::ErrorCode::InvalidConfig,
                            "unknown algorithm: " + sched_algo);
      auto metrics =
          bowlab::compute_metrics(schedule, workloads, scenario.instances, scenario.config);

      if (sched_format == "csv") {
        std::uint64_t seed_label = sched_args.path.empty() ? sched_args.seed : 0;
        std::ostringstream os;
        os << "algo,seed,n_workloads,n_instances,makespan,mean_exec_time,total_cost,"
              "cost_per_workload,objective_z,valid\n"
           << sched_algo << ',' << seed_label << ',' << scenario.bag.size() << ','
           << scenario.instances.size() << ',' << bowlab::format_sig6(metrics.makespan) << ','
           << bowlab::format_sig6(metrics.mean_exec_time) << ','
           << bowlab::format_sig6(metrics.total_cost) << ','
           << bowlab::format_sig6(metrics.cost_per_workload) << ','
           << bowlab::format_sig6(metrics.objective_z) << ",1\n";
        emit(os.str(), sched_out);
      } else {
        json doc;
        doc["algo"] = sched_algo;
        doc["batch_window"] = sched_window;
        doc["entries"] = bowlab::schedule_to_json(schedule)["entries"];
        doc["metrics"] = bowlab::metrics_to_json(metrics);
        emit(doc.dump(2) + "\n", sched_out);
      }
      return kExitOk;
    }

    if (*eq_cmd) {
      bowlab::Scenario scenario = resolve_scenario(eq_args);
      auto classes = bowlab::size_classes(scenario.bag);
      if (classes.sizes.size() != 1)
        throw bowlab::Error(bowlab::ErrorCode::InvalidConfig,
                            "scenario holds more than one workload size; use solve-vary");
      auto result = bowlab::solve_equal_length(classes.counts[0], classes.sizes[0],
                                               scenario.config);
      json doc{{"d", classes.counts[0]},
               {"E", classes.sizes[0]},
               {"plan", plan_to_json(result.best)},
               {"objective_z", result.best_z},
               {"nodes_explored", result.nodes_explored},
               {"proven_optimal", result.proven_optimal}};
      emit(doc.dump(2) + "\n", eq_out);
      return kExitOk;
    }

    if (*vary_cmd) {
      bowlab::Scenario scenario = resolve_scenario(vary_args);
      auto classes = bowlab::size_classes(scenario.bag);
      auto result =
          bowlab::solve_varying_length(classes.counts, classes.sizes, scenario.config);
      json doc{{"class_sizes", classes.sizes},
               {"class_counts", classes.counts},
               {"plan", plan_to_json(result.best)},
               {"objective_z", result.best_z},
               {"nodes_explored", result.nodes_explored},
               {"proven_optimal", result.proven_optimal}};
      emit(doc.dump(2) + "\n", vary_out);
      return kExitOk;
    }

    if (*oracle_cmd) {
      bowlab::Scenario scenario = resolve_scenario(oracle_args);
      auto result =
          bowlab::brute_force_oracle(scenario.bag, scenario.instances, scenario.config);
      json doc{{"assignment", result.best.mapping},
               {"objective_z", result.best_z},
               {"mappings_evaluated", result.nodes_explored},
               {"proven_optimal", result.proven_optimal}};
      emit(doc.dump(2) + "\n", oracle_out);
      return kExitOk;
    }

    if (*cmp_cmd) {
      auto config = bowlab::load_experiment_config(cmp_config);
      if (!cmp_out.empty()) config.output_path = cmp_out;
      if (!cmp_format.empty()) config.output_format = cmp_format;
      auto report = bowlab::run_experiment(config);
      if (report.status != bowlab::RunStatus::Ok)
        std::cerr << "compare: " << report.message << "\n";
      else
        std::cout << "wrote " << config.output_path << " (" << report.summary.size()
                  << " rows, " << report.aggregates.size() << " aggregates)\n";
      return static_cast<int>(report.status);
    }

    if (*val_cmd) {
      bowlab::Scenario scenario = bowlab::load_scenario(val_scenario);
      bowlab::Schedule schedule = bowlab::load_schedule(val_schedule);
      auto violations = bowlab::validate_schedule(schedule, scenario.bag.workloads(),
                                                  scenario.instances, scenario.config);
      if (violations.empty()) {
        std::cout << "ok\n";
        return kExitOk;
      }
      for (const auto& v : violations)
        std::cout << bowlab::to_string(v.kind) << ": " << v.description << "\n";
      return kExitValidationFailure;
    }
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  } catch (const bowlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}
