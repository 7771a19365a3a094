#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bowlab/workload_gen.hpp"

namespace bowlab {

// One comparison run: a scale sweep (workload counts x instance counts) over
// seeds and algorithms, all generated from the same template. `gen` in the
// config file may instead name a scenario file, in which case the sweep
// collapses to that single scenario.
struct ExperimentConfig {
  GenSpec gen_template;
  std::vector<long long> workload_scales;
  std::vector<long long> instance_scales;
  std::string scenario_path;  // non-empty: load instead of generating
  std::vector<std::string> algorithms;
  std::vector<std::uint64_t> seeds;
  double batch_window = 1.0;
  std::string output_path;
  std::string output_format = "csv";
  std::string detail_path;  // optional per-workload rows
};

ExperimentConfig load_experiment_config(const std::string& path);

struct SummaryRow {
  std::string algo;
  std::string seed;  // seed number, or "mean" for aggregate rows
  long long n_workloads = 0;
  long long n_instances = 0;
  double makespan = 0.0;
  double mean_exec_time = 0.0;
  double total_cost = 0.0;
  double cost_per_workload = 0.0;
  double objective_z = 0.0;
  bool valid = false;
};

enum class RunStatus : int {
  Ok = 0,
  ConfigError = 2,
  ValidationFailure = 3,
  SolverInfeasible = 4,
};

struct RunReport {
  RunStatus status = RunStatus::Ok;
  std::vector<SummaryRow> summary;
  std::vector<SummaryRow> aggregates;  // seed-averaged per (algo, scale)
  std::string message;
};

// Runs every (seed, scale, algorithm) cell: generate (or load), schedule or
// solve, validate, measure. Writes the report file(s) named in the config and
// returns the rows. Rows are ordered by (algo, scale, seed) so identical
// configs produce identical bytes.
RunReport run_experiment(const ExperimentConfig& config);

// Fixed-header CSV rendering of summary + aggregate rows. Floats carry six
// significant digits.
std::string report_to_csv(const RunReport& report);
std::string report_to_json(const RunReport& report);

// Six-significant-digit float rendering used in all CSV output.
std::string format_sig6(double value);

const std::vector<std::string>& known_algorithms();

}  // namespace bowlab
