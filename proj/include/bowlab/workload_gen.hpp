#pragma once

#include <cstdint>
#include <vector>

#include "bowlab/core_model.hpp"

namespace bowlab {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct IntRange {
  long long lo = 0;
  long long hi = 0;
};

// Knobs for one synthetic scenario. All draws are uniform over the stated
// ranges; identical specs produce identical scenarios.
struct GenSpec {
  std::uint64_t seed = 42;
  long long n_workloads = 100;
  long long n_instances = 50;
  long long n_public_types = 3;
  Range exec_time_range{5.0, 50.0};
  double delivery_window = 1.0;
  IntRange ops_per_workload_range{1, 1};
  Range speed_range{1.0, 4.0};
  Range cost_range{1.0, 5.0};
  double eligibility_density = 1.0;
};

struct Scenario {
  CloudConfig config;
  std::vector<ResourceInstance> instances;
  BagOfWorkloads bag;
};

// Draws a full scenario from the spec: public type speeds/costs, the private
// type, one type per instance (lease limits set to the counts actually
// drawn), then per workload its size, delivery date, operation split and
// per-operation eligibility (at least one machine forced). The draw order is
// fixed, so a seed pins the scenario byte for byte.
Scenario generate(const GenSpec& spec);

}  // namespace bowlab
