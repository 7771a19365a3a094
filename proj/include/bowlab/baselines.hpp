#pragma once

#include <vector>

#include "bowlab/core_model.hpp"

namespace bowlab {

// First-come-first-served: workloads in id order, every operation on the
// lowest-id eligible machine, starting as soon as machine and predecessor
// allow.
Schedule fcfs_schedule(const std::vector<Workload>& workloads,
                       const std::vector<ResourceInstance>& instances,
                       const CloudConfig& config);

// Classic list heuristics over whole workloads. Each round computes every
// unscheduled workload's minimum completion time across the machines eligible
// for all of its operations; Min-Min schedules the workload with the smallest
// such value, Max-Min the largest. A workload runs start-to-finish on one
// machine. Ties take the lowest workload id, then the lowest instance id.
Schedule min_min_schedule(const std::vector<Workload>& workloads,
                          const std::vector<ResourceInstance>& instances,
                          const CloudConfig& config);

Schedule max_min_schedule(const std::vector<Workload>& workloads,
                          const std::vector<ResourceInstance>& instances,
                          const CloudConfig& config);

}  // namespace bowlab
