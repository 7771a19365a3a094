#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bowlab/core_model.hpp"

namespace bowlab {

enum class ViolationKind {
  Overlap,
  Precedence,
  DurationMismatch,
  NegativeTime,
  UnknownReference,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> entry_indices;  // offending positions in Schedule::entries
  std::string description;
};

// Replays a schedule against the machine rules: one workload per machine at a
// time, no preemption, in-order operations per workload, durations fixed by
// machine speed, every operation placed exactly once. Returns every violation
// found; an empty list means the schedule is valid.
std::vector<Violation> validate_schedule(const Schedule& schedule,
                                         const std::vector<Workload>& workloads,
                                         const std::vector<ResourceInstance>& instances,
                                         const CloudConfig& config);

// Billing and timing summary of a valid schedule. Each used machine is billed
// for its contiguous wall-clock span (first start to last end), public
// machines per ceiling-rounded ATU. Throws InvalidSchedule when
// validate_schedule reports anything.
MetricsReport compute_metrics(const Schedule& schedule, const std::vector<Workload>& workloads,
                              const std::vector<ResourceInstance>& instances,
                              const CloudConfig& config);

// Expands an assignment into the schedule it stands for: each machine runs
// its workloads back to back from t=0, workloads in id order, operations in
// order. Ends are computed as cumulative load over speed so a machine's span
// equals its processing time exactly.
Schedule schedule_from_assignment(const Assignment& assignment, const BagOfWorkloads& bag,
                                  const std::vector<ResourceInstance>& instances,
                                  const CloudConfig& config);

}  // namespace bowlab
