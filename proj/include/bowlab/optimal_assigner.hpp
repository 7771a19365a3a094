#pragma once

#include <cstdint>
#include <vector>

#include "bowlab/cost_engine.hpp"
#include "bowlab/core_model.hpp"

namespace bowlab {

struct SolverOptions {
  std::uint64_t node_budget = 1'000'000;
};

template <class PlanT>
struct SolveResult {
  PlanT best;
  double best_z = 0.0;
  std::uint64_t nodes_explored = 0;
  bool proven_optimal = false;
};

// Optimal uniform split of d same-size workloads. Enumerates every
// (leased count, per-machine count) vector satisfying conservation and lease
// limits; ties broken by fewer leased machines, then the lexicographically
// smallest per-machine count vector in config type order.
SolveResult<EqualLengthPlan> solve_equal_length(long long d, double E, const CloudConfig& config,
                                                const SolverOptions& options = {});

// Optimal uniform split with one count per (type, size class). Branch and
// bound over types; same tie-breaking as solve_equal_length with the count
// vector flattened type-major. When the node budget runs out the incumbent is
// returned with proven_optimal=false.
SolveResult<VaryingLengthPlan> solve_varying_length(const std::vector<long long>& class_counts,
                                                    const std::vector<double>& class_sizes,
                                                    const CloudConfig& config,
                                                    const SolverOptions& options = {});

struct OracleCaps {
  std::size_t max_workloads = 8;
  std::size_t max_instances = 6;
};

// Ground truth for small inputs: walks every workload->instance mapping and
// returns the exact minimum (first mapping in lexicographic order among
// minima, workloads in bag order and instances in fleet order).
SolveResult<Assignment> brute_force_oracle(const BagOfWorkloads& bag,
                                           const std::vector<ResourceInstance>& instances,
                                           const CloudConfig& config,
                                           const OracleCaps& caps = {});

// Cost-optimal concrete assignment of a bag onto a fleet. Seeds an incumbent
// from the varying-length plan (dealt machine by machine), then refines with
// an exact per-instance search that also covers splits a uniform plan cannot
// express. proven_optimal is true when the search exhausted within budget.
SolveResult<Assignment> solve_general(const BagOfWorkloads& bag,
                                      const std::vector<ResourceInstance>& instances,
                                      const CloudConfig& config,
                                      const SolverOptions& options = {});

// Deals the workloads of each size class onto the plan's leased machines,
// in fleet order within each type. Conservation makes the dealing exact.
Assignment materialize_plan(const VaryingLengthPlan& plan, const BagOfWorkloads& bag,
                            const std::vector<ResourceInstance>& instances,
                            const CloudConfig& config);

}  // namespace bowlab
