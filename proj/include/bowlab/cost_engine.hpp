#pragma once

#include <map>
#include <string>
#include <vector>

#include "bowlab/core_model.hpp"

namespace bowlab {

// ATUs billed for keeping a machine of the given kind for `time` time-units.
// Public machines bill whole ATUs (ceiling, with a small tolerance so that a
// span of exactly k ATUs never rounds to k+1); private machines bill the
// exact fraction. Zero time bills zero for both kinds.
double billed_atus(double time, ResourceKind kind, double atu_length);

// Price of keeping a machine of type `rtype` for `time` time-units.
double cost_for_time(double time, const ResourceType& rtype, double atu_length);

// Time to process `load` work-units on one machine of the given type.
double resource_time(double load, const ResourceType& rtype);

// Price of processing `load` work-units on one machine of the given type.
double resource_cost(double load, const ResourceType& rtype, double atu_length);

// Cost x time of one machine processing `load` work-units.
double load_z(double load, const ResourceType& rtype, double atu_length);

// Sum over used instances of cost x time under the given assignment.
double objective_z(const Assignment& assignment, const BagOfWorkloads& bag,
                   const std::vector<ResourceInstance>& instances, const CloudConfig& config);

// Uniform split of same-size workloads: every leased machine of a type runs
// exactly q of them.
struct EqualLengthPlan {
  std::map<std::string, long long> per_type_q;       // type_id -> workloads per machine
  std::map<std::string, long long> per_type_leased;  // type_id -> machines leased

  long long q_for(const std::string& type_id) const;
  long long leased_for(const std::string& type_id) const;
};

// Uniform split with one count per (type, size class): every leased machine
// of a type runs q[a] workloads of size class a.
struct VaryingLengthPlan {
  std::map<std::string, std::vector<long long>> per_type_class_q;
  std::map<std::string, long long> per_type_leased;

  long long q_for(const std::string& type_id, std::size_t class_index) const;
  long long leased_for(const std::string& type_id) const;
};

// Objective value of an equal-length plan for d workloads of size E.
// Throws PlanInfeasible when counts are negative, exceed lease limits or do
// not conserve d.
double equal_length_z(const EqualLengthPlan& plan, long long d, double E,
                      const CloudConfig& config);

// Objective value of a varying-length plan against per-class counts.
double varying_length_z(const VaryingLengthPlan& plan,
                        const std::vector<long long>& class_counts,
                        const std::vector<double>& class_sizes, const CloudConfig& config);

}  // namespace bowlab
