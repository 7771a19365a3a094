#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bowlab/errors.hpp"

namespace bowlab {

// Relative tolerance used for all floating-point consistency checks.
inline constexpr double kRelTol = 1e-9;

inline bool nearly_equal(double a, double b, double rel_tol = kRelTol) {
  double scale = std::max(1.0, std::max(a < 0 ? -a : a, b < 0 ? -b : b));
  double diff = a - b;
  if (diff < 0) diff = -diff;
  return diff <= rel_tol * scale;
}

enum class ResourceKind { Public, Private };

const char* to_string(ResourceKind kind);

// One rentable resource class: work-units per time-unit, price per ATU and
// how many machines of this class may be leased at once.
struct ResourceType {
  std::string type_id;
  ResourceKind kind = ResourceKind::Public;
  double speed = 1.0;
  double cost_per_atu = 0.0;
  long long lease_limit = 0;

  // Violated-invariant descriptions, empty when the type is well formed.
  std::vector<std::string> violations() const;
};

// The full multi-cloud offer: any number of public classes plus exactly one
// consumer-owned private class. Public machines bill per ceiling-rounded ATU.
class CloudConfig {
 public:
  CloudConfig(std::vector<ResourceType> types, double atu_length = 1.0);

  const std::vector<ResourceType>& types() const { return types_; }
  double atu_length() const { return atu_length_; }

  std::vector<const ResourceType*> public_types() const;
  const ResourceType& private_type() const;
  const ResourceType& type_of(const std::string& type_id) const;
  bool has_type(const std::string& type_id) const;

 private:
  std::vector<ResourceType> types_;
  double atu_length_ = 1.0;
};

// Draft-level validation: reports every violated invariant instead of
// throwing, so malformed input files can be diagnosed in one pass.
std::vector<std::string> validate_config(const std::vector<ResourceType>& types,
                                         double atu_length);

class Operation {
 public:
  Operation(int op_index, double base_time, std::set<std::string> eligible_resources);

  int op_index() const { return op_index_; }
  double base_time() const { return base_time_; }
  const std::set<std::string>& eligible_resources() const { return eligible_resources_; }

 private:
  int op_index_;
  double base_time_;
  std::set<std::string> eligible_resources_;
};

class Workload {
 public:
  Workload(std::string workload_id, double exec_time, double delivery_date,
           double required_amount, std::vector<Operation> operations);

  const std::string& workload_id() const { return workload_id_; }
  double exec_time() const { return exec_time_; }
  double delivery_date() const { return delivery_date_; }
  double required_amount() const { return required_amount_; }
  const std::vector<Operation>& operations() const { return operations_; }

  // Sum of operation base times; equals exec_time when operations are present.
  double total_processing_time() const;

 private:
  std::string workload_id_;
  double exec_time_;
  double delivery_date_;
  double required_amount_;
  std::vector<Operation> operations_;
};

class BagOfWorkloads {
 public:
  explicit BagOfWorkloads(std::vector<Workload> workloads);

  const std::vector<Workload>& workloads() const { return workloads_; }
  std::size_t size() const { return workloads_.size(); }
  bool empty() const { return workloads_.empty(); }

 private:
  std::vector<Workload> workloads_;
};

// Distinct execution-time values (ascending) and how many workloads fall in
// each class. Grouping is by exact value.
struct SizeClasses {
  std::vector<double> sizes;
  std::vector<long long> counts;
};

SizeClasses size_classes(const BagOfWorkloads& bag);

// A concrete leased machine of some configured type.
struct ResourceInstance {
  std::string instance_id;
  std::string type_id;
};

// Checks that instances reference known types, carry distinct ids and stay
// within each type's lease limit. Throws on the first violated rule.
void validate_fleet(const std::vector<ResourceInstance>& instances, const CloudConfig& config);

struct Assignment {
  std::map<std::string, std::string> mapping;  // workload_id -> instance_id
};

struct ScheduleEntry {
  std::string workload_id;
  int op_index = 0;
  std::string instance_id;
  double start = 0.0;
  double end = 0.0;
};

struct Schedule {
  std::vector<ScheduleEntry> entries;
};

struct InstanceMetrics {
  double busy_time = 0.0;
  double atus_billed = 0.0;
  double cost = 0.0;
  double z_contribution = 0.0;
};

struct MetricsReport {
  std::map<std::string, InstanceMetrics> per_instance;
  double makespan = 0.0;
  double total_cost = 0.0;
  double objective_z = 0.0;
  double mean_exec_time = 0.0;
  double cost_per_workload = 0.0;
};

// Schedulers operate on the operation view. A workload with an empty
// operation list stands for a single operation covering its whole demand,
// eligible on every given instance.
std::vector<Workload> normalize_to_jobshop(const std::vector<Workload>& workloads,
                                           const std::vector<ResourceInstance>& instances);

// Sums values smallest-magnitude-first so that the result depends only on the
// multiset of terms, not on the order callers produced them in.
double sum_sorted(std::vector<double> terms);

}  // namespace bowlab
