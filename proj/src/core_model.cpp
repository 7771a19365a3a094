#include "bowlab/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bowlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidWorkload: return "InvalidWorkload";
    case ErrorCode::EmptyBag: return "EmptyBag";
    case ErrorCode::DuplicateWorkloadId: return "DuplicateWorkloadId";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::LeaseLimitExceeded: return "LeaseLimitExceeded";
    case ErrorCode::UnassignedWorkload: return "UnassignedWorkload";
    case ErrorCode::PlanInfeasible: return "PlanInfeasible";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::NoEligibleResource: return "NoEligibleResource";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

const char* to_string(ResourceKind kind) {
  return kind == ResourceKind::Public ? "public" : "private";
}

std::vector<std::string> ResourceType::violations() const {
  std::vector<std::string> out;
  if (type_id.empty()) out.push_back("type_id must be non-empty");
  if (!(speed > 0.0)) out.push_back("type " + type_id + ": speed must be > 0");
  if (!(cost_per_atu >= 0.0)) out.push_back("type " + type_id + ": cost_per_atu must be >= 0");
  if (lease_limit < 0) out.push_back("type " + type_id + ": lease_limit must be >= 0");
  return out;
}

std::vector<std::string> validate_config(const std::vector<ResourceType>& types,
                                         double atu_length) {
  std::vector<std::string> out;
  std::set<std::string> ids;
  int private_count = 0;
  for (const auto& t : types) {
    auto v = t.violations();
    out.insert(out.end(), v.begin(), v.end());
    if (!ids.insert(t.type_id).second)
      out.push_back("duplicate type_id: " + t.type_id);
    if (t.kind == ResourceKind::Private) ++private_count;
  }
  if (private_count != 1) {
    std::ostringstream os;
    os << "exactly one private type (found " << private_count << ")";
    out.push_back(os.str());
  }
  if (!(atu_length > 0.0)) out.push_back("atu_length must be > 0");
  return out;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

}  // namespace

CloudConfig::CloudConfig(std::vector<ResourceType> types, double atu_length)
    : types_(std::move(types)), atu_length_(atu_length) {
  auto problems = validate_config(types_, atu_length_);
  if (!problems.empty()) throw Error(ErrorCode::InvalidConfig, join(problems));
}

std::vector<const ResourceType*> CloudConfig::public_types() const {
  std::vector<const ResourceType*> out;
  for (const auto& t : types_)
    if (t.kind == ResourceKind::Public) out.push_back(&t);
  return out;
}

const ResourceType& CloudConfig::private_type() const {
  for (const auto& t : types_)
    if (t.kind == ResourceKind::Private) return t;
  throw Error(ErrorCode::InvalidConfig, "config has no private type");
}

const ResourceType& CloudConfig::type_of(const std::string& type_id) const {
  for (const auto& t : types_)
    if (t.type_id == type_id) return t;
  throw Error(ErrorCode::UnknownReference, "unknown type_id: " + type_id);
}

bool CloudConfig::has_type(const std::string& type_id) const {
  for (const auto& t : types_)
    if (t.type_id == type_id) return true;
  return false;
}

Operation::Operation(int op_index, double base_time, std::set<std::string> eligible_resources)
    : op_index_(op_index), base_time_(base_time), eligible_resources_(std::move(eligible_resources)) {
  std::vector<std::string> problems;
  if (op_index_ < 0) problems.push_back("op_index must be >= 0");
  if (!(base_time_ > 0.0)) problems.push_back("base_time must be > 0");
  if (eligible_resources_.empty()) problems.push_back("eligible_resources must be non-empty");
  if (!problems.empty()) throw Error(ErrorCode::InvalidWorkload, join(problems));
}

Workload::Workload(std::string workload_id, double exec_time, double delivery_date,
                   double required_amount, std::vector<Operation> operations)
    : workload_id_(std::move(workload_id)),
      exec_time_(exec_time),
      delivery_date_(delivery_date),
      required_amount_(required_amount),
      operations_(std::move(operations)) {
  std::vector<std::string> problems;
  if (workload_id_.empty()) problems.push_back("workload_id must be non-empty");
  if (!(exec_time_ > 0.0)) problems.push_back("exec_time must be > 0");
  if (!(delivery_date_ >= 0.0)) problems.push_back("delivery_date must be >= 0");
  if (!(required_amount_ >= 0.0)) problems.push_back("required_amount must be >= 0");
  for (std::size_t i = 0; i < operations_.size(); ++i) {
    if (operations_[i].op_index() != static_cast<int>(i)) {
      problems.push_back("operations must be indexed 0..q-1 in order");
      break;
    }
  }
  if (!operations_.empty()) {
    double total = 0.0;
    for (const auto& op : operations_) total += op.base_time();
    if (!nearly_equal(total, exec_time_))
      problems.push_back("operation base times must sum to exec_time");
  }
  if (!problems.empty())
    throw Error(ErrorCode::InvalidWorkload, workload_id_ + ": " + join(problems));
}

double Workload::total_processing_time() const {
  if (operations_.empty()) return exec_time_;
  double total = 0.0;
  for (const auto& op : operations_) total += op.base_time();
  return total;
}

BagOfWorkloads::BagOfWorkloads(std::vector<Workload> workloads)
    : workloads_(std::move(workloads)) {
  std::set<std::string> ids;
  for (const auto& w : workloads_)
    if (!ids.insert(w.workload_id()).second)
      throw Error(ErrorCode::DuplicateWorkloadId, "duplicate workload_id: " + w.workload_id());
}

SizeClasses size_classes(const BagOfWorkloads& bag) {
  if (bag.empty()) throw Error(ErrorCode::EmptyBag, "size_classes over an empty bag");
  std::map<double, long long> groups;
  for (const auto& w : bag.workloads()) ++groups[w.exec_time()];
  SizeClasses out;
  for (const auto& [size, count] : groups) {
    out.sizes.push_back(size);
    out.counts.push_back(count);
  }
  return out;
}

void validate_fleet(const std::vector<ResourceInstance>& instances, const CloudConfig& config) {
  std::set<std::string> ids;
  std::map<std::string, long long> per_type;
  for (const auto& inst : instances) {
    if (!ids.insert(inst.instance_id).second)
      throw Error(ErrorCode::InvalidConfig, "duplicate instance_id: " + inst.instance_id);
    if (!config.has_type(inst.type_id))
      throw Error(ErrorCode::UnknownReference,
                  inst.instance_id + " references unknown type " + inst.type_id);
    ++per_type[inst.type_id];
  }
  for (const auto& [type_id, count] : per_type) {
    const auto& t = config.type_of(type_id);
    if (count > t.lease_limit) {
      std::ostringstream os;
      os << "type " << type_id << ": " << count << " instances exceed lease limit "
         << t.lease_limit;
      throw Error(ErrorCode::LeaseLimitExceeded, os.str());
    }
  }
}

std::vector<Workload> normalize_to_jobshop(const std::vector<Workload>& workloads,
                                           const std::vector<ResourceInstance>& instances) {
  std::set<std::string> all_ids;
  for (const auto& inst : instances) all_ids.insert(inst.instance_id);
  std::vector<Workload> out;
  out.reserve(workloads.size());
  for (const auto& w : workloads) {
    if (!w.operations().empty()) {
      out.push_back(w);
      continue;
    }
    if (all_ids.empty())
      throw Error(ErrorCode::NoEligibleResource,
                  w.workload_id() + ": no instances available for implicit operation");
    std::vector<Operation> ops;
    ops.emplace_back(0, w.exec_time(), all_ids);
    out.emplace_back(w.workload_id(), w.exec_time(), w.delivery_date(), w.required_amount(),
                     std::move(ops));
  }
  return out;
}

double sum_sorted(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

}  // namespace bowlab
