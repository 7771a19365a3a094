#include "bowlab/cost_engine.hpp"

#include <cmath>
#include <sstream>

namespace bowlab {

double billed_atus(double time, ResourceKind kind, double atu_length) {
  if (time <= 0.0) return 0.0;
  double units = time / atu_length;
  if (kind == ResourceKind::Private) return units;
  double eps = kRelTol * std::max(1.0, units);
  return std::ceil(units - eps);
}

double cost_for_time(double time, const ResourceType& rtype, double atu_length) {
  return rtype.cost_per_atu * billed_atus(time, rtype.kind, atu_length);
}

double resource_time(double load, const ResourceType& rtype) { return load / rtype.speed; }

double resource_cost(double load, const ResourceType& rtype, double atu_length) {
  return cost_for_time(resource_time(load, rtype), rtype, atu_length);
}

double load_z(double load, const ResourceType& rtype, double atu_length) {
  double time = resource_time(load, rtype);
  return cost_for_time(time, rtype, atu_length) * time;
}

double objective_z(const Assignment& assignment, const BagOfWorkloads& bag,
                   const std::vector<ResourceInstance>& instances, const CloudConfig& config) {
  validate_fleet(instances, config);
  std::map<std::string, const ResourceType*> type_by_instance;
  for (const auto& inst : instances) type_by_instance[inst.instance_id] = &config.type_of(inst.type_id);

  std::map<std::string, std::vector<double>> work_by_instance;
  for (const auto& w : bag.workloads()) {
    auto it = assignment.mapping.find(w.workload_id());
    if (it == assignment.mapping.end())
      throw Error(ErrorCode::UnassignedWorkload, w.workload_id() + " is not assigned");
    if (!type_by_instance.count(it->second))
      throw Error(ErrorCode::UnknownReference,
                  w.workload_id() + " assigned to unknown instance " + it->second);
    work_by_instance[it->second].push_back(w.exec_time());
  }

  // Public billing is linear in load inside one ATU step, so equally priced
  // optima may split the same work differently across same-type machines.
  // Evaluating each (type, ATUs) group from its pooled work keeps the result
  // identical across such splits.
  std::map<std::pair<std::string, double>, std::vector<double>> public_groups;
  std::vector<double> contributions;
  for (auto& [instance_id, work] : work_by_instance) {
    const ResourceType& t = *type_by_instance.at(instance_id);
    double load = sum_sorted(work);
    if (load <= 0.0) continue;
    if (t.kind == ResourceKind::Public) {
      double atus = billed_atus(resource_time(load, t), t.kind, config.atu_length());
      auto& pooled = public_groups[{t.type_id, atus}];
      pooled.insert(pooled.end(), work.begin(), work.end());
    } else {
      contributions.push_back(load_z(load, t, config.atu_length()));
    }
  }
  for (auto& [key, pooled] : public_groups) {
    const ResourceType& t = config.type_of(key.first);
    double group_time = sum_sorted(pooled) / t.speed;
    contributions.push_back(t.cost_per_atu * key.second * group_time);
  }
  return sum_sorted(std::move(contributions));
}

long long EqualLengthPlan::q_for(const std::string& type_id) const {
  auto it = per_type_q.find(type_id);
  return it == per_type_q.end() ? 0 : it->second;
}

long long EqualLengthPlan::leased_for(const std::string& type_id) const {
  auto it = per_type_leased.find(type_id);
  return it == per_type_leased.end() ? 0 : it->second;
}

long long VaryingLengthPlan::q_for(const std::string& type_id, std::size_t class_index) const {
  auto it = per_type_class_q.find(type_id);
  if (it == per_type_class_q.end() || class_index >= it->second.size()) return 0;
  return it->second[class_index];
}

long long VaryingLengthPlan::leased_for(const std::string& type_id) const {
  auto it = per_type_leased.find(type_id);
  return it == per_type_leased.end() ? 0 : it->second;
}

namespace {

void check_known_types(const std::map<std::string, long long>& leased, const CloudConfig& config) {
  for (const auto& [type_id, n] : leased) {
    if (!config.has_type(type_id))
      throw Error(ErrorCode::PlanInfeasible, "plan references unknown type " + type_id);
    if (n < 0) throw Error(ErrorCode::PlanInfeasible, "negative lease count for " + type_id);
    if (n > config.type_of(type_id).lease_limit)
      throw Error(ErrorCode::PlanInfeasible, "lease count exceeds limit for " + type_id);
  }
}

}  // namespace

double equal_length_z(const EqualLengthPlan& plan, long long d, double E,
                      const CloudConfig& config) {
  check_known_types(plan.per_type_leased, config);
  for (const auto& [type_id, q] : plan.per_type_q) {
    if (!config.has_type(type_id))
      throw Error(ErrorCode::PlanInfeasible, "plan references unknown type " + type_id);
    if (q < 0) throw Error(ErrorCode::PlanInfeasible, "negative per-machine count for " + type_id);
  }

  long long covered = 0;
  for (const auto& t : config.types()) covered += plan.leased_for(t.type_id) * plan.q_for(t.type_id);
  if (covered != d) {
    std::ostringstream os;
    os << "plan covers " << covered << " workloads, expected " << d;
    throw Error(ErrorCode::PlanInfeasible, os.str());
  }

  std::vector<double> contributions;
  for (const auto& t : config.types()) {
    long long n = plan.leased_for(t.type_id);
    long long q = plan.q_for(t.type_id);
    if (n == 0 || q == 0) continue;
    contributions.push_back(static_cast<double>(n) *
                            load_z(static_cast<double>(q) * E, t, config.atu_length()));
  }
  return sum_sorted(std::move(contributions));
}

double varying_length_z(const VaryingLengthPlan& plan,
                        const std::vector<long long>& class_counts,
                        const std::vector<double>& class_sizes, const CloudConfig& config) {
  if (class_counts.size() != class_sizes.size())
    throw Error(ErrorCode::PlanInfeasible, "class_counts and class_sizes disagree in length");
  check_known_types(plan.per_type_leased, config);
  for (const auto& [type_id, qs] : plan.per_type_class_q) {
    if (!config.has_type(type_id))
      throw Error(ErrorCode::PlanInfeasible, "plan references unknown type " + type_id);
    if (qs.size() > class_counts.size())
      throw Error(ErrorCode::PlanInfeasible, "plan has more classes than the bag for " + type_id);
    for (long long q : qs)
      if (q < 0)
        throw Error(ErrorCode::PlanInfeasible, "negative per-machine count for " + type_id);
  }

  for (std::size_t a = 0; a < class_counts.size(); ++a) {
    long long covered = 0;
    for (const auto& t : config.types())
      covered += plan.leased_for(t.type_id) * plan.q_for(t.type_id, a);
    if (covered != class_counts[a]) {
      std::ostringstream os;
      os << "class " << a << ": plan covers " << covered << " workloads, expected "
         << class_counts[a];
      throw Error(ErrorCode::PlanInfeasible, os.str());
    }
  }

  std::vector<double> contributions;
  for (const auto& t : config.types()) {
    long long n = plan.leased_for(t.type_id);
    if (n == 0) continue;
    double load = 0.0;
    for (std::size_t a = 0; a < class_sizes.size(); ++a)
      load += static_cast<double>(plan.q_for(t.type_id, a)) * class_sizes[a];
    if (load <= 0.0) continue;
    contributions.push_back(static_cast<double>(n) * load_z(load, t, config.atu_length()));
  }
  return sum_sorted(std::move(contributions));
}

}  // namespace bowlab
