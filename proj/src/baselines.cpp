#include "bowlab/baselines.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace bowlab {

namespace {

std::map<std::string, double> speeds_by_instance(const std::vector<ResourceInstance>& instances,
                                                 const CloudConfig& config) {
  validate_fleet(instances, config);
  std::map<std::string, double> out;
  for (const auto& inst : instances) out[inst.instance_id] = config.type_of(inst.type_id).speed;
  return out;
}

}  // namespace

Schedule fcfs_schedule(const std::vector<Workload>& workloads,
                       const std::vector<ResourceInstance>& instances,
                       const CloudConfig& config) {
  auto speeds = speeds_by_instance(instances, config);
  std::vector<Workload> normalized = normalize_to_jobshop(workloads, instances);
  std::sort(normalized.begin(), normalized.end(), [](const Workload& a, const Workload& b) {
    return a.workload_id() < b.workload_id();
  });

  std::map<std::string, double> avail;
  Schedule out;
  for (const auto& w : normalized) {
    double ready = 0.0;
    for (const auto& op : w.operations()) {
      const std::string* target = nullptr;
      for (const auto& instance_id : op.eligible_resources()) {
        if (speeds.count(instance_id)) {
          target = &instance_id;  // set iteration order = lowest id first
          break;
        }
      }
      if (target == nullptr)
        throw Error(ErrorCode::NoEligibleResource,
                    w.workload_id() + "/op" + std::to_string(op.op_index()) +
                        ": no eligible instance in the fleet");
      double a = avail.count(*target) ? avail.at(*target) : 0.0;
      double start = std::max(a, ready);
      double end = start + op.base_time() / speeds.at(*target);
      out.entries.push_back({w.workload_id(), op.op_index(), *target, start, end});
      avail[*target] = end;
      ready = end;
    }
  }
  return out;
}

namespace {

// Shared engine for Min-Min and Max-Min.
Schedule list_schedule(const std::vector<Workload>& workloads,
                       const std::vector<ResourceInstance>& instances, const CloudConfig& config,
                       bool pick_largest) {
  auto speeds = speeds_by_instance(instances, config);
  std::vector<Workload> normalized = normalize_to_jobshop(workloads, instances);
  std::sort(normalized.begin(), normalized.end(), [](const Workload& a, const Workload& b) {
    return a.workload_id() < b.workload_id();
  });

  struct Entry {
    const Workload* workload;
    std::vector<std::string> eligible;  // machines usable for every operation
    bool done = false;
    bool cached = false;
    double completion = 0.0;
    std::string instance;
  };

  std::vector<Entry> entries;
  for (const auto& w : normalized) {
    Entry e;
    e.workload = &w;
    std::set<std::string> common = e.workload->operations().front().eligible_resources();
    for (const auto& op : w.operations()) {
      std::set<std::string> next;
      for (const auto& id : op.eligible_resources())
        if (common.count(id) && speeds.count(id)) next.insert(id);
      common = std::move(next);
    }
    e.eligible.assign(common.begin(), common.end());
    if (e.eligible.empty())
      throw Error(ErrorCode::NoEligibleResource,
                  w.workload_id() + ": no machine is eligible for all operations");
    entries.push_back(std::move(e));
  }

  std::map<std::string, double> avail;
  Schedule out;
  for (std::size_t scheduled = 0; scheduled < entries.size(); ++scheduled) {
    Entry* pick = nullptr;
    for (auto& e : entries) {
      if (e.done) continue;
      if (!e.cached) {
        e.completion = std::numeric_limits<double>::infinity();
        for (const auto& id : e.eligible) {
          double a = avail.count(id) ? avail.at(id) : 0.0;
          double completion = a + e.workload->total_processing_time() / speeds.at(id);
          if (completion < e.completion) {  // first hit keeps the lowest id
            e.completion = completion;
            e.instance = id;
          }
        }
        e.cached = true;
      }
      if (pick == nullptr) {
        pick = &e;
        continue;
      }
      bool better = pick_largest ? e.completion > pick->completion
                                 : e.completion < pick->completion;
      // entries are in id order, so ties keep the earlier (lower-id) workload
      if (better) pick = &e;
    }

    double start = avail.count(pick->instance) ? avail.at(pick->instance) : 0.0;
    double speed = speeds.at(pick->instance);
    for (const auto& op : pick->workload->operations()) {
      double end = start + op.base_time() / speed;
      out.entries.push_back(
          {pick->workload->workload_id(), op.op_index(), pick->instance, start, end});
      start = end;
    }
    avail[pick->instance] = start;
    pick->done = true;
    // Only plans that pointed at the machine we just extended can change.
    for (auto& e : entries)
      if (!e.done && e.instance == pick->instance) e.cached = false;
  }
  return out;
}

}  // namespace

Schedule min_min_schedule(const std::vector<Workload>& workloads,
                          const std::vector<ResourceInstance>& instances,
                          const CloudConfig& config) {
  return list_schedule(workloads, instances, config, false);
}

Schedule max_min_schedule(const std::vector<Workload>& workloads,
                          const std::vector<ResourceInstance>& instances,
                          const CloudConfig& config) {
  return list_schedule(workloads, instances, config, true);
}

}  // namespace bowlab
