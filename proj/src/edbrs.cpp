#include "bowlab/edbrs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "bowlab/sim_engine.hpp"

namespace bowlab {

bool workload_order_before(const Workload& a, const Workload& b, const SortOptions& options) {
  auto flip = [](bool ascending, double x, double y) { return ascending ? x < y : x > y; };
  if (a.delivery_date() != b.delivery_date()) return a.delivery_date() < b.delivery_date();
  if (a.required_amount() != b.required_amount())
    return flip(!options.required_amount_descending, a.required_amount(), b.required_amount());
  double ta = a.total_processing_time();
  double tb = b.total_processing_time();
  if (ta != tb) return flip(options.total_time_ascending, ta, tb);
  std::size_t qa = std::max<std::size_t>(a.operations().size(), 1);
  std::size_t qb = std::max<std::size_t>(b.operations().size(), 1);
  if (qa != qb)
    return flip(options.op_count_ascending, static_cast<double>(qa), static_cast<double>(qb));
  return a.workload_id() < b.workload_id();
}

std::vector<Workload> sort_workloads(std::vector<Workload> workloads,
                                     const SortOptions& options) {
  std::set<std::string> ids;
  for (const auto& w : workloads)
    if (!ids.insert(w.workload_id()).second)
      throw Error(ErrorCode::DuplicateWorkloadId, "duplicate workload_id: " + w.workload_id());

  std::sort(workloads.begin(), workloads.end(), [&options](const Workload& a, const Workload& b) {
    return workload_order_before(a, b, options);
  });
  return workloads;
}

std::vector<Batch> partition_batches(const std::vector<Workload>& sorted_workloads,
                                     double window) {
  if (!(window > 0.0)) throw Error(ErrorCode::InvalidConfig, "batch window must be > 0");
  std::map<long long, Batch> by_index;
  for (const auto& w : sorted_workloads) {
    long long k = static_cast<long long>(std::floor(w.delivery_date() / window));
    auto& batch = by_index[k];
    batch.index = k;
    batch.workloads.push_back(w);
  }
  std::vector<Batch> out;
  out.reserve(by_index.size());
  for (auto& [k, batch] : by_index) out.push_back(std::move(batch));
  return out;
}

Schedule dispatch(std::vector<Batch>& batches, const std::vector<ResourceInstance>& instances,
                  const CloudConfig& config) {
  validate_fleet(instances, config);
  std::map<std::string, double> speed_by_instance;
  for (const auto& inst : instances)
    speed_by_instance[inst.instance_id] = config.type_of(inst.type_id).speed;

  std::map<std::string, double> avail;  // machine free from this time on
  Schedule out;
  double release = 0.0;

  for (auto& batch : batches) {
    batch.release_time = release;
    double last_dispatch = release;
    for (const auto& w : batch.workloads) {
      double ready = release;  // first operation is held only by the batch gate
      for (const auto& op : w.operations()) {
        // Earliest achievable start wins; among machines that would sit
        // waiting, the one that waits least; then lowest id.
        const std::string* chosen = nullptr;
        double chosen_start = std::numeric_limits<double>::infinity();
        double chosen_wait = std::numeric_limits<double>::infinity();
        for (const auto& instance_id : op.eligible_resources()) {
          auto sit = speed_by_instance.find(instance_id);
          if (sit == speed_by_instance.end()) continue;
          double a = avail.count(instance_id) ? avail.at(instance_id) : 0.0;
          double start = std::max(a, ready);
          double wait = std::max(0.0, ready - a);
          // eligible_resources iterates in ascending id order, so keeping the
          // first machine at equal (start, wait) realizes the id tie-break.
          if (start < chosen_start || (start == chosen_start && wait < chosen_wait)) {
            chosen = &instance_id;
            chosen_start = start;
            chosen_wait = wait;
          }
        }
        if (chosen == nullptr)
          throw Error(ErrorCode::NoEligibleResource,
                      w.workload_id() + "/op" + std::to_string(op.op_index()) +
                          ": no eligible instance in the fleet");
        double duration = op.base_time() / speed_by_instance.at(*chosen);
        double end = chosen_start + duration;
        out.entries.push_back({w.workload_id(), op.op_index(), *chosen, chosen_start, end});
        avail[*chosen] = end;
        last_dispatch = std::max(last_dispatch, chosen_start);
        ready = end;
      }
    }
    release = last_dispatch;
  }
  return out;
}

std::pair<Schedule, MetricsReport> edbrs_schedule(const std::vector<Workload>& workloads,
                                                  const std::vector<ResourceInstance>& instances,
                                                  const CloudConfig& config, double batch_window,
                                                  const SortOptions& options) {
  std::vector<Workload> normalized = normalize_to_jobshop(workloads, instances);
  std::vector<Workload> sorted = sort_workloads(std::move(normalized), options);
  std::vector<Batch> batches = partition_batches(sorted, batch_window);
  Schedule schedule = dispatch(batches, instances, config);
  MetricsReport metrics = compute_metrics(schedule, workloads, instances, config);
  return {std::move(schedule), std::move(metrics)};
}

}  // namespace bowlab
