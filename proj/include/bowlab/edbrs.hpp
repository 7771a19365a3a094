#pragma once

#include <utility>
#include <vector>

#include "bowlab/core_model.hpp"

namespace bowlab {

// Tie-break directions for the four-key workload sort. Delivery date always
// sorts ascending; the remaining directions are configurable, defaulting to
// larger demand first and shorter work first.
struct SortOptions {
  bool required_amount_descending = true;
  bool total_time_ascending = true;
  bool op_count_ascending = true;
};

// Strict-weak-order comparator behind sort_workloads: delivery date, required
// amount, total processing time, operation count, workload id.
bool workload_order_before(const Workload& a, const Workload& b,
                           const SortOptions& options = {});

// Orders workloads by delivery date, required amount, total processing time,
// operation count and finally workload id. Input order never matters.
std::vector<Workload> sort_workloads(std::vector<Workload> workloads,
                                     const SortOptions& options = {});

struct Batch {
  long long index = 0;               // delivery-date window number
  std::vector<Workload> workloads;   // contiguous slice of the sorted order
  double release_time = 0.0;         // filled in by dispatch
};

// Groups sorted workloads into fixed-width delivery-date windows: window k
// holds delivery dates in [k*window, (k+1)*window). Empty windows are elided.
std::vector<Batch> partition_batches(const std::vector<Workload>& sorted_workloads,
                                     double window);

// Dispatches batches in order, workloads in batch order, operations in
// workload order. Each operation goes to the eligible machine with the
// earliest achievable start; ties prefer the machine that idles the least,
// then the lowest instance id. A batch may not start before the last dispatch
// time of its predecessor; release times are written back into `batches`.
Schedule dispatch(std::vector<Batch>& batches, const std::vector<ResourceInstance>& instances,
                  const CloudConfig& config);

// sort -> partition -> dispatch -> metrics.
std::pair<Schedule, MetricsReport> edbrs_schedule(const std::vector<Workload>& workloads,
                                                  const std::vector<ResourceInstance>& instances,
                                                  const CloudConfig& config, double batch_window,
                                                  const SortOptions& options = {});

}  // namespace bowlab
