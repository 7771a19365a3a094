#include "bowlab/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bowlab/cost_engine.hpp"

namespace bowlab {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::Precedence: return "precedence";
    case ViolationKind::DurationMismatch: return "duration-mismatch";
    case ViolationKind::NegativeTime: return "negative-time";
    case ViolationKind::UnknownReference: return "unknown-reference";
  }
  return "unknown";
}

namespace {

std::string entry_label(const ScheduleEntry& e) {
  std::ostringstream os;
  os << e.workload_id << "/op" << e.op_index << " on " << e.instance_id << " [" << e.start
     << ", " << e.end << "]";
  return os.str();
}

}  // namespace

std::vector<Violation> validate_schedule(const Schedule& schedule,
                                         const std::vector<Workload>& workloads,
                                         const std::vector<ResourceInstance>& instances,
                                         const CloudConfig& config) {
  std::vector<Violation> out;
  auto add = [&out](ViolationKind kind, std::vector<std::size_t> indices, std::string text) {
    out.push_back(Violation{kind, std::move(indices), std::move(text)});
  };

  std::vector<Workload> normalized = normalize_to_jobshop(workloads, instances);
  std::map<std::string, const Workload*> workload_by_id;
  for (const auto& w : normalized) workload_by_id[w.workload_id()] = &w;
  std::map<std::string, const ResourceType*> type_by_instance;
  for (const auto& inst : instances) type_by_instance[inst.instance_id] = &config.type_of(inst.type_id);

  // Reference and per-entry checks.
  std::map<std::pair<std::string, int>, std::vector<std::size_t>> seen;
  for (std::size_t idx = 0; idx < schedule.entries.size(); ++idx) {
    const auto& e = schedule.entries[idx];
    auto wit = workload_by_id.find(e.workload_id);
    if (wit == workload_by_id.end()) {
      add(ViolationKind::UnknownReference, {idx}, entry_label(e) + ": unknown workload");
      continue;
    }
    const Workload& w = *wit->second;
    if (e.op_index < 0 || e.op_index >= static_cast<int>(w.operations().size())) {
      add(ViolationKind::UnknownReference, {idx}, entry_label(e) + ": operation index out of range");
      continue;
    }
    auto tit = type_by_instance.find(e.instance_id);
    if (tit == type_by_instance.end()) {
      add(ViolationKind::UnknownReference, {idx}, entry_label(e) + ": unknown instance");
      continue;
    }
    seen[{e.workload_id, e.op_index}].push_back(idx);

    if (!(e.start >= 0.0))
      add(ViolationKind::NegativeTime, {idx}, entry_label(e) + ": start before t=0");
    double expected = w.operations()[e.op_index].base_time() / tit->second->speed;
    if (!nearly_equal(e.end - e.start, expected)) {
      std::ostringstream os;
      os << entry_label(e) << ": duration " << (e.end - e.start) << " != " << expected;
      add(ViolationKind::DurationMismatch, {idx}, os.str());
    }
  }

  // Presence: every operation exactly once.
  for (const auto& w : normalized) {
    for (int op = 0; op < static_cast<int>(w.operations().size()); ++op) {
      auto it = seen.find({w.workload_id(), op});
      if (it == seen.end()) {
        std::ostringstream os;
        os << w.workload_id() << "/op" << op << " never scheduled";
        add(ViolationKind::UnknownReference, {}, os.str());
      } else if (it->second.size() > 1) {
        std::ostringstream os;
        os << w.workload_id() << "/op" << op << " scheduled " << it->second.size() << " times";
        add(ViolationKind::UnknownReference, it->second, os.str());
      }
    }
  }

  // One workload per machine at a time.
  std::map<std::string, std::vector<std::size_t>> by_instance;
  for (std::size_t idx = 0; idx < schedule.entries.size(); ++idx)
    if (type_by_instance.count(schedule.entries[idx].instance_id))
      by_instance[schedule.entries[idx].instance_id].push_back(idx);
  for (auto& [instance_id, indices] : by_instance) {
    std::sort(indices.begin(), indices.end(), [&schedule](std::size_t a, std::size_t b) {
      const auto& ea = schedule.entries[a];
      const auto& eb = schedule.entries[b];
      if (ea.start != eb.start) return ea.start < eb.start;
      return ea.end < eb.end;
    });
    for (std::size_t k = 1; k < indices.size(); ++k) {
      const auto& prev = schedule.entries[indices[k - 1]];
      const auto& cur = schedule.entries[indices[k]];
      if (cur.start < prev.end - kRelTol * std::max(1.0, std::fabs(prev.end))) {
        add(ViolationKind::Overlap, {indices[k - 1], indices[k]},
            entry_label(prev) + " overlaps " + entry_label(cur));
      }
    }
  }

  // In-order operations within each workload.
  std::map<std::string, std::vector<std::size_t>> by_workload;
  for (std::size_t idx = 0; idx < schedule.entries.size(); ++idx)
    if (workload_by_id.count(schedule.entries[idx].workload_id))
      by_workload[schedule.entries[idx].workload_id].push_back(idx);
  for (auto& [workload_id, indices] : by_workload) {
    std::sort(indices.begin(), indices.end(), [&schedule](std::size_t a, std::size_t b) {
      return schedule.entries[a].op_index < schedule.entries[b].op_index;
    });
    for (std::size_t k = 1; k < indices.size(); ++k) {
      const auto& prev = schedule.entries[indices[k - 1]];
      const auto& cur = schedule.entries[indices[k]];
      if (cur.op_index == prev.op_index) continue;  // reported as duplicate above
      if (cur.start < prev.end - kRelTol * std::max(1.0, std::fabs(prev.end))) {
        add(ViolationKind::Precedence, {indices[k - 1], indices[k]},
            entry_label(cur) + " starts before " + entry_label(prev) + " ends");
      }
    }
  }

  return out;
}

MetricsReport compute_metrics(const Schedule& schedule, const std::vector<Workload>& workloads,
                              const std::vector<ResourceInstance>& instances,
                              const CloudConfig& config) {
  auto violations = validate_schedule(schedule, workloads, instances, config);
  if (!violations.empty()) {
    std::ostringstream os;
    os << violations.size() << " violation(s), first: " << violations.front().description;
    throw Error(ErrorCode::InvalidSchedule, os.str());
  }

  std::vector<Workload> normalized = normalize_to_jobshop(workloads, instances);
  std::map<std::string, const Workload*> workload_by_id;
  for (const auto& w : normalized) workload_by_id[w.workload_id()] = &w;

  MetricsReport report;
  struct Span {
    double busy = 0.0;
    double first = 0.0;
    double last = 0.0;
    std::vector<double> bases;  // scheduled work, from the model
    bool used = false;
  };
  std::map<std::string, Span> spans;
  for (const auto& e : schedule.entries) {
    auto& s = spans[e.instance_id];
    s.busy += e.end - e.start;
    s.bases.push_back(
        workload_by_id.at(e.workload_id)->operations()[e.op_index].base_time());
    if (!s.used) {
      s.first = e.start;
      s.last = e.end;
      s.used = true;
    } else {
      s.first = std::min(s.first, e.start);
      s.last = std::max(s.last, e.end);
    }
    report.makespan = std::max(report.makespan, e.end);
  }

  // The objective pools public machines billed the same number of ATUs, the
  // same way the assignment-side evaluation does, so a gap-free one-operation
  // schedule reproduces objective_z of its assignment bit for bit.
  std::vector<double> cost_terms;
  std::vector<double> z_terms;
  std::map<std::pair<std::string, double>, std::vector<double>> public_groups;
  for (const auto& inst : instances) {
    auto it = spans.find(inst.instance_id);
    InstanceMetrics m;
    if (it != spans.end() && it->second.used) {
      const ResourceType& t = config.type_of(inst.type_id);
      double span = it->second.last - it->second.first;
      m.busy_time = it->second.busy;
      m.atus_billed = billed_atus(span, t.kind, config.atu_length());
      m.cost = cost_for_time(span, t, config.atu_length());
      m.z_contribution = m.cost * m.busy_time;
      cost_terms.push_back(m.cost);
      if (t.kind == ResourceKind::Public) {
        auto& pooled = public_groups[{t.type_id, m.atus_billed}];
        pooled.insert(pooled.end(), it->second.bases.begin(), it->second.bases.end());
      } else {
        z_terms.push_back(m.cost * (sum_sorted(it->second.bases) / t.speed));
      }
    }
    report.per_instance[inst.instance_id] = m;
  }
  for (auto& [key, pooled] : public_groups) {
    const ResourceType& t = config.type_of(key.first);
    double group_time = sum_sorted(pooled) / t.speed;
    z_terms.push_back(t.cost_per_atu * key.second * group_time);
  }
  report.total_cost = sum_sorted(std::move(cost_terms));
  report.objective_z = sum_sorted(std::move(z_terms));

  if (!workloads.empty()) {
    std::map<std::string, std::pair<double, double>> flow;  // first start, last end
    for (const auto& e : schedule.entries) {
      auto it = flow.find(e.workload_id);
      if (it == flow.end())
        flow[e.workload_id] = {e.start, e.end};
      else {
        it->second.first = std::min(it->second.first, e.start);
        it->second.second = std::max(it->second.second, e.end);
      }
    }
    double total_flow = 0.0;
    for (const auto& [id, span] : flow) total_flow += span.second - span.first;
    report.mean_exec_time = total_flow / static_cast<double>(workloads.size());
    report.cost_per_workload = report.total_cost / static_cast<double>(workloads.size());
  }
  return report;
}

Schedule schedule_from_assignment(const Assignment& assignment, const BagOfWorkloads& bag,
                                  const std::vector<ResourceInstance>& instances,
                                  const CloudConfig& config) {
  validate_fleet(instances, config);
  std::map<std::string, const ResourceType*> type_by_instance;
  for (const auto& inst : instances) type_by_instance[inst.instance_id] = &config.type_of(inst.type_id);

  std::vector<Workload> normalized = normalize_to_jobshop(
      std::vector<Workload>(bag.workloads().begin(), bag.workloads().end()), instances);

  std::map<std::string, std::vector<const Workload*>> per_instance;
  for (const auto& w : normalized) {
    auto it = assignment.mapping.find(w.workload_id());
    if (it == assignment.mapping.end())
      throw Error(ErrorCode::UnassignedWorkload, w.workload_id() + " is not assigned");
    if (!type_by_instance.count(it->second))
      throw Error(ErrorCode::UnknownReference,
                  w.workload_id() + " assigned to unknown instance " + it->second);
    per_instance[it->second].push_back(&w);
  }

  Schedule out;
  for (auto& [instance_id, queue] : per_instance) {
    // Shortest first: the machine's cumulative work then accumulates in the
    // same order the pooled objective evaluation sums it.
    std::sort(queue.begin(), queue.end(), [](const Workload* a, const Workload* b) {
      if (a->exec_time() != b->exec_time()) return a->exec_time() < b->exec_time();
      return a->workload_id() < b->workload_id();
    });
    double speed = type_by_instance.at(instance_id)->speed;
    double done_work = 0.0;
    double start = 0.0;
    for (const Workload* w : queue) {
      for (const auto& op : w->operations()) {
        done_work += op.base_time();
        double end = done_work / speed;
        out.entries.push_back({w->workload_id(), op.op_index(), instance_id, start, end});
        start = end;
      }
    }
  }
  return out;
}

}  // namespace bowlab
