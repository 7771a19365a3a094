#include "bowlab/workload_gen.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "bowlab/rng.hpp"

namespace bowlab {

namespace {

void check_spec(const GenSpec& spec) {
  std::vector<std::string> problems;
  if (spec.n_workloads < 0) problems.push_back("n_workloads must be >= 0");
  if (spec.n_instances < 0) problems.push_back("n_instances must be >= 0");
  if (spec.n_public_types < 0) problems.push_back("n_public_types must be >= 0");
  if (spec.n_workloads > 0 && spec.n_instances == 0)
    problems.push_back("cannot schedule workloads on an empty fleet");
  if (!(spec.exec_time_range.lo > 0.0) || spec.exec_time_range.lo > spec.exec_time_range.hi)
    problems.push_back("exec_time_range must satisfy 0 < lo <= hi");
  if (!(spec.delivery_window >= 0.0)) problems.push_back("delivery_window must be >= 0");
  if (spec.ops_per_workload_range.lo < 1 ||
      spec.ops_per_workload_range.lo > spec.ops_per_workload_range.hi)
    problems.push_back("ops_per_workload_range must satisfy 1 <= lo <= hi");
  if (!(spec.speed_range.lo > 0.0) || spec.speed_range.lo > spec.speed_range.hi)
    problems.push_back("speed_range must satisfy 0 < lo <= hi");
  if (!(spec.cost_range.lo >= 0.0) || spec.cost_range.lo > spec.cost_range.hi)
    problems.push_back("cost_range must satisfy 0 <= lo <= hi");
  if (!(spec.eligibility_density > 0.0) || spec.eligibility_density > 1.0)
    problems.push_back("eligibility_density must be in (0, 1]");
  if (!problems.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) joined += "; ";
      joined += problems[i];
    }
    throw Error(ErrorCode::InfeasibleSpec, joined);
  }
}

std::string padded(const std::string& prefix, long long value, long long max_value) {
  int width = 1;
  for (long long v = max_value; v >= 10; v /= 10) ++width;
  std::ostringstream os;
  os << prefix;
  std::string digits = std::to_string(value);
  for (int i = static_cast<int>(digits.size()); i < width; ++i) os << '0';
  os << digits;
  return os.str();
}

}  // namespace

Scenario generate(const GenSpec& spec) {
  check_spec(spec);
  SplitMix64 rng(spec.seed);

  // Types: publics first, then the private one.
  std::vector<ResourceType> types;
  for (long long t = 0; t < spec.n_public_types; ++t) {
    ResourceType rt;
    rt.type_id = padded("p", t, std::max<long long>(spec.n_public_types - 1, 0));
    rt.kind = ResourceKind::Public;
    rt.speed = rng.uniform(spec.speed_range.lo, spec.speed_range.hi);
    rt.cost_per_atu = rng.uniform(spec.cost_range.lo, spec.cost_range.hi);
    rt.lease_limit = 0;  // set from the instance draw below
    types.push_back(rt);
  }
  ResourceType private_type;
  private_type.type_id = "f";
  private_type.kind = ResourceKind::Private;
  private_type.speed = rng.uniform(spec.speed_range.lo, spec.speed_range.hi);
  private_type.cost_per_atu = rng.uniform(spec.cost_range.lo, spec.cost_range.hi);
  private_type.lease_limit = 0;
  types.push_back(private_type);

  // One type per machine, uniform over all types.
  std::vector<ResourceInstance> instances;
  std::vector<long long> per_type(types.size(), 0);
  for (long long i = 0; i < spec.n_instances; ++i) {
    auto t = static_cast<std::size_t>(rng.next_below(types.size()));
    ++per_type[t];
    instances.push_back(
        {padded("r", i, std::max<long long>(spec.n_instances - 1, 0)), types[t].type_id});
  }
  for (std::size_t t = 0; t < types.size(); ++t) types[t].lease_limit = per_type[t];

  CloudConfig config(types);

  std::vector<Workload> workloads;
  for (long long w = 0; w < spec.n_workloads; ++w) {
    double exec_time = rng.uniform(spec.exec_time_range.lo, spec.exec_time_range.hi);
    double delivery = spec.delivery_window > 0.0 ? rng.uniform(0.0, spec.delivery_window) : 0.0;
    long long n_ops =
        rng.uniform_int(spec.ops_per_workload_range.lo, spec.ops_per_workload_range.hi);

    // Split the demand into n_ops positive shares; the last share absorbs the
    // rounding remainder so the parts sum back to exec_time.
    std::vector<double> weights;
    double weight_sum = 0.0;
    for (long long k = 0; k < n_ops; ++k) {
      double v = 0.1 + rng.next_double();
      weights.push_back(v);
      weight_sum += v;
    }
    std::vector<Operation> ops;
    double used = 0.0;
    for (long long k = 0; k < n_ops; ++k) {
      double base = k + 1 == n_ops ? exec_time - used
                                   : exec_time * (weights[static_cast<std::size_t>(k)] / weight_sum);
      used += base;
      std::set<std::string> eligible;
      for (const auto& inst : instances)
        if (rng.next_double() < spec.eligibility_density) eligible.insert(inst.instance_id);
      if (eligible.empty()) {
        auto pick = static_cast<std::size_t>(rng.next_below(instances.size()));
        eligible.insert(instances[pick].instance_id);
      }
      ops.emplace_back(static_cast<int>(k), base, std::move(eligible));
    }
    workloads.emplace_back(padded("w", w, std::max<long long>(spec.n_workloads - 1, 0)),
                           exec_time, delivery, 0.0, std::move(ops));
  }

  return Scenario{std::move(config), std::move(instances), BagOfWorkloads(std::move(workloads))};
}

}  // namespace bowlab
