#pragma once

#include <set>
#include <string>
#include <vector>

#include "bowlab/core_model.hpp"

namespace testutil {

inline bowlab::ResourceType public_type(std::string id, double speed, double cost,
                                        long long lease_limit) {
  return {std::move(id), bowlab::ResourceKind::Public, speed, cost, lease_limit};
}

inline bowlab::ResourceType private_type(std::string id, double speed, double cost,
                                         long long lease_limit) {
  return {std::move(id), bowlab::ResourceKind::Private, speed, cost, lease_limit};
}

// Single-operation workload covering its whole demand on the given machines.
inline bowlab::Workload bow_workload(std::string id, double exec_time,
                                     std::set<std::string> eligible, double delivery = 0.0,
                                     double required = 0.0) {
  std::vector<bowlab::Operation> ops;
  ops.emplace_back(0, exec_time, std::move(eligible));
  return bowlab::Workload(std::move(id), exec_time, delivery, required, std::move(ops));
}

// Workload with zero operations (pure bag-of-workloads view).
inline bowlab::Workload bare_workload(std::string id, double exec_time, double delivery = 0.0,
                                      double required = 0.0) {
  return bowlab::Workload(std::move(id), exec_time, delivery, required, {});
}

// The worked three-workload setup: two machines of a fast public type and one
// private machine.
struct SmallMix {
  bowlab::CloudConfig config;
  std::vector<bowlab::ResourceInstance> instances;

  SmallMix()
      : config({public_type("p", 2.0, 2.0, 2), private_type("f", 1.0, 1.0, 1)}),
        instances{{"p-0", "p"}, {"p-1", "p"}, {"f-0", "f"}} {}
};

}  // namespace testutil
