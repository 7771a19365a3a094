#include <doctest.h>

#include <algorithm>
#include <map>

#include "bowlab/baselines.hpp"
#include "bowlab/edbrs.hpp"
#include "bowlab/rng.hpp"
#include "bowlab/sim_engine.hpp"
#include "bowlab/workload_gen.hpp"
#include "helpers.hpp"

using namespace bowlab;
using testutil::bare_workload;
using testutil::bow_workload;
using testutil::private_type;
using testutil::public_type;

namespace {

const ScheduleEntry& entry_for(const Schedule& s, const std::string& workload_id, int op = 0) {
  for (const auto& e : s.entries)
    if (e.workload_id == workload_id && e.op_index == op) return e;
  throw std::runtime_error("entry not found: " + workload_id);
}

double makespan_of(const Schedule& s) {
  double m = 0.0;
  for (const auto& e : s.entries) m = std::max(m, e.end);
  return m;
}

}  // namespace

TEST_CASE("fcfs takes workloads by id and machines by id") {
  CloudConfig config({public_type("p", 1, 1, 2), private_type("f", 1, 1, 1)});
  std::vector<ResourceInstance> fleet{{"R1", "p"}, {"R2", "p"}};

  // ids force the one-operation workload ahead of the two-operation chain;
  // the chain's required amount would put it first under the priority sort
  std::vector<Operation> chain;
  chain.emplace_back(0, 2.0, std::set<std::string>{"R1"});
  chain.emplace_back(1, 1.0, std::set<std::string>{"R2"});
  Workload late("b-chain", 3.0, 0.0, 1.0, chain);
  Workload first = bow_workload("a-single", 3.0, {"R2"});

  auto schedule = fcfs_schedule({late, first}, fleet, config);
  CHECK(entry_for(schedule, "a-single").start == 0.0);     // runs first on R2
  CHECK(entry_for(schedule, "b-chain", 0).start == 0.0);   // R1 free at 0
  CHECK(entry_for(schedule, "b-chain", 1).start == 3.0);   // waits for R2
  CHECK(makespan_of(schedule) == 4.0);
  // a different outcome than the priority dispatcher, which favors the chain
  auto [edbrs, metrics] = edbrs_schedule({late, first}, fleet, config, 1.0);
  CHECK(makespan_of(edbrs) != makespan_of(schedule));

  SUBCASE("single workload leaves no choice") {
    auto a = fcfs_schedule({first}, fleet, config);
    auto [b, m] = edbrs_schedule({first}, fleet, config, 1.0);
    REQUIRE(a.entries.size() == 1);
    REQUIRE(b.entries.size() == 1);
    CHECK(a.entries[0].instance_id == b.entries[0].instance_id);
    CHECK(a.entries[0].start == b.entries[0].start);
    CHECK(a.entries[0].end == b.entries[0].end);
  }

  SUBCASE("empty input") { CHECK(fcfs_schedule({}, fleet, config).entries.empty()); }
}

TEST_CASE("min-min and max-min order by minimum completion time") {
  CloudConfig config({public_type("p", 1, 1, 2), private_type("f", 1, 1, 1)});

  SUBCASE("single machine: shortest first vs longest first") {
    std::vector<ResourceInstance> one{{"R1", "p"}};
    std::vector<Workload> ws{bare_workload("a", 1), bare_workload("b", 5)};

    auto minmin = min_min_schedule(ws, one, config);
    CHECK(entry_for(minmin, "a").start == 0.0);
    CHECK(entry_for(minmin, "b").start == 1.0);
    CHECK(makespan_of(minmin) == 6.0);

    auto maxmin = max_min_schedule(ws, one, config);
    CHECK(entry_for(maxmin, "b").start == 0.0);
    CHECK(entry_for(maxmin, "a").start == 5.0);
    CHECK(makespan_of(maxmin) == 6.0);
  }

  SUBCASE("two machines: both algorithms spread the pair") {
    std::vector<ResourceInstance> two{{"R1", "p"}, {"R2", "p"}};
    std::vector<Workload> ws{bare_workload("a", 1), bare_workload("b", 5)};
    std::vector<Schedule> schedules;
    schedules.push_back(min_min_schedule(ws, two, config));
    schedules.push_back(max_min_schedule(ws, two, config));
    for (const auto& schedule : schedules) {
      CHECK(entry_for(schedule, "a").instance_id != entry_for(schedule, "b").instance_id);
      CHECK(makespan_of(schedule) == 5.0);
    }
  }

  SUBCASE("empty input") {
    std::vector<ResourceInstance> two{{"R1", "p"}, {"R2", "p"}};
    CHECK(min_min_schedule({}, two, config).entries.empty());
    CHECK(max_min_schedule({}, two, config).entries.empty());
  }
}

TEST_CASE("min-min equals shortest-processing-time order on one machine") {
  CloudConfig config({public_type("p", 2, 1, 1), private_type("f", 1, 1, 1)});
  std::vector<ResourceInstance> one{{"R1", "p"}};
  SplitMix64 rng(3);
  for (int round = 0; round < 20; ++round) {
    std::vector<Workload> ws;
    for (int i = 0; i < 8; ++i)
      ws.push_back(bare_workload("w" + std::to_string(i), 0.5 + rng.next_double() * 9.0));
    auto schedule = min_min_schedule(ws, one, config);
    double prev = -1.0;
    std::map<std::string, double> size_of;
    for (const auto& w : ws) size_of[w.workload_id()] = w.exec_time();
    for (const auto& e : schedule.entries) {
      CHECK(size_of.at(e.workload_id) >= prev);
      prev = size_of.at(e.workload_id);
    }
  }
}

TEST_CASE("baseline schedules always validate") {
  for (std::uint64_t seed = 20; seed < 28; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.n_workloads = 20;
    spec.n_instances = 5;
    spec.delivery_window = 3.0;
    spec.eligibility_density = 0.7;
    auto scenario = generate(spec);
    for (auto* fn : {&fcfs_schedule, &min_min_schedule, &max_min_schedule}) {
      auto schedule = (*fn)(scenario.bag.workloads(), scenario.instances, scenario.config);
      CHECK(validate_schedule(schedule, scenario.bag.workloads(), scenario.instances,
                              scenario.config)
                .empty());
    }
  }
}

TEST_CASE("a multi-operation workload runs whole on one machine under min-min") {
  CloudConfig config({public_type("p", 1, 1, 2), private_type("f", 1, 1, 1)});
  std::vector<ResourceInstance> fleet{{"R1", "p"}, {"R2", "p"}};
  std::vector<Operation> ops;
  ops.emplace_back(0, 1.0, std::set<std::string>{"R1", "R2"});
  ops.emplace_back(1, 2.0, std::set<std::string>{"R1"});
  Workload w("w", 3.0, 0.0, 0.0, ops);

  auto schedule = min_min_schedule({w}, fleet, config);
  REQUIRE(schedule.entries.size() == 2);
  CHECK(schedule.entries[0].instance_id == "R1");  // only R1 suits both operations
  CHECK(schedule.entries[1].instance_id == "R1");
  CHECK(schedule.entries[1].start == schedule.entries[0].end);

  std::vector<Operation> impossible;
  impossible.emplace_back(0, 1.0, std::set<std::string>{"R1"});
  impossible.emplace_back(1, 2.0, std::set<std::string>{"R2"});
  Workload bad("bad", 3.0, 0.0, 0.0, impossible);
  CHECK_THROWS_AS(min_min_schedule({bad}, fleet, config), Error);
}
