#include <doctest.h>

#include "bowlab/scenario_io.hpp"
#include "bowlab/workload_gen.hpp"
#include "helpers.hpp"

using namespace bowlab;

TEST_CASE("identical seeds give identical scenarios") {
  GenSpec spec;
  spec.seed = 42;
  spec.n_workloads = 25;
  spec.n_instances = 8;
  spec.ops_per_workload_range = {1, 3};
  spec.eligibility_density = 0.5;
  auto a = generate(spec);
  auto b = generate(spec);
  CHECK(scenario_to_json(a).dump() == scenario_to_json(b).dump());

  spec.seed = 43;
  auto c = generate(spec);
  CHECK(scenario_to_json(a).dump() != scenario_to_json(c).dump());
}

TEST_CASE("requested sizes are honored") {
  GenSpec spec;
  spec.n_workloads = 300;
  spec.n_instances = 50;
  auto scenario = generate(spec);
  CHECK(scenario.bag.size() == 300);
  CHECK(scenario.instances.size() == 50);
  CHECK(scenario.config.public_types().size() == 3);
  CHECK_NOTHROW(validate_fleet(scenario.instances, scenario.config));
}

TEST_CASE("full density makes every machine eligible everywhere") {
  GenSpec spec;
  spec.n_workloads = 10;
  spec.n_instances = 5;
  spec.eligibility_density = 1.0;
  auto scenario = generate(spec);
  for (const auto& w : scenario.bag.workloads())
    for (const auto& op : w.operations())
      CHECK(op.eligible_resources().size() == scenario.instances.size());
}

TEST_CASE("draws stay inside their ranges") {
  GenSpec spec;
  spec.seed = 7;
  spec.n_workloads = 200;
  spec.n_instances = 10;
  spec.exec_time_range = {2.0, 9.0};
  spec.delivery_window = 4.0;
  spec.ops_per_workload_range = {2, 4};
  spec.speed_range = {1.5, 2.5};
  spec.cost_range = {0.5, 1.5};
  auto scenario = generate(spec);
  for (const auto& w : scenario.bag.workloads()) {
    CHECK(w.exec_time() >= 2.0);
    CHECK(w.exec_time() < 9.0);
    CHECK(w.delivery_date() >= 0.0);
    CHECK(w.delivery_date() < 4.0);
    CHECK(w.operations().size() >= 2);
    CHECK(w.operations().size() <= 4);
  }
  for (const auto& t : scenario.config.types()) {
    CHECK(t.speed >= 1.5);
    CHECK(t.speed < 2.5);
    CHECK(t.cost_per_atu >= 0.5);
    CHECK(t.cost_per_atu < 1.5);
  }
}

TEST_CASE("empirical size mean sits near the range midpoint") {
  GenSpec spec;
  spec.seed = 1234;
  spec.n_workloads = 1000;
  spec.n_instances = 10;
  spec.exec_time_range = {5.0, 50.0};
  auto scenario = generate(spec);
  double mean = 0.0;
  for (const auto& w : scenario.bag.workloads()) mean += w.exec_time();
  mean /= static_cast<double>(scenario.bag.size());
  double midpoint = 27.5;
  CHECK(mean > midpoint * 0.95);
  CHECK(mean < midpoint * 1.05);
}

TEST_CASE("impossible specs are rejected") {
  GenSpec spec;
  spec.n_workloads = 5;
  spec.n_instances = 0;
  CHECK_THROWS_AS(generate(spec), Error);

  GenSpec inverted;
  inverted.exec_time_range = {5.0, 2.0};
  CHECK_THROWS_AS(generate(inverted), Error);

  GenSpec zero_density;
  zero_density.eligibility_density = 0.0;
  CHECK_THROWS_AS(generate(zero_density), Error);
}

TEST_CASE("an empty fleet is fine when there is nothing to run") {
  GenSpec spec;
  spec.n_workloads = 0;
  spec.n_instances = 0;
  auto scenario = generate(spec);
  CHECK(scenario.bag.empty());
  CHECK(scenario.instances.empty());
}
