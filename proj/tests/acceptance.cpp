// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via `ctest -R acceptance` or directly from the build tree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bowlab/baselines.hpp"
#include "bowlab/edbrs.hpp"
#include "bowlab/experiment.hpp"
#include "bowlab/optimal_assigner.hpp"
#include "bowlab/rng.hpp"
#include "bowlab/scenario_io.hpp"
#include "bowlab/sim_engine.hpp"
#include "bowlab/workload_gen.hpp"

using namespace bowlab;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Workload bare(const std::string& id, double exec, double delivery = 0.0, double required = 0.0) {
  return Workload(id, exec, delivery, required, {});
}

// Random small scenario for the oracle sweep: mixed public/private types,
// varied ATU lengths, duplicate sizes forced in some draws.
struct SmallInstance {
  CloudConfig config;
  std::vector<ResourceInstance> fleet;
  BagOfWorkloads bag;
};

SmallInstance random_small_instance(std::uint64_t seed) {
  SplitMix64 rng(seed);
  int n_public = static_cast<int>(rng.next_below(3));  // 0..2 public types
  std::vector<ResourceType> types;
  for (int t = 0; t < n_public; ++t)
    types.push_back({"p" + std::to_string(t), ResourceKind::Public,
                     0.5 + rng.next_double() * 3.5, 0.2 + rng.next_double() * 4.8, 6});
  types.push_back({"f", ResourceKind::Private, 0.5 + rng.next_double() * 3.5,
                   0.2 + rng.next_double() * 4.8, 6});
  const double atus[3] = {0.5, 1.0, 2.0};
  CloudConfig config(types, atus[rng.next_below(3)]);

  int n_instances = 1 + static_cast<int>(rng.next_below(6));
  std::vector<ResourceInstance> fleet;
  for (int i = 0; i < n_instances; ++i) {
    const auto& t = types[rng.next_below(types.size())];
    fleet.push_back({"r" + std::to_string(i), t.type_id});
  }

  int d = 1 + static_cast<int>(rng.next_below(8));
  std::vector<Workload> ws;
  for (int i = 0; i < d; ++i) {
    const double pool[3] = {1.0, 2.0, 3.0};
    double size =
        rng.next_double() < 0.3 ? pool[rng.next_below(3)] : 0.3 + rng.next_double() * 7.7;
    ws.push_back(bare("w" + std::to_string(i), size));
  }
  return SmallInstance{std::move(config), std::move(fleet), BagOfWorkloads(std::move(ws))};
}

void criterion1_oracle_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  int matches = 0;
  int total = 200;
  std::string first_miss;
  for (int k = 0; k < total; ++k) {
    auto inst = random_small_instance(1000 + k);
    auto oracle = brute_force_oracle(inst.bag, inst.fleet, inst.config);
    auto general = solve_general(inst.bag, inst.fleet, inst.config);
    if (general.best_z == oracle.best_z && general.proven_optimal) {
      ++matches;
    } else if (first_miss.empty()) {
      std::ostringstream os;
      os << "instance " << k << ": general " << general.best_z << " vs oracle "
         << oracle.best_z << (general.proven_optimal ? "" : " (budget hit)");
      first_miss = os.str();
    }
  }
  std::ostringstream detail;
  detail << matches << "/" << total << " exact matches, " << seconds_since(t0) << "s";
  if (!first_miss.empty()) detail << "; first miss: " << first_miss;
  report(1, "general solver equals the exhaustive oracle", matches == total, detail.str());
}

void criterion2_closed_form_agreement() {
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  int agreed = 0;

  auto close = [](double a, double b) {
    return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
  };

  for (int k = 0; checked < 120; ++k) {
    SplitMix64 rng(5000 + k);
    int n_public = static_cast<int>(rng.next_below(3));
    std::vector<ResourceType> types;
    for (int t = 0; t < n_public; ++t)
      types.push_back({"p" + std::to_string(t), ResourceKind::Public,
                       0.5 + rng.next_double() * 3.5, 0.2 + rng.next_double() * 4.8, 3});
    types.push_back({"f", ResourceKind::Private, 0.5 + rng.next_double() * 3.5,
                     0.2 + rng.next_double() * 4.8, 3});
    CloudConfig config(types, 0.5 + rng.next_double() * 1.5);

    // Draw a balanced plan first; the bag and fleet follow from it.
    bool varying = (k % 2) == 1;
    std::vector<double> sizes;
    int n_classes = varying ? 1 + static_cast<int>(rng.next_below(3)) : 1;
    for (int a = 0; a < n_classes; ++a) sizes.push_back(0.5 + rng.next_double() * 5.0 + 6.0 * a);

    VaryingLengthPlan plan;
    std::vector<long long> counts(sizes.size(), 0);
    std::vector<ResourceInstance> fleet;
    for (const auto& t : config.types()) {
      long long n = static_cast<long long>(rng.next_below(3));  // 0..2 machines
      if (n == 0) continue;
      std::vector<long long> q(sizes.size(), 0);
      bool any = false;
      for (std::size_t a = 0; a < sizes.size(); ++a) {
        q[a] = static_cast<long long>(rng.next_below(3));
        counts[a] += n * q[a];
        any = any || q[a] > 0;
      }
      if (!any) continue;
      plan.per_type_leased[t.type_id] = n;
      plan.per_type_class_q[t.type_id] = q;
      for (long long i = 0; i < n; ++i)
        fleet.push_back({t.type_id + "-" + std::to_string(i), t.type_id});
    }

    long long d = 0;
    for (long long c : counts) d += c;
    if (d == 0) continue;

    std::vector<Workload> ws;
    long long made = 0;
    for (std::size_t a = 0; a < sizes.size(); ++a)
      for (long long i = 0; i < counts[a]; ++i)
        ws.push_back(bare("w" + std::to_string(made++), sizes[a]));
    BagOfWorkloads bag(std::move(ws));

    Assignment assignment = materialize_plan(plan, bag, fleet, config);
    double via_assignment = objective_z(assignment, bag, fleet, config);
    double via_plan = varying_length_z(plan, counts, sizes, config);
    ++checked;
    bool ok = close(via_plan, via_assignment);

    if (!varying) {
      // single class: the equal-length form must agree too
      EqualLengthPlan eq;
      for (const auto& [tid, n] : plan.per_type_leased) {
        eq.per_type_leased[tid] = n;
        eq.per_type_q[tid] = plan.per_type_class_q.at(tid)[0];
      }
      ok = ok && close(equal_length_z(eq, d, sizes[0], config), via_assignment);
    }
    if (ok) ++agreed;
  }

  std::ostringstream detail;
  detail << agreed << "/" << checked << " plans agree within 1e-9, " << seconds_since(t0)
         << "s";
  report(2, "closed forms match the assignment objective", checked >= 100 && agreed == checked,
         detail.str());
}

void criterion3_worked_instances() {
  CloudConfig mix({{"p", ResourceKind::Public, 2.0, 2.0, 2},
                   {"f", ResourceKind::Private, 1.0, 1.0, 1}});
  bool ok = true;
  std::ostringstream detail;

  double z_equal = solve_equal_length(3, 2.0, mix).best_z;
  ok = ok && z_equal == 8.0;
  detail << "equal-length z=" << z_equal;

  CloudConfig two({{"p", ResourceKind::Public, 1.0, 2.0, 1},
                   {"f", ResourceKind::Private, 1.0, 1.0, 1}});
  double z_vary = solve_varying_length({2, 1}, {1.0, 3.0}, two).best_z;
  ok = ok && z_vary == 17.0;
  detail << ", varying-length z=" << z_vary;

  CloudConfig unit({{"p", ResourceKind::Public, 1.0, 1.0, 2},
                    {"f", ResourceKind::Private, 1.0, 1.0, 1}});
  std::vector<ResourceInstance> fleet{{"R1", "p"}, {"R2", "p"}};
  std::vector<Operation> w1_ops;
  w1_ops.emplace_back(0, 2.0, std::set<std::string>{"R1"});
  w1_ops.emplace_back(1, 1.0, std::set<std::string>{"R2"});
  Workload w1("W1", 3.0, 0.0, 1.0, w1_ops);
  std::vector<Operation> w2_ops;
  w2_ops.emplace_back(0, 3.0, std::set<std::string>{"R2"});
  Workload w2("W2", 3.0, 0.0, 0.0, w2_ops);
  auto [schedule, metrics] = edbrs_schedule({w1, w2}, fleet, unit, 1.0);
  ok = ok && metrics.makespan == 6.0;
  detail << ", dispatch makespan=" << metrics.makespan;

  report(3, "worked instances reproduce exactly", ok, detail.str());
}

struct TrendCell {
  long long n_workloads;
  std::string algo;
  MetricsReport metrics;
};

void criteria4_to_6_scale_suite() {
  auto t0 = std::chrono::steady_clock::now();
  long long schedules = 0;
  long long invalid = 0;
  std::string first_bad;

  std::vector<TrendCell> trend_cells;

  for (long long nw : {100LL, 200LL, 300LL}) {
    for (long long ni : {50LL, 60LL, 70LL}) {
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        GenSpec spec;
        spec.seed = seed;
        spec.n_workloads = nw;
        spec.n_instances = ni;
        auto scenario = generate(spec);

        struct Run {
          const char* name;
          Schedule schedule;
        };
        std::vector<Run> runs;
        // window < delivery span, so several delivery-date batches are live
        runs.push_back({"edbrs", edbrs_schedule(scenario.bag.workloads(), scenario.instances,
                                                scenario.config, 0.25)
                                     .first});
        runs.push_back({"fcfs", fcfs_schedule(scenario.bag.workloads(), scenario.instances,
                                              scenario.config)});
        runs.push_back({"minmin", min_min_schedule(scenario.bag.workloads(),
                                                   scenario.instances, scenario.config)});
        runs.push_back({"maxmin", max_min_schedule(scenario.bag.workloads(),
                                                   scenario.instances, scenario.config)});
        for (auto& run : runs) {
          ++schedules;
          auto violations = validate_schedule(run.schedule, scenario.bag.workloads(),
                                              scenario.instances, scenario.config);
          if (!violations.empty()) {
            ++invalid;
            if (first_bad.empty()) {
              std::ostringstream os;
              os << run.name << " seed " << seed << " " << nw << "x" << ni << ": "
                 << violations.front().description;
              first_bad = os.str();
            }
          }
        }

        // single-batch comparison runs for the trend criteria at 50 machines
        if (ni == 50) {
          auto [es, em] = edbrs_schedule(scenario.bag.workloads(), scenario.instances,
                                         scenario.config, 1.0);
          (void)es;
          trend_cells.push_back({nw, "edbrs", em});
          if (nw == 300) {
            auto fs =
                fcfs_schedule(scenario.bag.workloads(), scenario.instances, scenario.config);
            trend_cells.push_back({nw, "fcfs",
                                   compute_metrics(fs, scenario.bag.workloads(),
                                                   scenario.instances, scenario.config)});
          }
        }
      }
    }
  }

  std::ostringstream d4;
  d4 << (schedules - invalid) << "/" << schedules << " schedules valid, " << seconds_since(t0)
     << "s";
  if (!first_bad.empty()) d4 << "; first: " << first_bad;
  report(4, "every emitted schedule passes validation", invalid == 0, d4.str());

  // Criterion 5: seed-averaged dominance over FCFS at 300x50.
  double edbrs_z = 0.0, edbrs_make = 0.0, fcfs_z = 0.0, fcfs_make = 0.0;
  int n_edbrs = 0, n_fcfs = 0;
  for (const auto& cell : trend_cells) {
    if (cell.n_workloads != 300) continue;
    if (cell.algo == "edbrs") {
      edbrs_z += cell.metrics.objective_z;
      edbrs_make += cell.metrics.makespan;
      ++n_edbrs;
    } else {
      fcfs_z += cell.metrics.objective_z;
      fcfs_make += cell.metrics.makespan;
      ++n_fcfs;
    }
  }
  edbrs_z /= n_edbrs;
  edbrs_make /= n_edbrs;
  fcfs_z /= n_fcfs;
  fcfs_make /= n_fcfs;
  {
    std::ostringstream os;
    os << "mean z " << format_sig6(edbrs_z) << " vs " << format_sig6(fcfs_z)
       << ", mean makespan " << format_sig6(edbrs_make) << " vs " << format_sig6(fcfs_make)
       << " over " << n_edbrs << " seeds";
    report(5, "priority dispatch beats FCFS on cost x time and makespan",
           edbrs_z <= fcfs_z && edbrs_make <= fcfs_make, os.str());
  }

  // Criterion 6: seed-averaged cost per workload is non-decreasing in the
  // workload count; adjacent dips of up to 2% tolerated.
  std::map<long long, std::pair<double, int>> cost_by_scale;
  for (const auto& cell : trend_cells) {
    if (cell.algo != "edbrs") continue;
    auto& acc = cost_by_scale[cell.n_workloads];
    acc.first += cell.metrics.cost_per_workload;
    ++acc.second;
  }
  std::vector<double> series;
  std::ostringstream os6;
  for (auto& [scale, acc] : cost_by_scale) {
    series.push_back(acc.first / acc.second);
    os6 << scale << "->" << format_sig6(series.back()) << " ";
  }
  bool trend_ok = series.size() == 3;
  for (std::size_t i = 1; i < series.size(); ++i)
    trend_ok = trend_ok && series[i] >= 0.98 * series[i - 1];
  report(6, "cost per workload does not fall as the bag grows", trend_ok, os6.str());
}

void criterion7_determinism() {
  auto make_config = [](const std::string& path) {
    ExperimentConfig config;
    config.gen_template.n_public_types = 2;
    config.gen_template.ops_per_workload_range = {1, 2};
    config.gen_template.eligibility_density = 0.8;
    config.workload_scales = {30};
    config.instance_scales = {8};
    config.algorithms = {"edbrs", "fcfs", "minmin", "maxmin"};
    config.seeds = {1, 2, 3};
    config.batch_window = 0.5;
    config.output_path = path;
    return config;
  };
  const std::string p1 = "/tmp/bowlab_accept_a.csv";
  const std::string p2 = "/tmp/bowlab_accept_b.csv";
  auto r1 = run_experiment(make_config(p1));
  auto r2 = run_experiment(make_config(p2));

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  std::string a = slurp(p1);
  std::string b = slurp(p2);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  bool ok = r1.status == RunStatus::Ok && r2.status == RunStatus::Ok && !a.empty() && a == b;
  std::ostringstream os;
  os << a.size() << " bytes, reruns " << (a == b ? "identical" : "differ");
  report(7, "identical configs produce identical CSV bytes", ok, os.str());
}

void criterion8_property_suites() {
  SplitMix64 rng(0xb0b);
  long long cases = 0;
  long long failures = 0;
  std::string first;

  auto fail = [&](const std::string& what) {
    ++failures;
    if (first.empty()) first = what;
  };

  // Billing never drops as load grows.
  for (int k = 0; k < 1000; ++k) {
    ResourceType t{"t", rng.next_double() < 0.5 ? ResourceKind::Public : ResourceKind::Private,
                   0.5 + rng.next_double() * 3.5, rng.next_double() * 5.0, 1};
    double atu = 0.25 + rng.next_double() * 2.0;
    double lo = rng.next_double() * 40.0;
    double hi = lo + rng.next_double() * 40.0;
    ++cases;
    if (resource_cost(lo, t, atu) > resource_cost(hi, t, atu)) fail("monotonicity");
  }

  // Public billing is constant inside a step of width speed x atu and jumps
  // by exactly the per-ATU rate between steps.
  for (int k = 0; k < 1000; ++k) {
    ResourceType t{"t", ResourceKind::Public, 0.5 + rng.next_double() * 3.5,
                   0.1 + rng.next_double() * 5.0, 1};
    double atu = 0.25 + rng.next_double() * 2.0;
    double width = t.speed * atu;
    long long step = 1 + static_cast<long long>(rng.next_below(20));
    double a = (static_cast<double>(step - 1) + 0.02 + rng.next_double() * 0.96) * width;
    double b = (static_cast<double>(step - 1) + 0.02 + rng.next_double() * 0.96) * width;
    double next = (static_cast<double>(step) + 0.02 + rng.next_double() * 0.96) * width;
    ++cases;
    double ca = resource_cost(a, t, atu);
    double cb = resource_cost(b, t, atu);
    double cn = resource_cost(next, t, atu);
    if (ca != cb)
      fail("step constant");
    else if (std::fabs(cn - ca - t.cost_per_atu) > 1e-9 * std::max(1.0, cn))
      fail("step jump");
  }

  // Comparator laws: irreflexivity, asymmetry, transitivity, totality.
  {
    std::vector<Workload> pool;
    for (int i = 0; i < 60; ++i)
      pool.push_back(Workload("w" + std::to_string(i),
                              1.0 + static_cast<double>(rng.next_below(3)),
                              static_cast<double>(rng.next_below(3)),
                              static_cast<double>(rng.next_below(3)), {}));
    SortOptions opts;
    for (int k = 0; k < 1000; ++k) {
      const Workload& a = pool[rng.next_below(pool.size())];
      const Workload& b = pool[rng.next_below(pool.size())];
      const Workload& c = pool[rng.next_below(pool.size())];
      ++cases;
      bool ok = !workload_order_before(a, a, opts);
      ok = ok && !(workload_order_before(a, b, opts) && workload_order_before(b, a, opts));
      if (workload_order_before(a, b, opts) && workload_order_before(b, c, opts))
        ok = ok && workload_order_before(a, c, opts);
      if (a.workload_id() != b.workload_id())
        ok = ok && (workload_order_before(a, b, opts) || workload_order_before(b, a, opts));
      if (!ok) fail("comparator laws");
    }
  }

  // Sorting is a pure function of the set, not the input order.
  {
    std::vector<Workload> pool;
    for (int i = 0; i < 40; ++i)
      pool.push_back(Workload("w" + std::to_string(i),
                              1.0 + static_cast<double>(rng.next_below(4)),
                              static_cast<double>(rng.next_below(3)),
                              static_cast<double>(rng.next_below(2)), {}));
    std::vector<std::string> reference;
    for (const auto& w : sort_workloads(pool)) reference.push_back(w.workload_id());
    for (int k = 0; k < 1000; ++k) {
      for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[rng.next_below(i)]);
      std::vector<std::string> shuffled;
      for (const auto& w : sort_workloads(pool)) shuffled.push_back(w.workload_id());
      ++cases;
      if (shuffled != reference) fail("sort permutation invariance");
    }
  }

  // Metrics ignore schedule entry order.
  {
    GenSpec spec;
    spec.seed = 2024;
    spec.n_workloads = 16;
    spec.n_instances = 5;
    spec.ops_per_workload_range = {1, 2};
    spec.delivery_window = 2.0;
    auto scenario = generate(spec);
    auto [schedule, base] =
        edbrs_schedule(scenario.bag.workloads(), scenario.instances, scenario.config, 1.0);
    for (int k = 0; k < 1000; ++k) {
      for (std::size_t i = schedule.entries.size(); i > 1; --i)
        std::swap(schedule.entries[i - 1], schedule.entries[rng.next_below(i)]);
      auto m = compute_metrics(schedule, scenario.bag.workloads(), scenario.instances,
                               scenario.config);
      ++cases;
      if (m.makespan != base.makespan || m.total_cost != base.total_cost ||
          m.objective_z != base.objective_z || m.mean_exec_time != base.mean_exec_time)
        fail("metrics permutation invariance");
    }
  }

  std::ostringstream os;
  os << cases << " cases, " << failures << " failures";
  if (!first.empty()) os << "; first: " << first;
  report(8, "randomized property suites hold", failures == 0, os.str());
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1_oracle_equivalence();
  criterion2_closed_form_agreement();
  criterion3_worked_instances();
  criteria4_to_6_scale_suite();
  criterion7_determinism();
  criterion8_property_suites();
  std::printf("%d/8 criteria passed in %.1fs\n", 8 - g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
