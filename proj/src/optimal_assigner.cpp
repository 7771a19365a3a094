#include "bowlab/optimal_assigner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

namespace bowlab {

namespace {

double prune_slack(double z) { return 1e-12 * (1.0 + std::fabs(z)); }

// Lower bound on the objective added by one more workload of size E anywhere
// in the fleet: cost x time with ceilings relaxed to exact division.
double min_marginal_rate(double E, const std::vector<const ResourceType*>& types,
                         double atu_length) {
  double best = std::numeric_limits<double>::infinity();
  for (const ResourceType* t : types) {
    double rate = t->cost_per_atu * E * E / (t->speed * t->speed * atu_length);
    best = std::min(best, rate);
  }
  return best;
}

struct EqualCandidate {
  EqualLengthPlan plan;
  double z = 0.0;
  long long total_leased = 0;
  std::vector<long long> q_vec;
  std::vector<long long> n_vec;
};

bool better_equal(const EqualCandidate& a, const EqualCandidate& b) {
  if (a.z != b.z) return a.z < b.z;
  if (a.total_leased != b.total_leased) return a.total_leased < b.total_leased;
  if (a.q_vec != b.q_vec) return a.q_vec < b.q_vec;
  return a.n_vec < b.n_vec;
}

struct EqualSearch {
  EqualSearch(const std::vector<ResourceType>& types_in, double E_in, long long d_in,
              const CloudConfig& config_in, std::uint64_t budget_in)
      : types(types_in), E(E_in), d(d_in), config(config_in), budget(budget_in) {}

  const std::vector<ResourceType>& types;
  double E;
  long long d;
  const CloudConfig& config;
  std::uint64_t budget;

  std::uint64_t nodes = 0;
  bool budget_hit = false;
  bool found = false;
  EqualCandidate best;

  std::vector<long long> n_choice;
  std::vector<long long> q_choice;
  double per_workload_bound = 0.0;

  void consider_leaf() {
    EqualCandidate cand;
    cand.q_vec = q_choice;
    cand.n_vec = n_choice;
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (n_choice[i] == 0) continue;
      cand.plan.per_type_leased[types[i].type_id] = n_choice[i];
      cand.plan.per_type_q[types[i].type_id] = q_choice[i];
      cand.total_leased += n_choice[i];
    }
    cand.z = equal_length_z(cand.plan, d, E, config);
    if (!found || better_equal(cand, best)) {
      best = std::move(cand);
      found = true;
    }
  }

  void recurse(std::size_t i, long long remaining, double partial_z) {
    if (budget_hit) return;
    if (found) {
      double bound = partial_z + static_cast<double>(remaining) * per_workload_bound;
      if (bound > best.z + prune_slack(best.z)) return;
    }
    if (i == types.size()) {
      if (remaining == 0) consider_leaf();
      return;
    }
    const ResourceType& t = types[i];
    // Skip this type entirely.
    n_choice[i] = 0;
    q_choice[i] = 0;
    if (++nodes > budget) { budget_hit = true; return; }
    recurse(i + 1, remaining, partial_z);
    // Lease n machines carrying q workloads each.
    for (long long n = 1; n <= t.lease_limit && !budget_hit; ++n) {
      for (long long q = 1; n * q <= remaining && !budget_hit; ++q) {
        n_choice[i] = n;
        q_choice[i] = q;
        if (++nodes > budget) { budget_hit = true; return; }
        double contribution = static_cast<double>(n) *
                              load_z(static_cast<double>(q) * E, t, config.atu_length());
        recurse(i + 1, remaining - n * q, partial_z + contribution);
      }
    }
    n_choice[i] = 0;
    q_choice[i] = 0;
  }
};

}  // namespace

SolveResult<EqualLengthPlan> solve_equal_length(long long d, double E, const CloudConfig& config,
                                                const SolverOptions& options) {
  if (d < 0) throw Error(ErrorCode::Infeasible, "negative workload count");
  if (!(E > 0.0)) throw Error(ErrorCode::Infeasible, "workload size must be > 0");

  EqualSearch search{config.types(), E, d, config, options.node_budget};
  search.n_choice.assign(config.types().size(), 0);
  search.q_choice.assign(config.types().size(), 0);
  std::vector<const ResourceType*> type_ptrs;
  for (const auto& t : config.types()) type_ptrs.push_back(&t);
  search.per_workload_bound = min_marginal_rate(E, type_ptrs, config.atu_length());

  // Seed with single-type plans so pruning starts with a finite incumbent.
  for (const auto& t : config.types()) {
    if (t.lease_limit < 1 || d == 0) continue;
    EqualCandidate cand;
    cand.plan.per_type_leased[t.type_id] = 1;
    cand.plan.per_type_q[t.type_id] = d;
    cand.total_leased = 1;
    cand.n_vec.assign(config.types().size(), 0);
    cand.q_vec.assign(config.types().size(), 0);
    for (std::size_t i = 0; i < config.types().size(); ++i) {
      if (config.types()[i].type_id == t.type_id) {
        cand.n_vec[i] = 1;
        cand.q_vec[i] = d;
      }
    }
    cand.z = equal_length_z(cand.plan, d, E, config);
    if (!search.found || better_equal(cand, search.best)) {
      search.best = std::move(cand);
      search.found = true;
    }
  }

  search.recurse(0, d, 0.0);

  if (!search.found) throw Error(ErrorCode::Infeasible, "no feasible equal-length plan");
  SolveResult<EqualLengthPlan> out;
  out.best = search.best.plan;
  out.best_z = search.best.z;
  out.nodes_explored = search.nodes;
  out.proven_optimal = !search.budget_hit;
  return out;
}

namespace {

struct VaryingCandidate {
  VaryingLengthPlan plan;
  double z = 0.0;
  long long total_leased = 0;
  std::vector<long long> flat_q;
  std::vector<long long> n_vec;
};

bool better_varying(const VaryingCandidate& a, const VaryingCandidate& b) {
  if (a.z != b.z) return a.z < b.z;
  if (a.total_leased != b.total_leased) return a.total_leased < b.total_leased;
  if (a.flat_q != b.flat_q) return a.flat_q < b.flat_q;
  return a.n_vec < b.n_vec;
}

struct VaryingSearch {
  VaryingSearch(const std::vector<ResourceType>& types_in, const std::vector<long long>& counts_in,
                const std::vector<double>& sizes_in, const CloudConfig& config_in,
                std::uint64_t budget_in)
      : types(types_in), counts(counts_in), sizes(sizes_in), config(config_in), budget(budget_in) {}

  const std::vector<ResourceType>& types;
  const std::vector<long long>& counts;
  const std::vector<double>& sizes;
  const CloudConfig& config;
  std::uint64_t budget;

  std::uint64_t nodes = 0;
  bool budget_hit = false;
  bool found = false;
  VaryingCandidate best;

  std::vector<long long> n_choice;
  std::vector<std::vector<long long>> q_choice;  // per type, per class
  std::vector<long long> remaining;
  std::vector<double> class_rate;  // marginal-objective bound per workload of each class

  double remaining_bound() const {
    double bound = 0.0;
    for (std::size_t a = 0; a < remaining.size(); ++a)
      bound += static_cast<double>(remaining[a]) * class_rate[a];
    return bound;
  }

  void consider_leaf() {
    VaryingCandidate cand;
    cand.n_vec = n_choice;
    for (std::size_t i = 0; i < types.size(); ++i) {
      cand.flat_q.insert(cand.flat_q.end(), q_choice[i].begin(), q_choice[i].end());
      if (n_choice[i] == 0) continue;
      cand.plan.per_type_leased[types[i].type_id] = n_choice[i];
      cand.plan.per_type_class_q[types[i].type_id] = q_choice[i];
      cand.total_leased += n_choice[i];
    }
    cand.z = varying_length_z(cand.plan, counts, sizes, config);
    if (!found || better_varying(cand, best)) {
      best = std::move(cand);
      found = true;
    }
  }

  bool pruned(double partial_z) {
    if (!found) return false;
    return partial_z + remaining_bound() > best.z + prune_slack(best.z);
  }

  void type_step(std::size_t i, double partial_z) {
    if (budget_hit || pruned(partial_z)) return;
    if (i == types.size()) {
      for (long long r : remaining)
        if (r != 0) return;
      consider_leaf();
      return;
    }
    const ResourceType& t = types[i];
    // Skip this type.
    n_choice[i] = 0;
    std::fill(q_choice[i].begin(), q_choice[i].end(), 0);
    if (++nodes > budget) { budget_hit = true; return; }
    type_step(i + 1, partial_z);
    for (long long n = 1; n <= t.lease_limit && !budget_hit; ++n) {
      n_choice[i] = n;
      class_step(i, n, 0, 0.0, partial_z);
    }
    n_choice[i] = 0;
  }

  // Chooses q[class a..] for type i leased n times; `load` accumulates the
  // per-machine work already committed on this type.
  void class_step(std::size_t i, long long n, std::size_t a, double load, double partial_z) {
    if (budget_hit) return;
    if (a == sizes.size()) {
      if (load <= 0.0) return;  // leasing idle machines is never optimal
      double contribution =
          static_cast<double>(n) * load_z(load, types[i], config.atu_length());
      type_step(i + 1, partial_z + contribution);
      return;
    }
    long long max_q = n > 0 ? remaining[a] / n : 0;
    for (long long q = 0; q <= max_q && !budget_hit; ++q) {
      q_choice[i][a] = q;
      remaining[a] -= n * q;
      if (++nodes > budget) { budget_hit = true; }
      else class_step(i, n, a + 1, load + static_cast<double>(q) * sizes[a], partial_z);
      remaining[a] += n * q;
      q_choice[i][a] = 0;
    }
  }
};

}  // namespace

SolveResult<VaryingLengthPlan> solve_varying_length(const std::vector<long long>& class_counts,
                                                    const std::vector<double>& class_sizes,
                                                    const CloudConfig& config,
                                                    const SolverOptions& options) {
  if (class_counts.size() != class_sizes.size())
    throw Error(ErrorCode::Infeasible, "class_counts and class_sizes disagree in length");
  for (long long c : class_counts)
    if (c < 0) throw Error(ErrorCode::Infeasible, "negative class count");
  for (double s : class_sizes)
    if (!(s > 0.0)) throw Error(ErrorCode::Infeasible, "class sizes must be > 0");

  VaryingSearch search{config.types(), class_counts, class_sizes, config, options.node_budget};
  std::size_t n_types = config.types().size();
  search.n_choice.assign(n_types, 0);
  search.q_choice.assign(n_types, std::vector<long long>(class_sizes.size(), 0));
  search.remaining = class_counts;

  std::vector<const ResourceType*> type_ptrs;
  for (const auto& t : config.types()) type_ptrs.push_back(&t);
  search.class_rate.resize(class_sizes.size());
  for (std::size_t a = 0; a < class_sizes.size(); ++a)
    search.class_rate[a] = min_marginal_rate(class_sizes[a], type_ptrs, config.atu_length());

  long long total = 0;
  for (long long c : class_counts) total += c;

  // Seed: one machine of a usable type takes everything.
  for (std::size_t i = 0; i < n_types && total > 0; ++i) {
    const auto& t = config.types()[i];
    if (t.lease_limit < 1) continue;
    VaryingCandidate cand;
    cand.plan.per_type_leased[t.type_id] = 1;
    cand.plan.per_type_class_q[t.type_id] = class_counts;
    cand.total_leased = 1;
    cand.n_vec.assign(n_types, 0);
    cand.n_vec[i] = 1;
    cand.flat_q.assign(n_types * class_counts.size(), 0);
    for (std::size_t a = 0; a < class_counts.size(); ++a)
      cand.flat_q[i * class_counts.size() + a] = class_counts[a];
    cand.z = varying_length_z(cand.plan, class_counts, class_sizes, config);
    if (!search.found || better_varying(cand, search.best)) {
      search.best = std::move(cand);
      search.found = true;
    }
  }

  search.type_step(0, 0.0);

  if (!search.found) {
    if (total == 0) {
      SolveResult<VaryingLengthPlan> out;
      out.best_z = 0.0;
      out.nodes_explored = search.nodes;
      out.proven_optimal = true;
      return out;
    }
    throw Error(ErrorCode::Infeasible, "no feasible varying-length plan");
  }
  SolveResult<VaryingLengthPlan> out;
  out.best = search.best.plan;
  out.best_z = search.best.z;
  out.nodes_explored = search.nodes;
  out.proven_optimal = !search.budget_hit;
  return out;
}

SolveResult<Assignment> brute_force_oracle(const BagOfWorkloads& bag,
                                           const std::vector<ResourceInstance>& instances,
                                           const CloudConfig& config, const OracleCaps& caps) {
  if (bag.size() > caps.max_workloads) {
    std::ostringstream os;
    os << bag.size() << " workloads exceed oracle cap " << caps.max_workloads;
    throw Error(ErrorCode::TooLargeForOracle, os.str());
  }
  if (instances.size() > caps.max_instances) {
    std::ostringstream os;
    os << instances.size() << " instances exceed oracle cap " << caps.max_instances;
    throw Error(ErrorCode::TooLargeForOracle, os.str());
  }
  validate_fleet(instances, config);

  SolveResult<Assignment> out;
  if (bag.empty()) {
    out.proven_optimal = true;
    return out;
  }
  if (instances.empty())
    throw Error(ErrorCode::Infeasible, "no instances to assign workloads to");

  std::vector<const ResourceType*> inst_type(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i)
    inst_type[i] = &config.type_of(instances[i].type_id);

  const auto& workloads = bag.workloads();
  std::vector<std::size_t> choice(workloads.size(), 0);
  std::vector<double> loads(instances.size(), 0.0);

  double best_z = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_choice;
  std::uint64_t evaluated = 0;

  // Odometer over all |instances|^d mappings, evaluating each complete one.
  std::size_t level = 0;
  while (true) {
    if (level == workloads.size()) {
      ++evaluated;
      std::vector<double> contributions;
      for (std::size_t i = 0; i < instances.size(); ++i)
        if (loads[i] > 0.0)
          contributions.push_back(load_z(loads[i], *inst_type[i], config.atu_length()));
      double z = sum_sorted(std::move(contributions));
      if (z < best_z) {
        best_z = z;
        best_choice = choice;
      }
      // Backtrack to the next mapping.
      while (level > 0) {
        --level;
        loads[choice[level]] -= workloads[level].exec_time();
        if (++choice[level] < instances.size()) break;
        choice[level] = 0;
      }
      if (level == 0 && choice[0] == 0) break;  // odometer wrapped
      loads[choice[level]] += workloads[level].exec_time();
      ++level;
      continue;
    }
    loads[choice[level]] += workloads[level].exec_time();
    ++level;
  }

  for (std::size_t r = 0; r < workloads.size(); ++r)
    out.best.mapping[workloads[r].workload_id()] = instances[best_choice[r]].instance_id;
  out.best_z = objective_z(out.best, bag, instances, config);
  out.nodes_explored = evaluated;
  out.proven_optimal = true;
  return out;
}

Assignment materialize_plan(const VaryingLengthPlan& plan, const BagOfWorkloads& bag,
                            const std::vector<ResourceInstance>& instances,
                            const CloudConfig& config) {
  SizeClasses classes = size_classes(bag);
  std::vector<std::deque<const Workload*>> queues(classes.sizes.size());
  for (const auto& w : bag.workloads()) {
    auto it = std::lower_bound(classes.sizes.begin(), classes.sizes.end(), w.exec_time());
    queues[static_cast<std::size_t>(it - classes.sizes.begin())].push_back(&w);
  }

  Assignment out;
  for (const auto& t : config.types()) {
    long long leased = plan.leased_for(t.type_id);
    if (leased == 0) continue;
    std::vector<const ResourceInstance*> machines;
    for (const auto& inst : instances)
      if (inst.type_id == t.type_id) machines.push_back(&inst);
    if (static_cast<long long>(machines.size()) < leased)
      throw Error(ErrorCode::PlanInfeasible,
                  "plan leases more machines of " + t.type_id + " than the fleet holds");
    for (long long m = 0; m < leased; ++m) {
      for (std::size_t a = 0; a < classes.sizes.size(); ++a) {
        long long q = plan.q_for(t.type_id, a);
        for (long long k = 0; k < q; ++k) {
          if (queues[a].empty())
            throw Error(ErrorCode::PlanInfeasible, "plan overcommits a size class");
          out.mapping[queues[a].front()->workload_id()] = machines[m]->instance_id;
          queues[a].pop_front();
        }
      }
    }
  }
  for (const auto& queue : queues)
    if (!queue.empty())
      throw Error(ErrorCode::PlanInfeasible, "plan leaves workloads unassigned");
  return out;
}

namespace {

struct GeneralSearch {
  GeneralSearch(const std::vector<const Workload*>& order_in,
                const std::vector<ResourceInstance>& instances_in,
                const std::vector<const ResourceType*>& inst_type_in,
                const CloudConfig& config_in, std::uint64_t budget_in)
      : order(order_in), instances(instances_in), inst_type(inst_type_in), config(config_in),
        budget(budget_in) {}

  const std::vector<const Workload*>& order;
  const std::vector<ResourceInstance>& instances;
  const std::vector<const ResourceType*>& inst_type;
  const CloudConfig& config;
  std::uint64_t budget;

  std::uint64_t nodes = 0;
  bool budget_hit = false;
  std::vector<double> loads;
  std::vector<double> inst_z;       // load_z of each instance's current load
  std::vector<double> suffix_bound; // bound on the objective of items j..end
  std::vector<std::size_t> choice;

  double best_z = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_choice;
  bool found = false;

  void recurse(std::size_t j, double partial_z) {
    if (budget_hit) return;
    if (partial_z + suffix_bound[j] > best_z + prune_slack(best_z)) return;
    if (j == order.size()) {
      if (partial_z < best_z) {
        best_z = partial_z;
        best_choice = choice;
        found = true;
      }
      return;
    }
    // Equal-size workloads are interchangeable: keep their machine indices
    // non-decreasing.
    std::size_t first = 0;
    if (j > 0 && order[j]->exec_time() == order[j - 1]->exec_time()) first = choice[j - 1];
    for (std::size_t i = first; i < instances.size(); ++i) {
      bool mirrored = false;
      for (std::size_t k = 0; k < i; ++k) {
        if (inst_type[k]->type_id == inst_type[i]->type_id && loads[k] == loads[i]) {
          mirrored = true;  // identical machine already tried
          break;
        }
      }
      if (mirrored) continue;
      if (++nodes > budget) { budget_hit = true; return; }
      double old_z = inst_z[i];
      loads[i] += order[j]->exec_time();
      inst_z[i] = load_z(loads[i], *inst_type[i], config.atu_length());
      choice[j] = i;
      recurse(j + 1, partial_z - old_z + inst_z[i]);
      loads[i] -= order[j]->exec_time();
      inst_z[i] = old_z;
      if (budget_hit) return;
    }
  }
};

}  // namespace

SolveResult<Assignment> solve_general(const BagOfWorkloads& bag,
                                      const std::vector<ResourceInstance>& instances,
                                      const CloudConfig& config, const SolverOptions& options) {
  SolveResult<Assignment> out;
  if (bag.empty()) {
    out.proven_optimal = true;
    return out;
  }
  validate_fleet(instances, config);
  if (instances.empty())
    throw Error(ErrorCode::Infeasible, "no instances to assign workloads to");

  // Plan route: group into size classes and solve with lease limits clamped
  // to what the fleet actually holds.
  SizeClasses classes = size_classes(bag);
  std::map<std::string, long long> fleet_count;
  for (const auto& inst : instances) ++fleet_count[inst.type_id];
  std::vector<ResourceType> clamped = config.types();
  for (auto& t : clamped) {
    auto it = fleet_count.find(t.type_id);
    long long available = it == fleet_count.end() ? 0 : it->second;
    t.lease_limit = std::min(t.lease_limit, available);
  }
  CloudConfig clamped_config(clamped, config.atu_length());

  auto plan = solve_varying_length(classes.counts, classes.sizes, clamped_config, options);
  Assignment incumbent = materialize_plan(plan.best, bag, instances, config);
  double incumbent_z = objective_z(incumbent, bag, instances, config);

  // Exact refinement over per-machine splits the uniform plan cannot express.
  std::vector<const Workload*> order;
  for (const auto& w : bag.workloads()) order.push_back(&w);
  std::sort(order.begin(), order.end(), [](const Workload* a, const Workload* b) {
    if (a->exec_time() != b->exec_time()) return a->exec_time() > b->exec_time();
    return a->workload_id() < b->workload_id();
  });

  std::vector<const ResourceType*> inst_type(instances.size());
  std::vector<const ResourceType*> fleet_types;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    inst_type[i] = &config.type_of(instances[i].type_id);
    fleet_types.push_back(inst_type[i]);
  }

  GeneralSearch search{order, instances, inst_type, config, options.node_budget};
  search.loads.assign(instances.size(), 0.0);
  search.inst_z.assign(instances.size(), 0.0);
  search.choice.assign(order.size(), 0);
  search.suffix_bound.assign(order.size() + 1, 0.0);
  for (std::size_t j = order.size(); j-- > 0;)
    search.suffix_bound[j] =
        search.suffix_bound[j + 1] +
        min_marginal_rate(order[j]->exec_time(), fleet_types, config.atu_length());
  search.best_z = incumbent_z;

  search.recurse(0, 0.0);

  if (search.found) {
    Assignment refined;
    for (std::size_t j = 0; j < order.size(); ++j)
      refined.mapping[order[j]->workload_id()] = instances[search.best_choice[j]].instance_id;
    double refined_z = objective_z(refined, bag, instances, config);
    if (refined_z < incumbent_z) {
      incumbent = std::move(refined);
      incumbent_z = refined_z;
    }
  }

  out.best = std::move(incumbent);
  out.best_z = incumbent_z;
  out.nodes_explored = plan.nodes_explored + search.nodes;
  out.proven_optimal = plan.proven_optimal && !search.budget_hit;
  return out;
}

}  // namespace bowlab
