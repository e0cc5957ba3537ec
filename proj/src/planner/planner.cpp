#include "fvmcts/planner.hpp"

#include <cmath>
#include <random>

#include "fvmcts/varel.hpp"

namespace fvmcts {

void PlannerConfig::validate() const {
  if (depth < 1) throw ConfigError("planner: depth must be >= 1");
  const bool timed = time_budget && time_budget->count() > 0.0;
  if (iterations == 0 && !timed) {
    throw ConfigError("planner: need an iteration budget or a positive time budget");
  }
  if (exploration < 0.0) throw ConfigError("planner: exploration constant must be >= 0");
  if (discount && (*discount < 0.0 || *discount > 1.0)) {
    throw ConfigError("planner: discount must lie in [0, 1]");
  }
  if (maxplus.max_rounds < 1) throw ConfigError("planner: max-plus rounds must be >= 1");
}

FactoredPlanner::FactoredPlanner(const GenerativeModel& model, PlannerConfig cfg,
                                 std::uint64_t seed)
    : model_(model),
      cfg_(std::move(cfg)),
      gamma_(cfg_.discount.value_or(model.discount())),
      store_(cfg_.backend == Backend::kVarEl ? StatsMode::kVarEl : StatsMode::kMaxPlus),
      rng_(seed) {
  cfg_.validate();
  if (cfg_.backend == Backend::kVarEl && !model_.has_static_graph()) {
    throw ConfigError("Var-El backend requires a static coordination graph; " + model_.name() +
                      " builds its graph from the state");
  }
}

StateStats& FactoredPlanner::stats_for(const JointState& s) {
  if (auto* st = store_.find(s)) return *st;
  auto layout = model_.layout(s);
  if (cfg_.backend == Backend::kVarEl) {
    if (!static_graph_) {
      static_graph_ = layout.graph;
      order_ = elimination_order(*static_graph_);
    } else if (!(*layout.graph == *static_graph_)) {
      throw ConfigError("Var-El backend met a state-dependent coordination graph");
    }
  }
  return store_.lookup_or_init(s, std::move(layout));
}

JointAction FactoredPlanner::select(const StateStats& stats, double c, bool final_call) {
  if (hook_) hook_(c, final_call);
  if (cfg_.backend == Backend::kVarEl) return var_el_select(stats, order_, c);
  return max_plus(stats, cfg_.maxplus, c);
}

RewardVector FactoredPlanner::rollout(JointState s, std::size_t steps) {
  const std::size_t n = model_.n_agents();
  RewardVector total(n, 0.0);
  double weight = 1.0;
  JointAction a(n);
  for (std::size_t t = 0; t < steps && !model_.is_terminal(s); ++t) {
    for (AgentIndex i = 0; i < n; ++i) {
      std::uniform_int_distribution<Action> pick(0, static_cast<Action>(model_.num_actions(i, s)) - 1);
      a[i] = pick(rng_);
    }
    auto step = model_.step(s, a, rng_);
    for (AgentIndex i = 0; i < n; ++i) total[i] += weight * step.rewards[i];
    weight *= gamma_;
    s = std::move(step.next);
  }
  return total;
}

RewardVector FactoredPlanner::simulate(const JointState& s, std::size_t depth) {
  const std::size_t n = model_.n_agents();
  if (model_.is_terminal(s)) return RewardVector(n, 0.0);
  if (depth == 0) {
    return cfg_.rollout_steps ? rollout(s, cfg_.rollout_steps) : RewardVector(n, 0.0);
  }
  if (cfg_.backend == Backend::kVarEl && gamma_ < 1.0 && depth <= cfg_.depth) {
    const double elapsed = static_cast<double>(cfg_.depth - depth);
    if (std::pow(gamma_, elapsed) < cfg_.varel_cutoff) return RewardVector(n, 0.0);
  }

  // References into the store stay valid while deeper states are inserted.
  StateStats& stats = stats_for(s);
  const JointAction a = select(stats, cfg_.exploration, false);
  auto step = model_.step(s, a, rng_);
  if (step.rewards.size() != n) throw std::logic_error("model returned wrong reward length");
  RewardVector q = simulate(step.next, depth - 1);
  for (AgentIndex i = 0; i < n; ++i) q[i] = step.rewards[i] + gamma_ * q[i];

  if (cfg_.backend == Backend::kVarEl) {
    double team = 0.0;
    for (double v : q) team += v;
    update_varel_stats(stats, a, team);
  } else {
    update_maxplus_stats(stats, a, q);
  }
  return q;
}

JointAction FactoredPlanner::plan(const JointState& s) {
  if (model_.is_terminal(s)) throw std::invalid_argument("plan: state is terminal");
  using clock = std::chrono::steady_clock;
  std::optional<clock::time_point> deadline;
  if (cfg_.time_budget) {
    deadline = clock::now() + std::chrono::duration_cast<clock::duration>(*cfg_.time_budget);
  }
  std::size_t done = 0;
  while ((cfg_.iterations == 0 || done < cfg_.iterations) &&
         (!deadline || clock::now() < *deadline)) {
    simulate(s, cfg_.depth);
    ++done;
  }
  simulations_ += done;
  return select(stats_for(s), 0.0, true);
}

}  // namespace fvmcts
