#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "fvmcts/generative_model.hpp"
#include "fvmcts/maxplus.hpp"
#include "fvmcts/stats.hpp"

namespace fvmcts {

enum class Backend { kMaxPlus, kVarEl };

struct PlannerConfig {
  std::size_t iterations = 1000;  // 0: limited by time_budget only
  std::optional<std::chrono::duration<double>> time_budget;
  std::size_t depth = 10;
  double exploration = 1.0;
  std::optional<double> discount;  // defaults to the model's discount
  Backend backend = Backend::kMaxPlus;
  MaxPlusConfig maxplus;
  // Var-El simulations stop once gamma^steps falls below this (gamma < 1 only).
  double varel_cutoff = 0.01;
  // Uniform-random rollout steps below the depth cutoff. Zero disables it.
  std::size_t rollout_steps = 0;

  /// Throws ConfigError for an unusable configuration.
  void validate() const;
};

/// Factored-value MCTS over a coordination graph, with Max-Plus or Var-El
/// joint action selection.
///
/// One planner owns one statistics store and one rng; nothing is shared, so
/// independent planners may run on different threads.
class FactoredPlanner {
 public:
  /// Called for every coordination call: exploration constant and whether it
  /// is the final (returned) selection.
  using SelectionHook = std::function<void(double c, bool final_call)>;

  FactoredPlanner(const GenerativeModel& model, PlannerConfig cfg, std::uint64_t seed);

  /// Runs simulations from `s` until the budget is spent, then returns the
  /// exploration-free coordination result at `s`. Statistics accumulate
  /// across calls until reset().
  JointAction plan(const JointState& s);

  /// One simulation of `depth` steps from `s`; returns per-agent discounted
  /// returns.
  RewardVector simulate(const JointState& s, std::size_t depth);

  void reset() { store_.clear(); }
  void set_selection_hook(SelectionHook hook) { hook_ = std::move(hook); }

  const StatsStore& store() const noexcept { return store_; }
  const PlannerConfig& config() const noexcept { return cfg_; }
  std::size_t simulations() const noexcept { return simulations_; }
  Rng& rng() noexcept { return rng_; }

 private:
  StateStats& stats_for(const JointState& s);
  JointAction select(const StateStats& stats, double c, bool final_call);
  RewardVector rollout(JointState s, std::size_t steps);

  const GenerativeModel& model_;
  PlannerConfig cfg_;
  double gamma_;
  StatsStore store_;
  Rng rng_;
  SelectionHook hook_;
  std::size_t simulations_ = 0;
  std::shared_ptr<const CoordinationGraph> static_graph_;
  std::vector<AgentIndex> order_;
};

}  // namespace fvmcts
