#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fvmcts/generative_model.hpp"
#include "fvmcts/stats.hpp"

namespace fvmcts {

// ---------------------------------------------------------------------------
// Naive MCTS over the joint action space.

struct NaiveMctsConfig {
  std::size_t iterations = 1000;
  std::optional<std::chrono::duration<double>> time_budget;
  std::size_t depth = 10;
  double exploration = 1.0;
  std::optional<double> discount;
  // Total joint-action entries allowed across all visited states.
  std::size_t memory_cap = 1'000'000;
};

/// Per-state joint-action statistics: N(s), and N(s, a), Q(s, a) for every
/// joint action (agent 0 is the most significant digit of the index).
struct JointActionNode {
  std::vector<std::size_t> action_counts;
  std::uint64_t visits = 0;
  StatTable joint;
};

class NaiveMcts {
 public:
  NaiveMcts(const GenerativeModel& model, NaiveMctsConfig cfg, std::uint64_t seed);

  /// Throws MemoryGuardError when a new state's table would push the store
  /// past the entry cap.
  JointAction plan(const JointState& s);
  double simulate(const JointState& s, std::size_t depth);

  void reset();
  std::size_t total_entries() const noexcept { return total_entries_; }
  std::size_t peak_state_entries() const noexcept { return peak_state_entries_; }
  std::size_t n_states() const noexcept { return nodes_.size(); }
  const JointActionNode* find(const JointState& s) const;

 private:
  JointActionNode& node_for(const JointState& s);
  std::size_t select(const JointActionNode& node, double c) const;
  JointAction decode(const JointActionNode& node, std::size_t index) const;

  const GenerativeModel& model_;
  NaiveMctsConfig cfg_;
  double gamma_;
  Rng rng_;
  std::unordered_map<JointState, JointActionNode, JointStateHash> nodes_;
  std::size_t total_entries_ = 0;
  std::size_t peak_state_entries_ = 0;
};

// ---------------------------------------------------------------------------
// Independent tabular Q-learning, one table per agent keyed by its local state.

struct IqlConfig {
  double learning_rate = 0.1;
  double epsilon = 0.1;       // initial exploration rate
  bool linear_decay = true;   // epsilon decays linearly to 0 over training
  std::size_t episodes = 10'000;
  std::size_t max_steps = 50;
  std::optional<double> discount;
};

struct IqlTables {
  // tables[i][local_state] -> Q_i over agent i's actions
  std::vector<std::unordered_map<std::uint64_t, std::vector<double>>> tables;
  std::size_t entries() const noexcept;
};

/// Greedy action of one agent; unseen states and ties give the lowest index.
Action iql_greedy(const IqlTables& q, AgentIndex agent, std::uint64_t local_state,
                  std::size_t n_actions);

IqlTables iql_train(const GenerativeModel& model, const IqlConfig& cfg, Rng& rng);

JointAction iql_act(const IqlTables& q, const GenerativeModel& model, const JointState& s);

// ---------------------------------------------------------------------------

/// Independent uniform sample from each agent's action set.
JointAction random_policy(const GenerativeModel& model, const JointState& s, Rng& rng);

}  // namespace fvmcts
