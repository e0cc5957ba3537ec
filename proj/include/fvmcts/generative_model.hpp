#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "fvmcts/coordination_graph.hpp"
#include "fvmcts/stats.hpp"
#include "fvmcts/types.hpp"

namespace fvmcts {

struct StepResult {
  JointState next;
  RewardVector rewards;  // one entry per agent
};

/// Simulator contract for a cooperative multi-agent MDP.
///
/// Individual actions are indices 0..num_actions(i, s)-1. Implementations are
/// immutable and safe to share between threads; all randomness comes from the
/// caller's rng, so a fixed rng stream reproduces a trajectory.
class GenerativeModel {
 public:
  virtual ~GenerativeModel() = default;

  virtual std::size_t n_agents() const = 0;
  virtual double discount() const = 0;

  virtual JointState initial_state(Rng& rng) const = 0;
  virtual StepResult step(const JointState& s, const JointAction& a, Rng& rng) const = 0;
  virtual bool is_terminal(const JointState& s) const = 0;

  virtual std::shared_ptr<const CoordinationGraph> coordination_graph(const JointState& s) const = 0;
  virtual std::size_t num_actions(AgentIndex i, const JointState& s) const = 0;

  /// True when coordination_graph() returns the same graph for every state.
  virtual bool has_static_graph() const = 0;

  /// Key of agent i's own view of the state, used by independent learners.
  virtual std::uint64_t local_state(AgentIndex i, const JointState& s) const = 0;

  virtual std::string name() const = 0;
  virtual std::string topology() const = 0;

  StateLayout layout(const JointState& s) const {
    StateLayout out{coordination_graph(s), {}};
    out.action_counts.reserve(n_agents());
    for (AgentIndex i = 0; i < n_agents(); ++i) out.action_counts.push_back(num_actions(i, s));
    return out;
  }
};

}  // namespace fvmcts
