#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvmcts/coordination_graph.hpp"
#include "fvmcts/stats.hpp"
#include "fvmcts/types.hpp"

namespace fvmcts {

enum class MessageSchedule {
  // Agents update in ascending order and see messages sent earlier in the
  // same round.
  kSequential,
  // Every message of a round is computed from the previous round's values.
  // Data-parallel; reaches the same fixed points on trees.
  kSynchronous,
};

struct MaxPlusConfig {
  std::size_t max_rounds = 10;
  bool use_node_utilities = true;
  bool node_exploration = true;
  bool edge_exploration = false;
  bool message_normalization = true;
  double message_tolerance = 1e-6;
  std::optional<std::chrono::duration<double>> time_budget;
  MessageSchedule schedule = MessageSchedule::kSequential;

  // Test-only: add the edge bonus inside every round instead of once after the
  // last one. Diverges on cycles shorter than the round count.
  bool edge_bonus_every_round = false;

  /// Three-letter flag preset: agent utilities, node bonus, edge bonus, each
  /// T or F (e.g. "TTF").
  static MaxPlusConfig from_preset(const std::string& flags);
  std::string preset() const;
};

/// Messages mu_ij(a_j) for every directed edge of a graph. The message from i
/// to j is a vector over agent j's actions.
class MessageTable {
 public:
  MessageTable() = default;
  MessageTable(const CoordinationGraph& g, std::span<const std::size_t> action_counts);

  std::span<double> message(std::size_t edge, AgentIndex from);
  std::span<const double> message(std::size_t edge, AgentIndex from) const;

  std::span<double> raw() noexcept { return data_; }
  std::span<const double> raw() const noexcept { return data_; }

  double max_norm() const noexcept;
  double max_abs_difference(const MessageTable& other) const noexcept;

 private:
  const CoordinationGraph* graph_ = nullptr;
  std::vector<std::size_t> offsets_;  // 2 * edge + (from == edge.second)
  std::vector<std::size_t> lengths_;
  std::vector<double> data_;
};

/// Writes mu_ij into `out` (length |A_j|). `edge_bonus` > 0 adds the UCB edge
/// term c * sqrt(log(N + 1) / N_ij), with +inf for unvisited action pairs.
void compute_message(const StateStats& stats, const MessageTable& msgs, AgentIndex i,
                     AgentIndex j, double edge_bonus, bool use_node_utilities,
                     std::span<double> out);

std::vector<double> compute_message(const StateStats& stats, const MessageTable& msgs,
                                    AgentIndex i, AgentIndex j, double edge_bonus,
                                    bool use_node_utilities);

struct MaxPlusResult {
  JointAction action;
  std::size_t rounds = 0;
  bool converged = false;
  std::vector<double> round_norms;  // message max-norm after each round
  MessageTable messages;            // messages used for the final selection
};

/// Max-Plus joint action selection with exploration constant `c`.
/// Always returns a complete joint action, whatever the round budget.
MaxPlusResult max_plus_traced(const StateStats& stats, const MaxPlusConfig& cfg, double c);

JointAction max_plus(const StateStats& stats, const MaxPlusConfig& cfg, double c);

}  // namespace fvmcts
