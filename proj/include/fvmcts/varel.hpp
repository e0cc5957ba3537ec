#pragma once

#include <span>
#include <vector>

#include "fvmcts/stats.hpp"
#include "fvmcts/types.hpp"

namespace fvmcts {

/// Local payoff over a sorted agent scope. The table is dense over the scope's
/// action product, mixed-radix with the first scope agent most significant.
struct PayoffFunction {
  std::vector<AgentIndex> scope;
  std::vector<double> table;
};

/// Result of maximizing one agent out of the functions that mention it.
struct IntermediatePayoff {
  AgentIndex eliminated = 0;
  std::vector<AgentIndex> scope;
  std::vector<double> table;
  std::vector<Action> best_response;  // argmax of the eliminated agent per scope tuple
};

/// Largest intermediate scope Var-El will materialize.
inline constexpr std::size_t kMaxInducedWidth = 12;
/// Largest intermediate table, in entries.
inline constexpr std::size_t kMaxIntermediateEntries = std::size_t{1} << 26;

/// Removes every function mentioning `k` from `active`, appends their
/// maximized sum (as a plain payoff function) and returns it with the
/// best-response table. Ties go to the lowest action. Throws std::length_error
/// when the new scope exceeds the width or size limits.
IntermediatePayoff eliminate_agent(AgentIndex k, std::vector<PayoffFunction>& active,
                                   std::span<const std::size_t> action_counts);

/// Exact maximizer of a sum of payoff functions, eliminating in `order` and
/// back-substituting best responses in reverse.
JointAction var_el_maximize(std::vector<PayoffFunction> functions,
                            std::span<const std::size_t> action_counts,
                            std::span<const AgentIndex> order);

/// Component payoffs plus the UCB bonus c * sqrt(log N(s) / n_e(s, a_e)),
/// with +inf for unvisited entries (or an unvisited state) when c > 0.
std::vector<PayoffFunction> augmented_components(const StateStats& stats, double c);

/// Var-El joint action selection over a state's component statistics.
JointAction var_el_select(const StateStats& stats, std::span<const AgentIndex> order, double c);

}  // namespace fvmcts
