#pragma once

// Brute-force reference routines for checking the coordination backends.
// Nothing here is used by the planners themselves.

#include <vector>

#include "fvmcts/coordination_graph.hpp"
#include "fvmcts/stats.hpp"
#include "fvmcts/types.hpp"

namespace fvmcts::oracle {

/// A pairwise-factored payoff: optional per-agent utilities plus one table
/// per edge, indexed [a_first][a_second].
struct PairwiseInstance {
  std::vector<std::size_t> action_counts;
  std::vector<Edge> edges;
  std::vector<std::vector<double>> node_payoff;               // [agent][action]
  std::vector<std::vector<std::vector<double>>> edge_payoff;  // [edge][a_first][a_second]
};

double objective(const PairwiseInstance& inst, const JointAction& a, bool with_nodes);

struct Enumeration {
  double best_value;
  JointAction best_action;  // first maximizer in lexicographic order
};

/// Exhaustive maximum over every joint action.
Enumeration enumerate_best(const PairwiseInstance& inst, bool with_nodes);

/// Calls `visit` for every joint action, lexicographic with agent 0 slowest.
template <typename Visit>
void for_each_joint_action(const std::vector<std::size_t>& counts, Visit&& visit) {
  JointAction a(counts.size(), 0);
  if (counts.empty()) {
    visit(a);
    return;
  }
  while (true) {
    visit(a);
    std::size_t p = counts.size();
    while (p-- > 0) {
      if (static_cast<std::size_t>(++a[p]) < counts[p]) break;
      a[p] = 0;
      if (p == 0) return;
    }
  }
}

/// Random tree over n agents (random parent for every agent after the first).
std::vector<Edge> random_tree(std::size_t n, Rng& rng);
/// Random simple graph with each edge present with probability p.
std::vector<Edge> random_graph(std::size_t n, double p, Rng& rng);

PairwiseInstance random_instance(std::vector<Edge> edges, std::vector<std::size_t> action_counts,
                                 double lo, double hi, Rng& rng);

/// Max-Plus statistics holding the instance's tables as Q values, every
/// count set to `count` and the state visit count to `visits`.
StateStats as_maxplus_stats(const PairwiseInstance& inst, std::uint32_t count = 1,
                            std::uint64_t visits = 1);

/// Var-El statistics whose component tables are the instance's edge tables.
/// Node payoffs are ignored; isolated agents get zero singleton tables.
StateStats as_varel_stats(const PairwiseInstance& inst, std::uint32_t count = 1,
                          std::uint64_t visits = 1);

/// Arithmetic mean computed directly from a sample list.
double direct_mean(const std::vector<double>& samples);

}  // namespace fvmcts::oracle
