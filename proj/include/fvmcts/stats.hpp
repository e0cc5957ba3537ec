#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fvmcts/coordination_graph.hpp"
#include "fvmcts/types.hpp"

namespace fvmcts {

/// Dense table of (visit count, running-mean payoff) pairs.
struct StatTable {
  std::vector<std::uint32_t> counts;
  std::vector<double> values;

  StatTable() = default;
  explicit StatTable(std::size_t size) : counts(size, 0), values(size, 0.0) {}

  std::size_t size() const noexcept { return values.size(); }

  // Count first, then the incremental mean.
  void record(std::size_t index, double sample) {
    const auto n = ++counts[index];
    values[index] += (sample - values[index]) / static_cast<double>(n);
  }
};

enum class StatsMode { kMaxPlus, kVarEl };

/// What a state's statistics are shaped by: its coordination graph and the
/// per-agent action counts.
struct StateLayout {
  std::shared_ptr<const CoordinationGraph> graph;
  std::vector<std::size_t> action_counts;
};

/// Factored statistics for one joint state.
///
/// Max-Plus mode keeps node tables (N_i, Q_i) and pairwise edge tables
/// (N_ij, Q_ij) indexed as a_i * |A_j| + a_j for the edge (i, j), i < j.
/// Var-El mode keeps one table per component, indexed mixed-radix with the
/// component's first agent most significant.
struct StateStats {
  StatsMode mode = StatsMode::kMaxPlus;
  std::shared_ptr<const CoordinationGraph> graph;
  std::vector<std::size_t> action_counts;
  std::uint64_t visits = 0;

  std::vector<StatTable> nodes;
  std::vector<StatTable> edges;

  VarElComponents components;
  std::vector<StatTable> component_tables;

  StateStats() = default;
  StateStats(StatsMode mode, StateLayout layout);

  std::size_t n_agents() const noexcept { return action_counts.size(); }

  /// Stored (count, value) pairs for this state.
  std::size_t entries() const noexcept;

  std::size_t component_index(std::size_t component, const JointAction& joint) const;
};

void update_maxplus_stats(StateStats& stats, const JointAction& joint,
                          std::span<const double> agent_returns);

void update_varel_stats(StateStats& stats, const JointAction& joint, double team_return);

/// Owns the statistics of one search, keyed by joint state.
class StatsStore {
 public:
  explicit StatsStore(StatsMode mode = StatsMode::kMaxPlus) : mode_(mode) {}

  StatsMode mode() const noexcept { return mode_; }

  StateStats* find(const JointState& s);
  const StateStats* find(const JointState& s) const;

  /// Existing entry, or a zero-initialized one built from `layout`. Never
  /// touches values that are already stored.
  StateStats& lookup_or_init(const JointState& s, StateLayout layout);

  std::size_t n_states() const noexcept { return table_.size(); }
  std::size_t total_entries() const noexcept { return total_entries_; }
  std::size_t peak_state_entries() const noexcept { return peak_state_entries_; }

  void clear();

  /// CSV rows: state,kind,indices,actions,n,q (kind is node, edge or component).
  void dump_csv(std::ostream& os, const JointState& s) const;

 private:
  StatsMode mode_;
  std::unordered_map<JointState, StateStats, JointStateHash> table_;
  std::size_t total_entries_ = 0;
  std::size_t peak_state_entries_ = 0;
};

std::string state_key(const JointState& s);

}  // namespace fvmcts
