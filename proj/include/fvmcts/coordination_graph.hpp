#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fvmcts/types.hpp"

namespace fvmcts {

/// Undirected edge, stored with first < second.
struct Edge {
  AgentIndex first = 0;
  AgentIndex second = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Neighbor of an agent together with the index of the connecting edge.
struct Incidence {
  AgentIndex neighbor = 0;
  std::size_t edge = 0;
};

/// Undirected coordination graph over agents 0..n-1.
///
/// Edges are normalized to (min, max) and kept in lexicographic order, so the
/// edge index is a stable key for per-edge statistics. Self-loops, duplicate
/// edges and out-of-range endpoints are rejected at construction. Immutable
/// afterwards.
class CoordinationGraph {
 public:
  CoordinationGraph() = default;
  CoordinationGraph(std::size_t n_agents, std::vector<Edge> edges);

  static CoordinationGraph edgeless(std::size_t n_agents);
  static CoordinationGraph chain(std::size_t n_agents);
  static CoordinationGraph ring(std::size_t n_agents);
  static CoordinationGraph star(std::size_t n_agents);
  static CoordinationGraph complete(std::size_t n_agents);

  std::size_t n_agents() const noexcept { return adjacency_.size(); }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sorted neighbor list. Throws std::out_of_range for a bad index.
  std::span<const AgentIndex> neighbors(AgentIndex i) const;

  /// Neighbors paired with edge indices, sorted by neighbor.
  std::span<const Incidence> incident(AgentIndex i) const;

  std::optional<std::size_t> edge_index(AgentIndex i, AgentIndex j) const;

  std::size_t degree(AgentIndex i) const { return neighbors(i).size(); }
  double mean_degree() const noexcept;
  bool is_acyclic() const;

  friend bool operator==(const CoordinationGraph& a, const CoordinationGraph& b) {
    return a.edges_ == b.edges_ && a.n_agents() == b.n_agents();
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<AgentIndex>> adjacency_;
  std::vector<std::vector<Incidence>> incidence_;
};

/// Var-El components: one per edge, plus a singleton for every isolated agent.
/// Each component is a sorted agent list.
using VarElComponents = std::vector<std::vector<AgentIndex>>;

VarElComponents varel_components(const CoordinationGraph& g);

/// Greedy min-degree elimination order with simulated fill-in; ties go to the
/// lowest agent index.
std::vector<AgentIndex> elimination_order(const CoordinationGraph& g);

}  // namespace fvmcts
