#include "fvmcts/coordination_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace fvmcts {

CoordinationGraph::CoordinationGraph(std::size_t n_agents, std::vector<Edge> edges)
    : adjacency_(n_agents), incidence_(n_agents) {
  for (auto& e : edges) {
    if (e.first == e.second) {
      throw std::invalid_argument("coordination graph: self-loop on agent " +
                                  std::to_string(e.first));
    }
    if (e.first >= n_agents || e.second >= n_agents) {
      throw std::invalid_argument("coordination graph: edge endpoint out of range");
    }
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("coordination graph: duplicate edge");
  }
  edges_ = std::move(edges);

  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto [i, j] = edges_[k];
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
    incidence_[i].push_back({j, k});
    incidence_[j].push_back({i, k});
  }
  for (std::size_t i = 0; i < n_agents; ++i) {
    std::sort(adjacency_[i].begin(), adjacency_[i].end());
    std::sort(incidence_[i].begin(), incidence_[i].end(),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
}

CoordinationGraph CoordinationGraph::edgeless(std::size_t n_agents) {
  return CoordinationGraph(n_agents, {});
}

CoordinationGraph CoordinationGraph::chain(std::size_t n_agents) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n_agents; ++i) edges.push_back({i, i + 1});
  return CoordinationGraph(n_agents, std::move(edges));
}

CoordinationGraph CoordinationGraph::ring(std::size_t n_agents) {
  if (n_agents < 3) return chain(n_agents);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n_agents; ++i) edges.push_back({i, (i + 1) % n_agents});
  return CoordinationGraph(n_agents, std::move(edges));
}

CoordinationGraph CoordinationGraph::star(std::size_t n_agents) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n_agents; ++i) edges.push_back({0, i});
  return CoordinationGraph(n_agents, std::move(edges));
}

CoordinationGraph CoordinationGraph::complete(std::size_t n_agents) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n_agents; ++i)
    for (std::size_t j = i + 1; j < n_agents; ++j) edges.push_back({i, j});
  return CoordinationGraph(n_agents, std::move(edges));
}

std::span<const AgentIndex> CoordinationGraph::neighbors(AgentIndex i) const {
  if (i >= adjacency_.size()) {
    throw std::out_of_range("coordination graph: agent index " + std::to_string(i) +
                            " out of range");
  }
  return adjacency_[i];
}

std::span<const Incidence> CoordinationGraph::incident(AgentIndex i) const {
  if (i >= incidence_.size()) {
    throw std::out_of_range("coordination graph: agent index " + std::to_string(i) +
                            " out of range");
  }
  return incidence_[i];
}

std::optional<std::size_t> CoordinationGraph::edge_index(AgentIndex i, AgentIndex j) const {
  if (i > j) std::swap(i, j);
  const Edge key{i, j};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

double CoordinationGraph::mean_degree() const noexcept {
  if (adjacency_.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(adjacency_.size());
}

bool CoordinationGraph::is_acyclic() const {
  // Union-find: a forest never joins two already-connected vertices.
  std::vector<std::size_t> parent(n_agents());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) {
    auto a = find(e.first), b = find(e.second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

VarElComponents varel_components(const CoordinationGraph& g) {
  VarElComponents out;
  out.reserve(g.n_edges() + g.n_agents());
  for (const auto& e : g.edges()) out.push_back({e.first, e.second});
  for (AgentIndex i = 0; i < g.n_agents(); ++i) {
    if (g.degree(i) == 0) out.push_back({i});
  }
  return out;
}

std::vector<AgentIndex> elimination_order(const CoordinationGraph& g) {
  const std::size_t n = g.n_agents();
  std::vector<std::set<AgentIndex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.first].insert(e.second);
    adj[e.second].insert(e.first);
  }
  std::vector<bool> gone(n, false);
  std::vector<AgentIndex> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    AgentIndex best = n;
    for (AgentIndex i = 0; i < n; ++i) {
      if (gone[i]) continue;
      if (best == n || adj[i].size() < adj[best].size()) best = i;
    }
    // Fill-in: the eliminated node's neighbors become a clique.
    for (auto u : adj[best]) {
      for (auto v : adj[best]) {
        if (u != v) adj[u].insert(v);
      }
      adj[u].erase(best);
    }
    adj[best].clear();
    gone[best] = true;
    order.push_back(best);
  }
  return order;
}

}  // namespace fvmcts
