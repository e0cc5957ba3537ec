#include "fvmcts/oracle.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace fvmcts::oracle {

double objective(const PairwiseInstance& inst, const JointAction& a, bool with_nodes) {
  double total = 0.0;
  if (with_nodes) {
    for (std::size_t i = 0; i < inst.node_payoff.size(); ++i) total += inst.node_payoff[i][a[i]];
  }
  for (std::size_t k = 0; k < inst.edges.size(); ++k) {
    total += inst.edge_payoff[k][a[inst.edges[k].first]][a[inst.edges[k].second]];
  }
  return total;
}

Enumeration enumerate_best(const PairwiseInstance& inst, bool with_nodes) {
  Enumeration out{-std::numeric_limits<double>::infinity(), {}};
  for_each_joint_action(inst.action_counts, [&](const JointAction& a) {
    const double v = objective(inst, a, with_nodes);
    if (v > out.best_value) {
      out.best_value = v;
      out.best_action = a;
    }
  });
  return out;
}

std::vector<Edge> random_tree(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    edges.push_back({parent(rng), i});
  }
  return edges;
}

std::vector<Edge> random_graph(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return edges;
}

PairwiseInstance random_instance(std::vector<Edge> edges, std::vector<std::size_t> action_counts,
                                 double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> value(lo, hi);
  PairwiseInstance inst;
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  inst.edges = std::move(edges);
  inst.action_counts = std::move(action_counts);
  for (auto k : inst.action_counts) {
    std::vector<double> row(k);
    for (auto& v : row) v = value(rng);
    inst.node_payoff.push_back(std::move(row));
  }
  for (const auto& e : inst.edges) {
    std::vector<std::vector<double>> table(inst.action_counts[e.first],
                                           std::vector<double>(inst.action_counts[e.second]));
    for (auto& row : table)
      for (auto& v : row) v = value(rng);
    inst.edge_payoff.push_back(std::move(table));
  }
  return inst;
}

namespace {

StateLayout layout_of(const PairwiseInstance& inst) {
  return {std::make_shared<const CoordinationGraph>(inst.action_counts.size(), inst.edges),
          inst.action_counts};
}

}  // namespace

StateStats as_maxplus_stats(const PairwiseInstance& inst, std::uint32_t count,
                            std::uint64_t visits) {
  StateStats st(StatsMode::kMaxPlus, layout_of(inst));
  st.visits = visits;
  for (std::size_t i = 0; i < st.nodes.size(); ++i) {
    for (std::size_t a = 0; a < st.nodes[i].size(); ++a) {
      st.nodes[i].values[a] = inst.node_payoff[i][a];
      st.nodes[i].counts[a] = count;
    }
  }
  // The graph sorts its edges the same way random_instance does.
  for (std::size_t k = 0; k < inst.edges.size(); ++k) {
    const auto nj = inst.action_counts[inst.edges[k].second];
    for (std::size_t ai = 0; ai < inst.edge_payoff[k].size(); ++ai) {
      for (std::size_t aj = 0; aj < nj; ++aj) {
        st.edges[k].values[ai * nj + aj] = inst.edge_payoff[k][ai][aj];
        st.edges[k].counts[ai * nj + aj] = count;
      }
    }
  }
  return st;
}

StateStats as_varel_stats(const PairwiseInstance& inst, std::uint32_t count,
                          std::uint64_t visits) {
  StateStats st(StatsMode::kVarEl, layout_of(inst));
  st.visits = visits;
  for (std::size_t c = 0; c < st.components.size(); ++c) {
    auto& t = st.component_tables[c];
    std::fill(t.counts.begin(), t.counts.end(), count);
    if (st.components[c].size() != 2) continue;
    const Edge e{st.components[c][0], st.components[c][1]};
    const auto k = static_cast<std::size_t>(
        std::find(inst.edges.begin(), inst.edges.end(), e) - inst.edges.begin());
    const auto nj = inst.action_counts[e.second];
    for (std::size_t ai = 0; ai < inst.edge_payoff[k].size(); ++ai)
      for (std::size_t aj = 0; aj < nj; ++aj) t.values[ai * nj + aj] = inst.edge_payoff[k][ai][aj];
  }
  return st;
}

double direct_mean(const std::vector<double>& samples) {
  if (samples.empty()) return 0.0;
  long double sum = 0.0L;
  for (double v : samples) sum += v;
  return static_cast<double>(sum / static_cast<long double>(samples.size()));
}

}  // namespace fvmcts::oracle
