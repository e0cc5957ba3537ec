#include "fvmcts/stats.hpp"

#include <algorithm>
#include <ostream>

namespace fvmcts {

StateStats::StateStats(StatsMode m, StateLayout layout)
    : mode(m), graph(std::move(layout.graph)), action_counts(std::move(layout.action_counts)) {
  if (!graph) throw std::invalid_argument("state stats: missing coordination graph");
  if (graph->n_agents() != action_counts.size()) {
    throw std::invalid_argument("state stats: graph and action counts disagree on agent count");
  }
  if (mode == StatsMode::kMaxPlus) {
    nodes.reserve(n_agents());
    for (auto k : action_counts) nodes.emplace_back(k);
    edges.reserve(graph->n_edges());
    for (const auto& e : graph->edges()) {
      edges.emplace_back(action_counts[e.first] * action_counts[e.second]);
    }
  } else {
    components = varel_components(*graph);
    component_tables.reserve(components.size());
    for (const auto& c : components) {
      std::size_t size = 1;
      for (auto i : c) size *= action_counts[i];
      component_tables.emplace_back(size);
    }
  }
}

std::size_t StateStats::entries() const noexcept {
  std::size_t total = 0;
  for (const auto& t : nodes) total += t.size();
  for (const auto& t : edges) total += t.size();
  for (const auto& t : component_tables) total += t.size();
  return total;
}

std::size_t StateStats::component_index(std::size_t component, const JointAction& joint) const {
  std::size_t index = 0;
  for (auto agent : components[component]) {
    index = index * action_counts[agent] + static_cast<std::size_t>(joint[agent]);
  }
  return index;
}

namespace {

void check_joint(const StateStats& stats, const JointAction& joint) {
  if (joint.size() != stats.n_agents()) {
    throw std::invalid_argument("stats update: joint action has wrong length");
  }
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (joint[i] < 0 || static_cast<std::size_t>(joint[i]) >= stats.action_counts[i]) {
      throw std::invalid_argument("stats update: action out of range for agent " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

void update_maxplus_stats(StateStats& stats, const JointAction& joint,
                          std::span<const double> agent_returns) {
  if (stats.mode != StatsMode::kMaxPlus) {
    throw std::logic_error("update_maxplus_stats on Var-El statistics");
  }
  check_joint(stats, joint);
  if (agent_returns.size() != stats.n_agents()) {
    throw std::invalid_argument("update_maxplus_stats: return vector has wrong length");
  }
  ++stats.visits;
  for (std::size_t i = 0; i < stats.n_agents(); ++i) {
    stats.nodes[i].record(static_cast<std::size_t>(joint[i]), agent_returns[i]);
  }
  const auto& edges = stats.graph->edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [i, j] = edges[k];
    const auto index = static_cast<std::size_t>(joint[i]) * stats.action_counts[j] +
                       static_cast<std::size_t>(joint[j]);
    stats.edges[k].record(index, agent_returns[i] + agent_returns[j]);
  }
}

void update_varel_stats(StateStats& stats, const JointAction& joint, double team_return) {
  if (stats.mode != StatsMode::kVarEl) {
    throw std::logic_error("update_varel_stats on Max-Plus statistics");
  }
  check_joint(stats, joint);
  ++stats.visits;
  for (std::size_t c = 0; c < stats.components.size(); ++c) {
    stats.component_tables[c].record(stats.component_index(c, joint), team_return);
  }
}

StateStats* StatsStore::find(const JointState& s) {
  auto it = table_.find(s);
  return it == table_.end() ? nullptr : &it->second;
}

const StateStats* StatsStore::find(const JointState& s) const {
  auto it = table_.find(s);
  return it == table_.end() ? nullptr : &it->second;
}

StateStats& StatsStore::lookup_or_init(const JointState& s, StateLayout layout) {
  auto it = table_.find(s);
  if (it != table_.end()) return it->second;
  StateStats fresh(mode_, std::move(layout));
  const auto entries = fresh.entries();
  total_entries_ += entries;
  peak_state_entries_ = std::max(peak_state_entries_, entries);
  return table_.emplace(s, std::move(fresh)).first->second;
}

void StatsStore::clear() {
  table_.clear();
  total_entries_ = 0;
  peak_state_entries_ = 0;
}

std::string state_key(const JointState& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(s[i]);
  }
  return out;
}

namespace {

// Decodes a mixed-radix table index into an action tuple "a:b:...".
std::string action_tuple(std::size_t index, const std::vector<std::size_t>& radices) {
  std::vector<std::size_t> digits(radices.size());
  for (std::size_t k = radices.size(); k-- > 0;) {
    digits[k] = index % radices[k];
    index /= radices[k];
  }
  std::string out;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (k) out += ':';
    out += std::to_string(digits[k]);
  }
  return out;
}

std::string agent_tuple(const std::vector<AgentIndex>& agents) {
  std::string out;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    if (k) out += ':';
    out += std::to_string(agents[k]);
  }
  return out;
}

void dump_table(std::ostream& os, const std::string& key, const char* kind,
                const std::vector<AgentIndex>& agents, const StatTable& t,
                const std::vector<std::size_t>& radices) {
  for (std::size_t x = 0; x < t.size(); ++x) {
    os << key << ',' << kind << ',' << agent_tuple(agents) << ',' << action_tuple(x, radices)
       << ',' << t.counts[x] << ',' << t.values[x] << '\n';
  }
}

}  // namespace

void StatsStore::dump_csv(std::ostream& os, const JointState& s) const {
  const auto* st = find(s);
  if (!st) return;
  const auto key = state_key(s);
  for (std::size_t i = 0; i < st->nodes.size(); ++i) {
    dump_table(os, key, "node", {i}, st->nodes[i], {st->action_counts[i]});
  }
  const auto& edges = st->graph->edges();
  for (std::size_t k = 0; k < st->edges.size(); ++k) {
    const auto [i, j] = edges[k];
    dump_table(os, key, "edge", {i, j}, st->edges[k], {st->action_counts[i], st->action_counts[j]});
  }
  for (std::size_t c = 0; c < st->component_tables.size(); ++c) {
    std::vector<std::size_t> radices;
    for (auto a : st->components[c]) radices.push_back(st->action_counts[a]);
    dump_table(os, key, "component", st->components[c], st->component_tables[c], radices);
  }
}

}  // namespace fvmcts
