#include "fvmcts/maxplus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fvmcts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ucb_bonus(double c, double log_term, std::uint32_t count) {
  if (count == 0) return kInf;
  return c * std::sqrt(log_term / static_cast<double>(count));
}

}  // namespace

MaxPlusConfig MaxPlusConfig::from_preset(const std::string& flags) {
  if (flags.size() != 3) throw std::invalid_argument("max-plus preset must have 3 letters");
  auto flag = [&](char ch) {
    if (ch == 'T' || ch == 't') return true;
    if (ch == 'F' || ch == 'f') return false;
    throw std::invalid_argument("max-plus preset letters must be T or F: " + flags);
  };
  MaxPlusConfig cfg;
  cfg.use_node_utilities = flag(flags[0]);
  cfg.node_exploration = flag(flags[1]);
  cfg.edge_exploration = flag(flags[2]);
  return cfg;
}

std::string MaxPlusConfig::preset() const {
  std::string s;
  s += use_node_utilities ? 'T' : 'F';
  s += node_exploration ? 'T' : 'F';
  s += edge_exploration ? 'T' : 'F';
  return s;
}

MessageTable::MessageTable(const CoordinationGraph& g, std::span<const std::size_t> action_counts)
    : graph_(&g) {
  offsets_.resize(2 * g.n_edges());
  lengths_.resize(2 * g.n_edges());
  std::size_t total = 0;
  for (std::size_t k = 0; k < g.n_edges(); ++k) {
    const auto [a, b] = g.edges()[k];
    offsets_[2 * k] = total;  // a -> b, over A_b
    lengths_[2 * k] = action_counts[b];
    total += action_counts[b];
    offsets_[2 * k + 1] = total;  // b -> a, over A_a
    lengths_[2 * k + 1] = action_counts[a];
    total += action_counts[a];
  }
  data_.assign(total, 0.0);
}

std::span<double> MessageTable::message(std::size_t edge, AgentIndex from) {
  const auto slot = 2 * edge + (from == graph_->edges()[edge].first ? 0 : 1);
  return {data_.data() + offsets_[slot], lengths_[slot]};
}

std::span<const double> MessageTable::message(std::size_t edge, AgentIndex from) const {
  const auto slot = 2 * edge + (from == graph_->edges()[edge].first ? 0 : 1);
  return {data_.data() + offsets_[slot], lengths_[slot]};
}

double MessageTable::max_norm() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double MessageTable::max_abs_difference(const MessageTable& other) const noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    const double a = data_[k], b = other.data_[k];
    if (a == b) continue;  // covers matching infinities
    m = std::max(m, std::abs(a - b));
  }
  return m;
}

namespace {

// mu_ij over a known edge; `base` is scratch space of at least |A_i|.
void message_on_edge(const StateStats& stats, const MessageTable& msgs, AgentIndex i,
                     AgentIndex j, std::size_t edge, double edge_bonus,
                     bool use_node_utilities, std::span<double> out,
                     std::vector<double>& base) {
  const auto& g = *stats.graph;
  const std::size_t ni = stats.action_counts[i];
  const std::size_t nj = stats.action_counts[j];
  const bool i_first = g.edges()[edge].first == i;
  const auto& table = stats.edges[edge];
  const double log_term = std::log(static_cast<double>(stats.visits) + 1.0);

  // Everything that depends on a_i only: utility plus the other incoming messages.
  base.assign(ni, 0.0);
  if (use_node_utilities) {
    for (std::size_t a = 0; a < ni; ++a) base[a] = stats.nodes[i].values[a];
  }
  for (const auto& inc : g.incident(i)) {
    if (inc.neighbor == j) continue;
    const auto in = msgs.message(inc.edge, inc.neighbor);
    for (std::size_t a = 0; a < ni; ++a) base[a] += in[a];
  }

  for (std::size_t aj = 0; aj < nj; ++aj) {
    double best = -kInf;
    for (std::size_t ai = 0; ai < ni; ++ai) {
      const std::size_t x = i_first ? ai * nj + aj : aj * ni + ai;
      double v = base[ai] + table.values[x];
      if (edge_bonus > 0.0) v += ucb_bonus(edge_bonus, log_term, table.counts[x]);
      best = std::max(best, v);
    }
    out[aj] = best;
  }
}

}  // namespace

void compute_message(const StateStats& stats, const MessageTable& msgs, AgentIndex i,
                     AgentIndex j, double edge_bonus, bool use_node_utilities,
                     std::span<double> out) {
  const auto edge = stats.graph->edge_index(i, j);
  if (!edge) throw std::invalid_argument("compute_message: agents are not adjacent");
  std::vector<double> scratch;
  message_on_edge(stats, msgs, i, j, *edge, edge_bonus, use_node_utilities, out, scratch);
}

std::vector<double> compute_message(const StateStats& stats, const MessageTable& msgs,
                                    AgentIndex i, AgentIndex j, double edge_bonus,
                                    bool use_node_utilities) {
  std::vector<double> out(stats.action_counts.at(j));
  compute_message(stats, msgs, i, j, edge_bonus, use_node_utilities, out);
  return out;
}

namespace {

void normalize(std::span<double> m) {
  if (m.empty()) return;
  double sum = 0.0;
  for (double v : m) sum += v;
  const double mean = sum / static_cast<double>(m.size());
  if (!std::isfinite(mean)) return;
  for (double& v : m) v -= mean;
}

struct DirectedEdge {
  AgentIndex from;
  AgentIndex to;
  std::size_t edge;
};

// Directed edges in schedule order: agents ascending, neighbors ascending.
std::vector<DirectedEdge> schedule_order(const CoordinationGraph& g) {
  std::vector<DirectedEdge> out;
  out.reserve(2 * g.n_edges());
  for (AgentIndex i = 0; i < g.n_agents(); ++i) {
    for (const auto& inc : g.incident(i)) out.push_back({i, inc.neighbor, inc.edge});
  }
  return out;
}

void sequential_round(const StateStats& stats, const std::vector<DirectedEdge>& order,
                      MessageTable& msgs, double bonus, bool utilities, bool normalized) {
  std::vector<double> scratch;
  for (const auto& d : order) {
    auto out = msgs.message(d.edge, d.from);
    message_on_edge(stats, msgs, d.from, d.to, d.edge, bonus, utilities, out, scratch);
    if (normalized) normalize(out);
  }
}

void synchronous_round(const StateStats& stats, const std::vector<DirectedEdge>& order,
                       const MessageTable& previous, MessageTable& next, double bonus,
                       bool utilities, bool normalized) {
  const auto count = static_cast<std::ptrdiff_t>(order.size());
#pragma omp parallel for schedule(static) if (count >= 512)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto& d = order[static_cast<std::size_t>(k)];
    auto out = next.message(d.edge, d.from);
    std::vector<double> scratch;
    message_on_edge(stats, previous, d.from, d.to, d.edge, bonus, utilities, out, scratch);
    if (normalized) normalize(out);
  }
}

}  // namespace

MaxPlusResult max_plus_traced(const StateStats& stats, const MaxPlusConfig& cfg, double c) {
  if (stats.mode != StatsMode::kMaxPlus) {
    throw std::logic_error("max_plus requires Max-Plus statistics");
  }
  if (cfg.max_rounds == 0) throw std::invalid_argument("max_plus: max_rounds must be >= 1");
  for (auto k : stats.action_counts) {
    if (k == 0) throw std::invalid_argument("max_plus: empty action set");
  }
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  const auto& g = *stats.graph;
  const auto order = schedule_order(g);
  const double round_bonus = (cfg.edge_bonus_every_round && cfg.edge_exploration) ? c : 0.0;

  MaxPlusResult result;
  MessageTable msgs(g, stats.action_counts);
  MessageTable previous = msgs;

  if (!order.empty()) {
    for (std::size_t t = 0; t < cfg.max_rounds; ++t) {
      previous = msgs;
      if (cfg.schedule == MessageSchedule::kSequential) {
        sequential_round(stats, order, msgs, round_bonus, cfg.use_node_utilities,
                         cfg.message_normalization);
      } else {
        synchronous_round(stats, order, previous, msgs, round_bonus, cfg.use_node_utilities,
                          cfg.message_normalization);
      }
      ++result.rounds;
      result.round_norms.push_back(msgs.max_norm());
      if (msgs.max_abs_difference(previous) < cfg.message_tolerance) {
        result.converged = true;
        break;
      }
      if (cfg.time_budget && clock::now() - start >= *cfg.time_budget) break;
    }
  }

  // One bonus-augmented pass after the final round. A belief may collect the
  // unvisited-pair sentinel from several neighbors, so sentinels are counted
  // rather than added as IEEE infinities (inf + inf would tie every action):
  // more sentinels rank higher, equal counts fall back to the finite part.
  const bool augment = cfg.edge_exploration && !cfg.edge_bonus_every_round && c > 0.0 && !order.empty();
  std::vector<std::uint32_t> sentinels;
  if (augment) {
    MessageTable augmented(g, stats.action_counts);
    sentinels.assign(augmented.raw().size(), 0);
    const double log_term = std::log(static_cast<double>(stats.visits) + 1.0);
    std::vector<double> base;
    for (const auto& d : order) {
      message_on_edge(stats, msgs, d.from, d.to, d.edge, 0.0, cfg.use_node_utilities,
                      augmented.message(d.edge, d.from), base);
      auto out = augmented.message(d.edge, d.from);
      const auto at = static_cast<std::size_t>(out.data() - augmented.raw().data());
      const std::size_t ni = stats.action_counts[d.from];
      const std::size_t nj = stats.action_counts[d.to];
      const bool i_first = g.edges()[d.edge].first == d.from;
      const auto& table = stats.edges[d.edge];
      // message_on_edge left the a_i-only terms in `base`.
      for (std::size_t aj = 0; aj < nj; ++aj) {
        std::uint32_t best_k = 0;
        double best_v = -kInf;
        for (std::size_t ai = 0; ai < ni; ++ai) {
          const std::size_t x = i_first ? ai * nj + aj : aj * ni + ai;
          const std::uint32_t k = table.counts[x] == 0 ? 1 : 0;
          double v = base[ai] + table.values[x];
          if (k == 0) v += ucb_bonus(c, log_term, table.counts[x]);
          if (k > best_k || (k == best_k && v > best_v)) best_k = k, best_v = v;
        }
        out[aj] = best_v;
        sentinels[at + aj] = best_k;
      }
    }
    msgs = std::move(augmented);
  }

  const double log_term = std::log(static_cast<double>(stats.visits) + 1.0);
  const bool node_bonus = cfg.node_exploration && c > 0.0;
  result.action.resize(g.n_agents());
  std::vector<double> belief;
  std::vector<std::uint32_t> belief_k;
  for (AgentIndex i = 0; i < g.n_agents(); ++i) {
    const std::size_t ni = stats.action_counts[i];
    belief.assign(ni, 0.0);
    belief_k.assign(ni, 0);
    for (std::size_t a = 0; a < ni; ++a) {
      if (cfg.use_node_utilities) belief[a] += stats.nodes[i].values[a];
      if (node_bonus) belief[a] += ucb_bonus(c, log_term, stats.nodes[i].counts[a]);
    }
    for (const auto& inc : g.incident(i)) {
      const auto in = msgs.message(inc.edge, inc.neighbor);
      const auto at = static_cast<std::size_t>(in.data() - msgs.raw().data());
      for (std::size_t a = 0; a < ni; ++a) {
        belief[a] += in[a];
        if (augment) belief_k[a] += sentinels[at + a];
      }
    }
    // An untried action (infinite node bonus) outranks everything; ties go
    // to the lowest index.
    std::size_t best = 0;
    for (std::size_t a = 1; a < ni; ++a) {
      const bool inf_a = std::isinf(belief[a]) && belief[a] > 0;
      const bool inf_b = std::isinf(belief[best]) && belief[best] > 0;
      if (inf_a != inf_b) {
        if (inf_a) best = a;
        continue;
      }
      if (inf_a) continue;
      if (belief_k[a] > belief_k[best] || (belief_k[a] == belief_k[best] && belief[a] > belief[best])) {
        best = a;
      }
    }
    result.action[i] = static_cast<Action>(best);
  }
  result.messages = std::move(msgs);
  return result;
}

JointAction max_plus(const StateStats& stats, const MaxPlusConfig& cfg, double c) {
  return max_plus_traced(stats, cfg, c).action;
}

}  // namespace fvmcts
